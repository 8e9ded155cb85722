#pragma once

#include <optional>
#include <vector>

#include "germ/jet.hpp"

namespace germ {

// Norm certificate for a division run with contraction factor epsilon at the
// shrunk radius delta.  When verified, the stored-term norms satisfy
//   |r|_delta     <= 1/(1-eps) |f|_delta
//   |q_j|_delta   <= 1/(1-eps) |f|_delta / |LM(f_j)|_delta
// (quotients taken for the LC-normalized divisors).  For inexact inputs the
// fields carry observed values with verified = false.
struct NormCertificate {
    Rat epsilon;
    RadiusVector delta;
    Rat norm_f;
    Rat norm_r;
    Rat bound_r;
    std::vector<Rat> norm_q;
    std::vector<Rat> bound_q;
    bool verified = false;
    // observed nested-scaling check (divisors free of a leading variable block)
    std::optional<std::size_t> nested_split;
    std::optional<bool> nested_observed_ok;
};

struct DivisionResult {
    std::vector<Jet> quotients;
    JetVec remainder;
    unsigned steps = 0;
    std::optional<NormCertificate> certificate;
    // per-step w_j (kept only on request, for diagnostics and tests)
    std::vector<JetVec> w_steps;
};

struct DivisionOptions {
    bool want_certificate = false;
    bool keep_steps = false;
    Rat epsilon = Rat(1, 2);
    std::optional<RadiusVector> rho_cap;
};

// Radius shrinking of the division lemma: a delta <= rho_cap with
// |tail(f_i)|_delta < eps |LM(f_i)|_delta exactly, for LC-normalized
// divisors.  Divisors must be genuine polynomials.
RadiusVector shrink_radius(const std::vector<JetVec>& divisors, const Rat& eps,
                           const RadiusVector& rho_cap);

// Division with the Gamma-partition maps: f = sum q_i f_i + r mod m^{D+1},
// no monomial of r divisible by any LM(f_i), and LM(f) >= LM(q_i f_i).
DivisionResult divide(const JetVec& f, const std::vector<JetVec>& divisors,
                      const DivisionOptions& opts = {});

inline DivisionResult divide(const Jet& f, const std::vector<Jet>& divisors,
                             const DivisionOptions& opts = {}) {
    std::vector<JetVec> divs;
    divs.reserve(divisors.size());
    for (const Jet& d : divisors) divs.push_back(JetVec::single(d));
    return divide(JetVec::single(f), divs, opts);
}

// remainder only
JetVec normal_form(const JetVec& f, const std::vector<JetVec>& divisors);
Jet normal_form(const Jet& f, const std::vector<Jet>& divisors);

// 1/u mod m^{D+1} for a unit jet u (LM(u) = 1); a thin wrapper over divide.
Jet reciprocal(const Jet& u);

} // namespace germ
