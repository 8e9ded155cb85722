#pragma once

// Shared test helpers: deterministic random data and the brute-force
// linear-algebra oracles the property suites compare against.  The oracles
// answer membership/dimension questions by solving in the jet ring directly
// and never touch the division or standard-basis code paths they check.

#include <random>
#include <vector>

#include "germ/jet.hpp"
#include "germ/linalg.hpp"

namespace germ::test {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, const Field& F, bool nonzero = false) {
    for (;;) {
        long num = static_cast<long>(rng() % 19) - 9;
        if (F.kind() == Field::Kind::finite) num = static_cast<long>(rng() % F.prime());
        long den = 1;
        if (F.kind() != Field::Kind::finite && rng() % 3 == 0) den = 1 + static_cast<long>(rng() % 8);
        Scalar s = F.from_long(num, den);
        if (!nonzero || !F.is_zero(s)) return s;
    }
}

inline Exponent random_exponent(Rng& rng, std::size_t nvars, Nat maxdeg) {
    Exponent a(nvars);
    Nat budget = maxdeg == 0 ? 0 : rng() % (maxdeg + 1);
    for (Nat used = 0; used < budget && nvars > 0; ++used) a[rng() % nvars] += 1;
    return a;
}

inline Jet random_jet(Rng& rng, const RingPtr& ring, Nat maxdeg, std::size_t terms,
                      bool nonzero = false) {
    for (;;) {
        Jet f(ring);
        for (std::size_t t = 0; t < terms; ++t)
            f.add_term(random_exponent(rng, ring->nvars(), maxdeg), random_scalar(rng, ring->field()));
        if (!nonzero || !f.is_zero()) return f;
    }
}

inline Jet random_jet_min_order(Rng& rng, const RingPtr& ring, Nat mindeg, Nat maxdeg,
                                std::size_t terms) {
    Jet f(ring);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponent a = random_exponent(rng, ring->nvars(), maxdeg);
        while (a.degree() < mindeg) a[rng() % ring->nvars()] += 1;
        f.add_term(a, random_scalar(rng, ring->field()));
    }
    return f;
}

inline std::vector<Exponent> monomials_upto(std::size_t nvars, Nat d) {
    std::vector<Exponent> out;
    for (Nat k = 0; k <= d; ++k)
        for (const ModuleMonomial& m : module_monomials_of_degree(nvars, 1, k)) out.push_back(m.alpha);
    return out;
}

// span of { x^b * g_j } inside the jet module, as an echelon row basis
class SpanOracle {
public:
    SpanOracle(const std::vector<JetVec>& gens, const RingPtr& ring, std::size_t ncomp)
        : ring_(ring), ncomp_(ncomp), monomials_(monomials_upto(ring->nvars(), ring->trunc())) {
        const Field& F = ring_->field();
        for (const JetVec& g : gens) {
            if (g.is_zero()) continue;
            for (const Exponent& b : monomials_) {
                JetVec shifted = g.mono_mul(b, F.one());
                if (shifted.is_zero()) continue;
                insert(to_coeffs(shifted));
            }
        }
    }

    std::size_t rank() const { return rows_.size(); }

    bool contains(const JetVec& f) const {
        std::vector<Scalar> v = to_coeffs(f);
        reduce(v);
        for (const Scalar& c : v)
            if (c != 0) return false;
        return true;
    }

    std::size_t quotient_dim() const { return monomials_.size() * ncomp_ - rows_.size(); }

private:
    std::vector<Scalar> to_coeffs(const JetVec& f) const {
        std::vector<Scalar> v;
        v.reserve(monomials_.size() * ncomp_);
        for (std::size_t c = 0; c < ncomp_; ++c)
            for (const Exponent& m : monomials_) v.push_back(f[c].coeff(m));
        return v;
    }

    void reduce(std::vector<Scalar>& v) const {
        const Field& F = ring_->field();
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Scalar& lead = v[lead_[r]];
            if (F.is_zero(lead)) continue;
            Scalar factor = F.div(lead, rows_[r][lead_[r]]);
            for (std::size_t c = lead_[r]; c < v.size(); ++c)
                v[c] = F.sub(v[c], F.mul(factor, rows_[r][c]));
        }
    }

    void insert(std::vector<Scalar> v) {
        const Field& F = ring_->field();
        reduce(v);
        std::size_t lc = v.size();
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!F.is_zero(v[c])) { lc = c; break; }
        if (lc == v.size()) return;
        rows_.push_back(std::move(v));
        lead_.push_back(lc);
        // keep rows sorted by lead column so reduce() stays one-pass
        for (std::size_t r = rows_.size(); r-- > 1;) {
            if (lead_[r] < lead_[r - 1]) {
                std::swap(rows_[r], rows_[r - 1]);
                std::swap(lead_[r], lead_[r - 1]);
            } else {
                break;
            }
        }
    }

    RingPtr ring_;
    std::size_t ncomp_;
    std::vector<Exponent> monomials_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<std::size_t> lead_;
};

inline SpanOracle span_oracle(const std::vector<Jet>& gens, const RingPtr& ring) {
    std::vector<JetVec> gv;
    for (const Jet& g : gens) gv.push_back(JetVec::single(g));
    return SpanOracle(gv, ring, 1);
}

} // namespace germ::test
