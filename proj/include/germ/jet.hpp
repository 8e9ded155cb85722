#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "germ/scalar.hpp"

namespace germ {

using Nat = std::uint32_t;

// Multi-exponent alpha with |alpha| = sum of entries.
struct Exponent {
    std::vector<Nat> e;

    Exponent() = default;
    explicit Exponent(std::size_t n) : e(n, 0) {}
    explicit Exponent(std::vector<Nat> v) : e(std::move(v)) {}

    std::size_t size() const { return e.size(); }
    Nat operator[](std::size_t i) const { return e[i]; }
    Nat& operator[](std::size_t i) { return e[i]; }
    Nat degree() const;
    bool is_zero() const { return degree() == 0; }
    bool divides(const Exponent& b) const; // componentwise <=
    Exponent plus(const Exponent& b) const;
    Exponent minus(const Exponent& b) const; // requires divides(b) from the right side
    bool operator==(const Exponent& b) const { return e == b.e; }
};

// deglex as a *local* degree ordering: lower total degree wins; on equal
// degree the first differing entry decides, smaller entry being larger.
// Returns >0 if a > b, 0 if equal, <0 if a < b.
int deglex_cmp(const Exponent& a, const Exponent& b);

struct DeglexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const { return deglex_cmp(a, b) > 0; }
};

// Monomial x^alpha e_unit of K[[x]]^N (unit is 0-based internally).
struct ModuleMonomial {
    Exponent alpha;
    Nat unit = 0;

    bool operator==(const ModuleMonomial& o) const { return unit == o.unit && alpha == o.alpha; }
};

// x^alpha e_i > x^beta e_j iff x^alpha > x^beta, or equal monomials and i < j.
int module_cmp(const ModuleMonomial& a, const ModuleMonomial& b);

// x^alpha e_i | x^beta e_j iff i = j and alpha <= beta componentwise.
bool module_divides(const ModuleMonomial& a, const ModuleMonomial& b);

// Strictly positive radius vector (epsilon, rho, delta, tau).
class RadiusVector {
public:
    RadiusVector() = default;
    explicit RadiusVector(std::vector<Rat> v);
    static RadiusVector uniform(std::size_t n, const Rat& r);

    std::size_t size() const { return v_.size(); }
    const Rat& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Rat>& entries() const { return v_; }

    Rat pow(const Exponent& a) const; // prod r_i^{a_i}
    RadiusVector scaled(const Rat& lambda) const;
    // nested scaling (delta_1..delta_s, lambda*delta_{s+1}..lambda*delta_n)
    RadiusVector scaled_from(std::size_t s, const Rat& lambda) const;
    RadiusVector min_with(const RadiusVector& o) const;
    RadiusVector concat(const RadiusVector& o) const;
    bool leq(const RadiusVector& o) const; // componentwise

private:
    std::vector<Rat> v_;
};

// Variable context shared by jets: field, ordered variable names, truncation.
class Ring {
public:
    Ring(Field f, std::vector<std::string> vars, Nat trunc);

    const Field& field() const { return field_; }
    std::size_t nvars() const { return vars_.size(); }
    Nat trunc() const { return trunc_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var(std::size_t i) const { return vars_[i]; }
    std::optional<std::size_t> var_index(const std::string& name) const;
    bool same(const Ring& o) const;

private:
    Field field_;
    std::vector<std::string> vars_;
    Nat trunc_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field f, std::vector<std::string> vars, Nat trunc);
// New ring with extra variables appended (and possibly another truncation).
RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& extra, Nat trunc);
RingPtr retrunc_ring(const RingPtr& base, Nat trunc);

// Truncated multivariate power series: finite term map mod m^{D+1}, ordered
// so that iteration starts at the leading (deglex-largest) term.  exact()
// reports whether the object is a genuine polynomial rather than a
// truncation of something longer.
class Jet {
public:
    using TermMap = std::map<Exponent, Scalar, DeglexGreater>;

    Jet() = default;
    explicit Jet(RingPtr ring) : ring_(std::move(ring)) {}

    static Jet zero(const RingPtr& ring) { return Jet(ring); }
    static Jet constant(const RingPtr& ring, const Scalar& c);
    static Jet variable(const RingPtr& ring, std::size_t i);
    static Jet monomial(const RingPtr& ring, const Exponent& a, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool exact() const { return exact_; }
    void mark_inexact() { exact_ = false; }
    std::size_t term_count() const { return terms_.size(); }

    Scalar coeff(const Exponent& a) const;
    Scalar constant_term() const { return coeff(Exponent(ring_->nvars())); }
    // min total degree of a stored term; nullopt for the zero jet
    std::optional<Nat> order() const;
    Exponent leading_exponent() const; // requires nonzero

    // in-place term update (drops beyond-truncation terms, marking inexact)
    void add_term(const Exponent& a, const Scalar& c);

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet negated() const;
    Jet scaled(const Scalar& c) const;
    Jet mono_mul(const Exponent& a, const Scalar& c) const;
    Jet derivative(std::size_t var) const;
    Jet truncated(Nat d) const;                  // same ring, degree-d cut
    Jet homogeneous_part(Nat d) const;
    // grading by the variable block [first_var, nvars)
    Jet part_of_subdegree(std::size_t first_var, Nat d) const;
    Nat max_subdegree(std::size_t first_var) const;
    // coefficient of the block-exponent nu (in vars [first_var..)), as a jet
    // in `target` whose variables are the first first_var ones
    Jet block_coefficient(std::size_t first_var, const Exponent& nu, const RingPtr& target) const;
    // re-interpret in a ring that has the same leading variables plus extras
    Jet lifted(const RingPtr& target) const;

    // substitution x_i -> images[i]; images must live in `target` and have
    // zero constant term so composition is defined on jets
    Jet substituted(const RingPtr& target, std::span<const Jet> images) const;

    Rat norm(const RadiusVector& eps) const;

    bool operator==(const Jet& o) const { return terms_ == o.terms_; }

private:
    void require_compatible(const Jet& o) const;

    RingPtr ring_;
    TermMap terms_;
    bool exact_ = true;
};

// Vector of N jets over a shared ring.
class JetVec {
public:
    JetVec() = default;
    JetVec(RingPtr ring, std::size_t n);
    explicit JetVec(std::vector<Jet> comps);
    static JetVec single(Jet f);
    static JetVec unit_monomial(const RingPtr& ring, std::size_t n, const ModuleMonomial& m, const Scalar& c);

    std::size_t size() const { return c_.size(); }
    const Jet& operator[](std::size_t i) const { return c_[i]; }
    Jet& operator[](std::size_t i) { return c_[i]; }
    const RingPtr& ring() const { return ring_; }
    bool is_zero() const;
    bool exact() const;

    JetVec operator+(const JetVec& o) const;
    JetVec operator-(const JetVec& o) const;
    JetVec& operator+=(const JetVec& o);
    JetVec& operator-=(const JetVec& o);
    JetVec negated() const;
    JetVec scaled(const Scalar& c) const;
    JetVec mul(const Jet& q) const; // componentwise q * f_i
    JetVec mono_mul(const Exponent& a, const Scalar& c) const;
    JetVec truncated(Nat d) const;
    std::optional<Nat> order() const;

    Rat norm(const RadiusVector& eps) const;

    bool operator==(const JetVec& o) const { return c_ == o.c_; }

private:
    RingPtr ring_;
    std::vector<Jet> c_;
};

struct LeadingData {
    ModuleMonomial lm;
    Scalar lc;
    JetVec lt;
    JetVec tail;
};

// f = LT + tail with LM deglex-maximal; throws ZeroElement on f = 0.
LeadingData leading_data(const JetVec& f);
ModuleMonomial leading_monomial(const JetVec& f);

// all module monomials x^a e_k with |a| == d, in decreasing module order
std::vector<ModuleMonomial> module_monomials_of_degree(std::size_t nvars, std::size_t ncomp, Nat d);
std::size_t count_monomials_upto(std::size_t nvars, Nat d);

} // namespace germ
