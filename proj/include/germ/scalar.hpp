#pragma once

#include <gmpxx.h>

#include <string>

#include "germ/errors.hpp"

namespace germ {

// Exact rational; also the value type of norms and valuations.
using Rat = mpq_class;

// Field elements are canonical rationals: arbitrary rationals for the
// characteristic-0 kinds, residues 0..p-1 (denominator 1) for F_p.
using Scalar = Rat;

Rat rat_pow(const Rat& base, unsigned long exp);
Rat rat_abs(const Rat& a);

// A real valued field at desk scale: Q with the archimedean absolute value,
// Q with a p-adic valuation, or F_p with the trivial valuation.
class Field {
public:
    enum class Kind { rationals, p_adic, finite };

    static Field rationals() { return Field(Kind::rationals, 0); }
    static Field p_adic(unsigned long p);
    static Field finite(unsigned long p);

    // Config strings: "Q" | "Q_p:<p>" | "F:<p>".
    static Field parse(const std::string& spec);

    Kind kind() const { return kind_; }
    unsigned long prime() const { return p_; }
    unsigned long characteristic() const { return kind_ == Kind::finite ? p_ : 0; }
    bool ultrametric() const { return kind_ != Kind::rationals; }
    std::string name() const;

    // Canonical form of an elements from raw rational data; rejects residues
    // with denominator divisible by p over F_p.
    Scalar reduce(const Rat& v) const;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return reduce(Scalar(1)); }
    Scalar from_long(long n, long d = 1) const;

    bool is_zero(const Scalar& a) const { return a == 0; }
    bool is_one(const Scalar& a) const { return a == 1; }

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce_arith(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce_arith(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce_arith(a * b); }
    Scalar neg(const Scalar& a) const { return reduce_arith(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const;

    // |.| : K -> Q_{>=0}.  Exact: |0|=0, multiplicative, triangle inequality,
    // ultrametric for the p-adic and trivial kinds.
    Rat valuation(const Scalar& a) const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }

private:
    Field(Kind k, unsigned long p) : kind_(k), p_(p) {}
    Scalar reduce_arith(const Rat& v) const;

    Kind kind_;
    unsigned long p_;
};

} // namespace germ
