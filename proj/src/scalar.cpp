#include "germ/scalar.hpp"

namespace germ {

Rat rat_pow(const Rat& base, unsigned long exp) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), exp);
    Rat out(n, d);
    out.canonicalize();
    return out;
}

Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

static bool is_prime_ul(unsigned long p) {
    if (p < 2) return false;
    mpz_class z(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

Field Field::p_adic(unsigned long p) {
    if (!is_prime_ul(p)) fail(errc::bad_input, "p-adic valuation needs a prime, got " + std::to_string(p));
    return Field(Kind::p_adic, p);
}

Field Field::finite(unsigned long p) {
    if (!is_prime_ul(p)) fail(errc::bad_input, "finite field needs a prime, got " + std::to_string(p));
    return Field(Kind::finite, p);
}

Field Field::parse(const std::string& spec) {
    if (spec == "Q") return rationals();
    auto prefixed = [&](const std::string& pre) -> long {
        if (spec.rfind(pre, 0) != 0) return -1;
        const std::string rest = spec.substr(pre.size());
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) return -1;
        return std::stol(rest);
    };
    if (long p = prefixed("Q_p:"); p > 0) return p_adic(static_cast<unsigned long>(p));
    if (long p = prefixed("F:"); p > 0) return finite(static_cast<unsigned long>(p));
    fail(errc::bad_input, "unknown field spec '" + spec + "' (use Q, Q_p:<p> or F:<p>)");
}

std::string Field::name() const {
    switch (kind_) {
        case Kind::rationals: return "Q";
        case Kind::p_adic: return "Q_p:" + std::to_string(p_);
        case Kind::finite: return "F:" + std::to_string(p_);
    }
    return "?";
}

Scalar Field::reduce(const Rat& v) const {
    if (kind_ != Kind::finite) {
        Rat c = v;
        c.canonicalize();
        return c;
    }
    Rat c = v;
    c.canonicalize();
    mpz_class p(p_);
    mpz_class den_mod = c.get_den() % p;
    if (den_mod == 0) fail(errc::coefficient_not_in_field, "denominator not invertible mod " + std::to_string(p_));
    mpz_class num_mod = c.get_num() % p;
    if (num_mod < 0) num_mod += p;
    mpz_class den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den_mod.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::coefficient_not_in_field, "denominator not invertible mod " + std::to_string(p_));
    mpz_class r = (num_mod * den_inv) % p;
    if (r < 0) r += p;
    return Rat(r);
}

Scalar Field::reduce_arith(const Rat& v) const {
    if (kind_ != Kind::finite) {
        Rat c = v;
        c.canonicalize();
        return c;
    }
    // arithmetic on canonical residues keeps denominator 1
    Rat c = v;
    c.canonicalize();
    mpz_class p(p_);
    mpz_class r = c.get_num() % p;
    if (r < 0) r += p;
    return Rat(r);
}

Scalar Field::from_long(long n, long d) const {
    if (d == 0) fail(errc::division_by_zero, "zero denominator");
    return reduce(Rat(n, d));
}

Scalar Field::inv(const Scalar& a) const {
    if (a == 0) fail(errc::division_by_zero, "inverse of zero");
    if (kind_ != Kind::finite) return Scalar(1) / a;
    mpz_class p(p_), inv;
    mpz_class num = a.get_num() % p;
    if (num < 0) num += p;
    if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::division_by_zero, "residue not invertible");
    return Rat(inv);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const {
    if (b == 0) fail(errc::division_by_zero, "division by zero");
    return mul(a, inv(b));
}

Rat Field::valuation(const Scalar& a) const {
    if (a == 0) return Rat(0);
    switch (kind_) {
        case Kind::rationals: return rat_abs(a);
        case Kind::finite: return Rat(1);
        case Kind::p_adic: {
            mpz_class p(p_);
            long v = 0;
            mpz_class num = a.get_num();
            mpz_class den = a.get_den();
            while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
                num /= p;
                ++v;
            }
            while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
                den /= p;
                --v;
            }
            Rat pw;
            mpz_class ppow;
            mpz_pow_ui(ppow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
            if (v >= 0) pw = Rat(1) / Rat(ppow);
            else pw = Rat(ppow);
            pw.canonicalize();
            return pw;
        }
    }
    fail(errc::internal, "unreachable field kind");
}

} // namespace germ
