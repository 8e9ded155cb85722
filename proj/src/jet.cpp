#include "germ/jet.hpp"

#include <algorithm>

namespace germ {

Nat Exponent::degree() const {
    Nat d = 0;
    for (Nat x : e) d += x;
    return d;
}

bool Exponent::divides(const Exponent& b) const {
    if (e.size() != b.e.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > b.e[i]) return false;
    return true;
}

Exponent Exponent::plus(const Exponent& b) const {
    Exponent r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

Exponent Exponent::minus(const Exponent& b) const {
    Exponent r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

int deglex_cmp(const Exponent& a, const Exponent& b) {
    const Nat da = a.degree(), db = b.degree();
    if (da != db) return da < db ? 1 : -1;
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (a[l] != b[l]) return a[l] < b[l] ? 1 : -1;
    }
    return 0;
}

int module_cmp(const ModuleMonomial& a, const ModuleMonomial& b) {
    if (int c = deglex_cmp(a.alpha, b.alpha)) return c;
    if (a.unit != b.unit) return a.unit < b.unit ? 1 : -1;
    return 0;
}

bool module_divides(const ModuleMonomial& a, const ModuleMonomial& b) {
    return a.unit == b.unit && a.alpha.divides(b.alpha);
}

RadiusVector::RadiusVector(std::vector<Rat> v) : v_(std::move(v)) {
    for (const Rat& r : v_)
        if (r <= 0) fail(errc::bad_input, "radius entries must be positive");
}

RadiusVector RadiusVector::uniform(std::size_t n, const Rat& r) {
    return RadiusVector(std::vector<Rat>(n, r));
}

Rat RadiusVector::pow(const Exponent& a) const {
    Rat out(1);
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (a[i] != 0) out *= rat_pow(v_[i], a[i]);
    out.canonicalize();
    return out;
}

RadiusVector RadiusVector::scaled(const Rat& lambda) const { return scaled_from(0, lambda); }

RadiusVector RadiusVector::scaled_from(std::size_t s, const Rat& lambda) const {
    std::vector<Rat> v = v_;
    for (std::size_t i = s; i < v.size(); ++i) {
        v[i] *= lambda;
        v[i].canonicalize();
    }
    return RadiusVector(std::move(v));
}

RadiusVector RadiusVector::min_with(const RadiusVector& o) const {
    std::vector<Rat> v = v_;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (o[i] < v[i]) v[i] = o[i];
    return RadiusVector(std::move(v));
}

RadiusVector RadiusVector::concat(const RadiusVector& o) const {
    std::vector<Rat> v = v_;
    v.insert(v.end(), o.v_.begin(), o.v_.end());
    return RadiusVector(std::move(v));
}

bool RadiusVector::leq(const RadiusVector& o) const {
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (v_[i] > o[i]) return false;
    return true;
}

Ring::Ring(Field f, std::vector<std::string> vars, Nat trunc)
    : field_(f), vars_(std::move(vars)), trunc_(trunc) {
    if (trunc_ < 1) fail(errc::bad_input, "truncation degree must be >= 1");
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j]) fail(errc::bad_input, "duplicate variable name " + vars_[i]);
}

std::optional<std::size_t> Ring::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool Ring::same(const Ring& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && trunc_ == o.trunc_;
}

RingPtr make_ring(Field f, std::vector<std::string> vars, Nat trunc) {
    return std::make_shared<const Ring>(f, std::move(vars), trunc);
}

RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& extra, Nat trunc) {
    std::vector<std::string> vars = base->vars();
    vars.insert(vars.end(), extra.begin(), extra.end());
    return make_ring(base->field(), std::move(vars), trunc);
}

RingPtr retrunc_ring(const RingPtr& base, Nat trunc) {
    return make_ring(base->field(), base->vars(), trunc);
}

Jet Jet::constant(const RingPtr& ring, const Scalar& c) {
    Jet f(ring);
    f.add_term(Exponent(ring->nvars()), c);
    return f;
}

Jet Jet::variable(const RingPtr& ring, std::size_t i) {
    Exponent a(ring->nvars());
    a[i] = 1;
    return monomial(ring, a, ring->field().one());
}

Jet Jet::monomial(const RingPtr& ring, const Exponent& a, const Scalar& c) {
    Jet f(ring);
    f.add_term(a, c);
    return f;
}

Scalar Jet::coeff(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<Nat> Jet::order() const {
    if (terms_.empty()) return std::nullopt;
    // min degree == degree of the deglex-largest term
    return terms_.begin()->first.degree();
}

Exponent Jet::leading_exponent() const {
    if (terms_.empty()) fail(errc::zero_element, "leading data of zero");
    return terms_.begin()->first;
}

void Jet::add_term(const Exponent& a, const Scalar& c) {
    if (a.size() != ring_->nvars()) fail(errc::variable_mismatch, "exponent arity mismatch");
    if (ring_->field().is_zero(c)) return;
    if (a.degree() > ring_->trunc()) {
        exact_ = false;
        return;
    }
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
        it->second = ring_->field().add(it->second, c);
        if (ring_->field().is_zero(it->second)) terms_.erase(it);
    }
}

void Jet::require_compatible(const Jet& o) const {
    if (!ring_ || !o.ring_) fail(errc::variable_mismatch, "uninitialized jet");
    if (ring_ != o.ring_ && !ring_->same(*o.ring_))
        fail(errc::variable_mismatch, "jets over different rings");
}

Jet Jet::operator+(const Jet& o) const {
    Jet r = *this;
    r += o;
    return r;
}

Jet Jet::operator-(const Jet& o) const {
    Jet r = *this;
    r -= o;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    require_compatible(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    exact_ = exact_ && o.exact_;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    require_compatible(o);
    const Field& F = ring_->field();
    for (const auto& [a, c] : o.terms_) add_term(a, F.neg(c));
    exact_ = exact_ && o.exact_;
    return *this;
}

Jet Jet::negated() const {
    Jet r(ring_);
    r.exact_ = exact_;
    const Field& F = ring_->field();
    for (const auto& [a, c] : terms_) r.terms_.emplace(a, F.neg(c));
    return r;
}

Jet Jet::scaled(const Scalar& s) const {
    Jet r(ring_);
    r.exact_ = exact_;
    if (ring_->field().is_zero(s)) return r;
    const Field& F = ring_->field();
    for (const auto& [a, c] : terms_) {
        Scalar v = F.mul(c, s);
        if (!F.is_zero(v)) r.terms_.emplace(a, v);
    }
    return r;
}

Jet Jet::mono_mul(const Exponent& g, const Scalar& s) const {
    Jet r(ring_);
    r.exact_ = exact_;
    const Field& F = ring_->field();
    if (F.is_zero(s)) return r;
    for (const auto& [a, c] : terms_) r.add_term(a.plus(g), F.mul(c, s));
    return r;
}

Jet Jet::operator*(const Jet& o) const {
    require_compatible(o);
    Jet r(ring_);
    r.exact_ = exact_ && o.exact_;
    const Field& F = ring_->field();
    for (const auto& [a, c] : terms_)
        for (const auto& [b, d] : o.terms_) r.add_term(a.plus(b), F.mul(c, d));
    return r;
}

Jet Jet::derivative(std::size_t var) const {
    Jet r(ring_);
    r.exact_ = exact_;
    const Field& F = ring_->field();
    for (const auto& [a, c] : terms_) {
        if (a[var] == 0) continue;
        Exponent b = a;
        b[var] -= 1;
        Scalar v = F.mul(c, F.from_long(static_cast<long>(a[var])));
        if (!F.is_zero(v)) r.add_term(b, v);
    }
    return r;
}

Jet Jet::truncated(Nat d) const {
    Jet r(ring_);
    r.exact_ = exact_;
    for (const auto& [a, c] : terms_) {
        if (a.degree() <= d) r.terms_.emplace(a, c);
        else r.exact_ = false;
    }
    return r;
}

Jet Jet::homogeneous_part(Nat d) const {
    Jet r(ring_);
    for (const auto& [a, c] : terms_)
        if (a.degree() == d) r.terms_.emplace(a, c);
    return r;
}

Jet Jet::part_of_subdegree(std::size_t first_var, Nat d) const {
    Jet r(ring_);
    if (!exact_) r.mark_inexact();
    for (const auto& [a, c] : terms_) {
        Nat sd = 0;
        for (std::size_t i = first_var; i < a.size(); ++i) sd += a[i];
        if (sd == d) r.terms_.emplace(a, c);
    }
    return r;
}

Nat Jet::max_subdegree(std::size_t first_var) const {
    Nat m = 0;
    for (const auto& [a, c] : terms_) {
        Nat sd = 0;
        for (std::size_t i = first_var; i < a.size(); ++i) sd += a[i];
        m = std::max(m, sd);
    }
    return m;
}

Jet Jet::block_coefficient(std::size_t first_var, const Exponent& nu, const RingPtr& target) const {
    if (target->nvars() != first_var) fail(errc::variable_mismatch, "block target arity");
    Jet r(target);
    r.exact_ = exact_;
    for (const auto& [a, c] : terms_) {
        bool match = true;
        for (std::size_t i = first_var; i < a.size(); ++i)
            if (a[i] != nu[i - first_var]) { match = false; break; }
        if (!match) continue;
        Exponent head(first_var);
        for (std::size_t i = 0; i < first_var; ++i) head[i] = a[i];
        r.add_term(head, c);
    }
    return r;
}

Jet Jet::lifted(const RingPtr& target) const {
    const std::size_t n = ring_->nvars();
    if (target->nvars() < n) fail(errc::variable_mismatch, "lift target too small");
    for (std::size_t i = 0; i < n; ++i)
        if (target->var(i) != ring_->var(i)) fail(errc::variable_mismatch, "lift variable mismatch");
    Jet r(target);
    r.exact_ = exact_;
    for (const auto& [a, c] : terms_) {
        Exponent b(target->nvars());
        for (std::size_t i = 0; i < n; ++i) b[i] = a[i];
        r.add_term(b, c);
    }
    return r;
}

Jet Jet::substituted(const RingPtr& target, std::span<const Jet> images) const {
    if (images.size() != ring_->nvars()) fail(errc::variable_mismatch, "substitution arity");
    bool images_exact = true;
    for (const Jet& g : images) {
        if (!g.ring()->same(*target)) fail(errc::variable_mismatch, "substitution image ring");
        if (!g.is_zero() && !target->field().is_zero(g.constant_term()))
            fail(errc::substitution_constant_term, "substituted jet must have zero constant term");
        images_exact = images_exact && g.exact();
    }
    // memoized powers of each image
    std::vector<std::vector<Jet>> pw(images.size());
    auto power = [&](std::size_t i, Nat k) -> const Jet& {
        auto& col = pw[i];
        if (col.empty()) col.push_back(Jet::constant(target, target->field().one()));
        while (col.size() <= k) col.push_back(col.back() * images[i]);
        return col[k];
    };
    Jet out(target);
    for (const auto& [a, c] : terms_) {
        Jet term = Jet::constant(target, c);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (a[i] != 0) term = term * power(i, a[i]);
        out += term;
    }
    out.exact_ = out.exact_ && exact_ && images_exact;
    return out;
}

Rat Jet::norm(const RadiusVector& eps) const {
    if (eps.size() != ring_->nvars()) fail(errc::variable_mismatch, "radius arity");
    Rat s(0);
    const Field& F = ring_->field();
    for (const auto& [a, c] : terms_) s += F.valuation(c) * eps.pow(a);
    s.canonicalize();
    return s;
}

JetVec::JetVec(RingPtr ring, std::size_t n) : ring_(std::move(ring)) {
    c_.assign(n, Jet(ring_));
}

JetVec::JetVec(std::vector<Jet> comps) : c_(std::move(comps)) {
    if (c_.empty()) fail(errc::bad_input, "empty jet vector");
    ring_ = c_[0].ring();
    for (const Jet& f : c_)
        if (!f.ring()->same(*ring_)) fail(errc::variable_mismatch, "vector components over different rings");
}

JetVec JetVec::single(Jet f) {
    std::vector<Jet> v;
    v.push_back(std::move(f));
    return JetVec(std::move(v));
}

JetVec JetVec::unit_monomial(const RingPtr& ring, std::size_t n, const ModuleMonomial& m, const Scalar& c) {
    JetVec v(ring, n);
    v[m.unit] = Jet::monomial(ring, m.alpha, c);
    return v;
}

bool JetVec::is_zero() const {
    for (const Jet& f : c_)
        if (!f.is_zero()) return false;
    return true;
}

bool JetVec::exact() const {
    for (const Jet& f : c_)
        if (!f.exact()) return false;
    return true;
}

JetVec JetVec::operator+(const JetVec& o) const {
    JetVec r = *this;
    r += o;
    return r;
}

JetVec JetVec::operator-(const JetVec& o) const {
    JetVec r = *this;
    r -= o;
    return r;
}

JetVec& JetVec::operator+=(const JetVec& o) {
    if (size() != o.size()) fail(errc::variable_mismatch, "vector size mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

JetVec& JetVec::operator-=(const JetVec& o) {
    if (size() != o.size()) fail(errc::variable_mismatch, "vector size mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

JetVec JetVec::negated() const {
    JetVec r = *this;
    for (Jet& f : r.c_) f = f.negated();
    return r;
}

JetVec JetVec::scaled(const Scalar& s) const {
    JetVec r = *this;
    for (Jet& f : r.c_) f = f.scaled(s);
    return r;
}

JetVec JetVec::mul(const Jet& q) const {
    JetVec r = *this;
    for (Jet& f : r.c_) f = f * q;
    return r;
}

JetVec JetVec::mono_mul(const Exponent& a, const Scalar& c) const {
    JetVec r = *this;
    for (Jet& f : r.c_) f = f.mono_mul(a, c);
    return r;
}

JetVec JetVec::truncated(Nat d) const {
    JetVec r = *this;
    for (Jet& f : r.c_) f = f.truncated(d);
    return r;
}

std::optional<Nat> JetVec::order() const {
    std::optional<Nat> m;
    for (const Jet& f : c_)
        if (auto o = f.order(); o && (!m || *o < *m)) m = o;
    return m;
}

Rat JetVec::norm(const RadiusVector& eps) const {
    Rat s(0);
    for (const Jet& f : c_) s += f.norm(eps);
    s.canonicalize();
    return s;
}

ModuleMonomial leading_monomial(const JetVec& f) {
    ModuleMonomial cur;
    bool found = false;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k].is_zero()) continue;
        ModuleMonomial cand{f[k].leading_exponent(), static_cast<Nat>(k)};
        if (!found || module_cmp(cand, cur) > 0) {
            cur = cand;
            found = true;
        }
    }
    if (!found) fail(errc::zero_element, "leading data of zero vector");
    return cur;
}

LeadingData leading_data(const JetVec& f) {
    ModuleMonomial lm = leading_monomial(f);
    Scalar lc = f[lm.unit].coeff(lm.alpha);
    JetVec lt = JetVec::unit_monomial(f.ring(), f.size(), lm, lc);
    JetVec tail = f - lt;
    return LeadingData{lm, lc, std::move(lt), std::move(tail)};
}

static void enumerate_exponents(std::size_t nvars, Nat d, Exponent& cur, std::size_t pos,
                                std::vector<Exponent>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (Nat k = 0; k <= d; ++k) {
        cur[pos] = k;
        enumerate_exponents(nvars, d - k, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::vector<ModuleMonomial> module_monomials_of_degree(std::size_t nvars, std::size_t ncomp, Nat d) {
    std::vector<Exponent> exps;
    if (nvars == 0) {
        if (d == 0) exps.push_back(Exponent(0));
    } else {
        Exponent cur(nvars);
        enumerate_exponents(nvars, d, cur, 0, exps);
    }
    std::sort(exps.begin(), exps.end(), [](const Exponent& a, const Exponent& b) { return deglex_cmp(a, b) > 0; });
    std::vector<ModuleMonomial> out;
    for (const Exponent& a : exps)
        for (std::size_t k = 0; k < ncomp; ++k) out.push_back(ModuleMonomial{a, static_cast<Nat>(k)});
    return out;
}

std::size_t count_monomials_upto(std::size_t nvars, Nat d) {
    // C(n + d, n)
    std::size_t num = 1;
    for (std::size_t i = 1; i <= nvars; ++i) num = num * (d + i) / i;
    return num;
}

} // namespace germ
