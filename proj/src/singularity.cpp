#include "germ/singularity.hpp"

#include <algorithm>

#include "germ/linalg.hpp"

namespace germ {

namespace {

std::vector<Jet> identity_subst(const RingPtr& ring) {
    std::vector<Jet> id;
    for (std::size_t i = 0; i < ring->nvars(); ++i) id.push_back(Jet::variable(ring, i));
    return id;
}

Matrix hessian_at_zero(const Jet& f) {
    const RingPtr ring = f.ring();
    const std::size_t n = ring->nvars();
    Matrix H(ring->field(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Jet di = f.derivative(i);
        for (std::size_t j = 0; j < n; ++j) H.at(i, j) = di.derivative(j).constant_term();
    }
    return H;
}

std::optional<std::size_t> quotient_dim(const std::vector<Jet>& gens) {
    StandardBasis S = std_basis(gens);
    QuotientBasis Q = quotient_monomials(S);
    if (!Q.complete) return std::nullopt;
    return Q.monomials.size();
}

} // namespace

std::vector<Jet> jacobian_generators(const Jet& f) {
    std::vector<Jet> out;
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i) out.push_back(f.derivative(i));
    return out;
}

SingularityProfile profile(const Jet& f) {
    const RingPtr ring = f.ring();
    const Field& F = ring->field();
    if (!f.is_zero() && !F.is_zero(f.constant_term())) fail(errc::unit_input, "germ must lie in m");

    SingularityProfile out;
    out.order = f.order();
    std::vector<Jet> jac = jacobian_generators(f);
    std::optional<Nat> d;
    for (const Jet& g : jac)
        if (auto o = g.order(); o && (!d || *o < *d)) d = o;
    out.diff_order = d;

    out.milnor = quotient_dim(jac);
    std::vector<Jet> tj = jac;
    tj.push_back(f);
    out.tjurina = quotient_dim(tj);

    out.hessian_rank = hessian_at_zero(f).rank();
    out.corank = ring->nvars() - out.hessian_rank;
    return out;
}

namespace {

// m^2 * J(f), m*<f> + m^2*J(f), and m * J(f)^2 generator sets
std::vector<Jet> degree2_right_target(const Jet& f) {
    const RingPtr ring = f.ring();
    std::vector<Jet> out;
    std::vector<Jet> jac = jacobian_generators(f);
    for (std::size_t a = 0; a < ring->nvars(); ++a)
        for (std::size_t b = a; b < ring->nvars(); ++b)
            for (const Jet& g : jac) {
                Exponent m2(ring->nvars());
                m2[a] += 1;
                m2[b] += 1;
                out.push_back(g.mono_mul(m2, ring->field().one()));
            }
    return out;
}

std::vector<Jet> degree2_contact_target(const Jet& f) {
    std::vector<Jet> out = degree2_right_target(f);
    const RingPtr ring = f.ring();
    for (std::size_t a = 0; a < ring->nvars(); ++a) {
        Exponent m1(ring->nvars());
        m1[a] = 1;
        out.push_back(f.mono_mul(m1, ring->field().one()));
    }
    return out;
}

std::vector<Jet> newton_target(const Jet& f) {
    const RingPtr ring = f.ring();
    std::vector<Jet> jac = jacobian_generators(f);
    std::vector<Jet> out;
    for (std::size_t a = 0; a < ring->nvars(); ++a)
        for (std::size_t i = 0; i < jac.size(); ++i)
            for (std::size_t j = i; j < jac.size(); ++j) {
                Exponent m1(ring->nvars());
                m1[a] = 1;
                out.push_back((jac[i] * jac[j]).mono_mul(m1, ring->field().one()));
            }
    return out;
}

std::optional<Nat> least_inclusion_degree(const std::vector<Jet>& target_gens, Nat offset, Nat trunc) {
    bool all_zero = true;
    for (const Jet& g : target_gens) all_zero = all_zero && g.is_zero();
    if (all_zero) return std::nullopt;
    StandardBasis S = std_basis(target_gens);
    for (Nat k = 0; k + offset <= trunc; ++k) {
        if (contains_monomials_of_degree(S, k + offset)) return k;
    }
    return std::nullopt;
}

} // namespace

bool power_membership(const Jet& f, Nat k, InclusionForm form) {
    const Nat degree = form == InclusionForm::right_newton ? k + 1 : k + 2;
    std::vector<Jet> target;
    switch (form) {
        case InclusionForm::right_order2: target = degree2_right_target(f); break;
        case InclusionForm::contact_order2: target = degree2_contact_target(f); break;
        case InclusionForm::right_newton: target = newton_target(f); break;
    }
    bool all_zero = true;
    for (const Jet& g : target) all_zero = all_zero && g.is_zero();
    if (all_zero) return false;
    StandardBasis S = std_basis(target);
    return contains_monomials_of_degree(S, degree);
}

DeterminacyBound determinacy_bound(const Jet& f, DeterminacyMode mode) {
    const RingPtr ring = f.ring();
    if (f.is_zero() || *f.order() < 2) fail(errc::order_too_low, "determinacy needs f in m^2");

    DeterminacyBound out;
    out.mode = mode;

    std::vector<Jet> jac = jacobian_generators(f);
    std::optional<Nat> dord;
    for (const Jet& g : jac)
        if (auto o = g.order(); o && (!dord || *o < *dord)) dord = o;

    if (mode == DeterminacyMode::right) {
        if (!dord) fail(errc::not_detectable, "all partials vanish at this truncation");
        auto k = least_inclusion_degree(degree2_right_target(f), 2, ring->trunc());
        if (!k) fail(errc::not_detectable, "m^{k+2} never enters m^2*J(f) below the truncation");
        out.k = *k;
        out.bound_main = 2 * out.k - *dord + 1;
        out.bound = out.bound_main;
        if (auto nk = least_inclusion_degree(newton_target(f), 1, ring->trunc())) {
            out.newton_k = *nk;
            out.newton_bound = *nk;
            out.bound = std::min(out.bound, *out.newton_bound);
        }
    } else {
        auto k = least_inclusion_degree(degree2_contact_target(f), 2, ring->trunc());
        if (!k) fail(errc::not_detectable, "m^{k+2} never enters m<f>+m^2*J(f) below the truncation");
        out.k = *k;
        out.bound_main = 2 * out.k - *f.order() + 2;
        out.bound = out.bound_main;
    }
    return out;
}

namespace {

struct LinearReduction {
    Matrix P;
    std::size_t rank;
};

// symmetric Gauss: P with P^T B P = diag(a_1..a_k, 0..0), char != 2
LinearReduction diagonalize_symmetric(Matrix B) {
    const Field& F = B.field();
    const std::size_t n = B.rows();
    Matrix P(F, n, n);
    for (std::size_t i = 0; i < n; ++i) P.at(i, i) = F.one();

    auto col_op = [&](std::size_t src, std::size_t dst, const Scalar& factor) {
        // col_dst += factor * col_src, congruently
        for (std::size_t r = 0; r < n; ++r) B.at(r, dst) = F.add(B.at(r, dst), F.mul(factor, B.at(r, src)));
        for (std::size_t c = 0; c < n; ++c) B.at(dst, c) = F.add(B.at(dst, c), F.mul(factor, B.at(src, c)));
        for (std::size_t r = 0; r < n; ++r) P.at(r, dst) = F.add(P.at(r, dst), F.mul(factor, P.at(r, src)));
    };
    auto swap_vars = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < n; ++r) std::swap(B.at(r, i), B.at(r, j));
        for (std::size_t c = 0; c < n; ++c) std::swap(B.at(i, c), B.at(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(P.at(r, i), P.at(r, j));
    };

    std::size_t pos = 0;
    while (pos < n) {
        if (F.is_zero(B.at(pos, pos))) {
            std::size_t dj = n;
            for (std::size_t j = pos + 1; j < n; ++j)
                if (!F.is_zero(B.at(j, j))) { dj = j; break; }
            if (dj < n) {
                swap_vars(pos, dj);
            } else {
                bool found = false;
                for (std::size_t i = pos; i < n && !found; ++i)
                    for (std::size_t j = i + 1; j < n && !found; ++j)
                        if (!F.is_zero(B.at(i, j))) {
                            col_op(j, i, F.one()); // B_ii becomes 2 B_ij
                            swap_vars(pos, i);
                            found = true;
                        }
                if (!found) break; // rest vanishes
            }
        }
        Scalar inv = F.inv(B.at(pos, pos));
        for (std::size_t j = pos + 1; j < n; ++j) {
            if (F.is_zero(B.at(pos, j))) continue;
            col_op(pos, j, F.neg(F.mul(B.at(pos, j), inv)));
        }
        ++pos;
    }
    return LinearReduction{std::move(P), pos};
}

// symplectic reduction of the alternating form, char 2: pairs first
LinearReduction reduce_alternating(Matrix A) {
    const Field& F = A.field();
    const std::size_t n = A.rows();
    Matrix P(F, n, n);
    for (std::size_t i = 0; i < n; ++i) P.at(i, i) = F.one();

    auto swap_vars = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < n; ++r) std::swap(A.at(r, i), A.at(r, j));
        for (std::size_t c = 0; c < n; ++c) std::swap(A.at(i, c), A.at(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(P.at(r, i), P.at(r, j));
    };
    auto scale_var = [&](std::size_t i, const Scalar& s) {
        for (std::size_t r = 0; r < n; ++r) A.at(r, i) = F.mul(A.at(r, i), s);
        for (std::size_t c = 0; c < n; ++c) A.at(i, c) = F.mul(A.at(i, c), s);
        for (std::size_t r = 0; r < n; ++r) P.at(r, i) = F.mul(P.at(r, i), s);
    };
    auto col_op = [&](std::size_t src, std::size_t dst, const Scalar& factor) {
        for (std::size_t r = 0; r < n; ++r) A.at(r, dst) = F.add(A.at(r, dst), F.mul(factor, A.at(r, src)));
        for (std::size_t c = 0; c < n; ++c) A.at(dst, c) = F.add(A.at(dst, c), F.mul(factor, A.at(src, c)));
        for (std::size_t r = 0; r < n; ++r) P.at(r, dst) = F.add(P.at(r, dst), F.mul(factor, P.at(r, src)));
    };

    std::size_t pos = 0;
    while (pos + 1 < n || pos + 1 == n) {
        std::size_t pi = n, pj = n;
        for (std::size_t i = pos; i < n && pi == n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!F.is_zero(A.at(i, j))) { pi = i; pj = j; break; }
        if (pi == n) break;
        swap_vars(pos, pi);
        if (pj == pos) pj = pi; // the swap moved it
        swap_vars(pos + 1, pj);
        scale_var(pos + 1, F.inv(A.at(pos, pos + 1)));
        for (std::size_t k = 0; k < n; ++k) {
            if (k == pos || k == pos + 1) continue;
            // e_k += A(e_k, e_{pos+1}) e_pos + A(e_k, e_pos) e_{pos+1}
            Scalar c1 = A.at(k, pos + 1);
            Scalar c2 = A.at(k, pos);
            if (!F.is_zero(c1)) col_op(pos, k, c1);
            if (!F.is_zero(c2)) col_op(pos + 1, k, c2);
        }
        pos += 2;
    }
    return LinearReduction{std::move(P), pos}; // rank = 2l
}

std::vector<Jet> matrix_subst(const Matrix& P, const RingPtr& ring) {
    const Field& F = ring->field();
    std::vector<Jet> sub;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        Jet s = Jet::zero(ring);
        for (std::size_t j = 0; j < P.cols(); ++j)
            if (!F.is_zero(P.at(i, j))) s += Jet::variable(ring, j).scaled(P.at(i, j));
        sub.push_back(std::move(s));
    }
    return sub;
}

bool uses_only_tail_vars(const Jet& f, std::size_t first) {
    for (const auto& [a, c] : f.terms())
        for (std::size_t i = 0; i < first; ++i)
            if (a[i] != 0) return false;
    return true;
}

} // namespace

SplitResult split(const Jet& f) {
    const RingPtr ring = f.ring();
    const Field& F = ring->field();
    const std::size_t n = ring->nvars();
    if (f.is_zero() || *f.order() < 2) fail(errc::order_too_low, "split needs f in m^2");
    const bool char2 = F.characteristic() == 2;

    SplitResult out;
    out.ring = ring;
    out.transform = identity_subst(ring);

    // linear step on the 2-jet
    Matrix H = hessian_at_zero(f);
    LinearReduction lr = char2 ? reduce_alternating(std::move(H)) : diagonalize_symmetric(std::move(H));
    out.rank = lr.rank;
    const std::size_t split_vars = lr.rank;

    Jet cur = f;
    if (split_vars > 0) {
        std::vector<Jet> lin = matrix_subst(lr.P, ring);
        cur = cur.substituted(ring, lin);
        for (Jet& t : out.transform) t = t.substituted(ring, lin);
    }

    // partner of a split variable in the char-2 hyperbolic pairing
    auto partner = [](std::size_t i) { return i % 2 == 0 ? i + 1 : i - 1; };

    // collect quadratic data and check the linear step delivered its shape
    std::vector<Scalar> diag(n, F.zero());
    {
        Jet q2 = cur.homogeneous_part(2);
        for (const auto& [a, c] : q2.terms()) {
            std::size_t v1 = n, v2 = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (a[i] == 2) { v1 = v2 = i; break; }
                if (a[i] == 1) { (v1 == n ? v1 : v2) = i; }
            }
            if (v1 == v2) {
                diag[v1] = c;
                continue;
            }
            if (!char2) fail(errc::internal, "cross term survived diagonalization");
            bool paired = v1 < split_vars && v2 < split_vars && partner(v1) == v2;
            if (!paired) fail(errc::internal, "cross term survived symplectic reduction");
            if (!F.is_one(c)) fail(errc::internal, "hyperbolic pair not normalized");
        }
    }
    for (std::size_t i = 0; i < split_vars; ++i) out.quad_coeffs.push_back(diag[i]);
    if (!char2)
        for (std::size_t i = 0; i < split_vars; ++i)
            if (F.is_zero(diag[i])) fail(errc::internal, "zero diagonal inside the split block");

    // degree-by-degree removal of terms mixing split and residual data: the
    // degree-d mixed part is written over the partials of the quadratic form
    // and absorbed by a Taylor step, moving all changes to degree >= d+1
    for (Nat deg = 3; deg <= ring->trunc(); ++deg) {
        Jet part = cur.homogeneous_part(deg);
        if (part.is_zero()) continue;
        std::vector<Jet> corr(n, Jet::zero(ring));
        bool any = false;
        for (const auto& [a, c] : part.terms()) {
            std::size_t lead = n;
            for (std::size_t i = 0; i < split_vars; ++i)
                if (a[i] != 0) { lead = i; break; }
            if (lead == n) continue; // pure residual term
            Exponent rest = a;
            rest[lead] -= 1;
            if (char2) {
                corr[partner(lead)].add_term(rest, c); // delta against dq/dx_partner = x_lead
            } else {
                // x_lead <- x_lead - h/(2 a_lead)
                Scalar two_a = F.add(diag[lead], diag[lead]);
                corr[lead].add_term(rest, F.neg(F.div(c, two_a)));
            }
            any = true;
        }
        if (!any) continue;
        std::vector<Jet> sub = identity_subst(ring);
        for (std::size_t i = 0; i < n; ++i)
            if (!corr[i].is_zero()) sub[i] += corr[i];
        cur = cur.substituted(ring, sub);
        for (Jet& t : out.transform) t = t.substituted(ring, sub);
    }

    out.quadratic_part = cur.homogeneous_part(2);
    out.residual = cur - out.quadratic_part;
    if (char2) {
        // the diagonal of the kernel block belongs to the residual
        Jet kernel_diag = Jet::zero(ring);
        for (std::size_t i = split_vars; i < n; ++i)
            if (!F.is_zero(diag[i])) {
                Exponent sq(n);
                sq[i] = 2;
                kernel_diag.add_term(sq, diag[i]);
            }
        out.quadratic_part -= kernel_diag;
        out.residual += kernel_diag;
    }
    if (!uses_only_tail_vars(out.residual, split_vars))
        fail(errc::internal, "residual still mentions split variables");

    if (char2 && !out.normalized) {
        bool plain_pairs = true;
        for (std::size_t i = 0; i < split_vars; ++i) plain_pairs = plain_pairs && F.is_zero(diag[i]);
        if (plain_pairs) {
            bool has_diag = false;
            for (std::size_t i = split_vars; i < n; ++i) has_diag = has_diag || !F.is_zero(diag[i]);
            if (!has_diag) out.char2_type = 'b';
        }
    }
    return out;
}

FieldHooks default_hooks() {
    FieldHooks hooks;
    hooks.sqrt = [](const Field& F, const Scalar& a) -> std::optional<Scalar> {
        if (F.is_zero(a)) return F.zero();
        if (F.kind() == Field::Kind::finite) {
            for (unsigned long r = 0; r < F.prime(); ++r) {
                Scalar cand = F.from_long(static_cast<long>(r));
                if (F.mul(cand, cand) == a) return cand;
            }
            return std::nullopt;
        }
        if (a < 0) return std::nullopt;
        mpz_class num = a.get_num(), den = a.get_den(), rn, rd;
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return std::nullopt;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rat r(rn, rd);
        r.canonicalize();
        return r;
    };
    hooks.quad_root = [&](const Field& F, const Scalar& b, const Scalar& c) -> std::optional<Scalar> {
        if (F.kind() == Field::Kind::finite) {
            for (unsigned long r = 0; r < F.prime(); ++r) {
                Scalar t = F.from_long(static_cast<long>(r));
                Scalar val = F.add(F.add(F.mul(t, t), F.mul(b, t)), c);
                if (F.is_zero(val)) return t;
            }
            return std::nullopt;
        }
        // characteristic 0: (-b +- sqrt(b^2-4c)) / 2
        Scalar disc = b * b - 4 * c;
        disc.canonicalize();
        FieldHooks self = default_hooks();
        auto root = self.sqrt(F, disc);
        if (!root) return std::nullopt;
        Scalar r = (*root - b) / 2;
        r.canonicalize();
        return r;
    };
    return hooks;
}

namespace {

void apply_step(SplitResult& out, const std::vector<Jet>& sub) {
    const RingPtr ring = out.ring;
    for (Jet& t : out.transform) t = t.substituted(ring, sub);
    out.quadratic_part = out.quadratic_part.substituted(ring, sub).homogeneous_part(2);
    out.residual = out.residual.substituted(ring, sub);
}

} // namespace

SplitResult normalize_coefficients(const SplitResult& sr, const FieldHooks& hooks) {
    SplitResult out = sr;
    const RingPtr ring = sr.ring;
    const Field& F = ring->field();
    const std::size_t n = ring->nvars();
    const bool char2 = F.characteristic() == 2;

    if (!hooks.sqrt || !hooks.quad_root) return out; // nothing to do without hooks

    if (!char2) {
        std::vector<Jet> sub = identity_subst(ring);
        bool any = false;
        for (std::size_t i = 0; i < out.rank; ++i) {
            const Scalar& a = out.quad_coeffs[i];
            if (F.is_one(a)) continue;
            auto s = hooks.sqrt(F, a);
            if (!s || F.is_zero(*s))
                fail(errc::hook_failure, "coefficient is not a square in the field");
            sub[i] = Jet::variable(ring, i).scaled(F.inv(*s));
            any = true;
        }
        if (any) apply_step(out, sub);
        for (std::size_t i = 0; i < out.rank; ++i) out.quad_coeffs[i] = F.one();
        out.normalized = true;
        return out;
    }

    // char 2: bring each block a x^2 + xy + b y^2 to xy
    for (std::size_t i = 0; i + 1 < out.rank + 1 && i < out.rank; i += 2) {
        Scalar a = out.quad_coeffs[i];
        Scalar b = out.quad_coeffs[i + 1];
        if (F.is_zero(a) && F.is_zero(b)) continue;
        std::vector<Jet> sub = identity_subst(ring);
        if (F.is_zero(a)) {
            // xy + b y^2 = (x + b y) y
            sub[i] = Jet::variable(ring, i) + Jet::variable(ring, i + 1).scaled(b);
        } else if (F.is_zero(b)) {
            sub[i + 1] = Jet::variable(ring, i).scaled(a) + Jet::variable(ring, i + 1);
        } else {
            // root rho of a t^2 + t + b; then x = a rho' u + rho v, y = a u + v
            auto rho = hooks.quad_root(F, F.inv(a), F.div(b, a));
            if (!rho) fail(errc::hook_failure, "hyperbolic block not reducible: quadratic has no root");
            Scalar rho2 = F.add(*rho, F.inv(a)); // the other root
            sub[i] = Jet::variable(ring, i).scaled(F.mul(a, rho2)) +
                     Jet::variable(ring, i + 1).scaled(*rho);
            sub[i + 1] = Jet::variable(ring, i).scaled(a) + Jet::variable(ring, i + 1);
        }
        apply_step(out, sub);
        out.quad_coeffs[i] = F.zero();
        out.quad_coeffs[i + 1] = F.zero();
    }

    // merge residual diagonal squares: sum d_i x_i^2 = (sum sqrt(d_i) x_i)^2
    std::vector<std::size_t> diag_idx;
    std::vector<Scalar> diag_root;
    for (std::size_t i = out.rank; i < n; ++i) {
        Scalar di = out.residual.coeff([&] {
            Exponent sq(n);
            sq[i] = 2;
            return sq;
        }());
        if (F.is_zero(di)) continue;
        auto rt = hooks.sqrt(F, di);
        if (!rt) fail(errc::hook_failure, "diagonal coefficient is not a square in the field");
        diag_idx.push_back(i);
        diag_root.push_back(*rt);
    }
    if (!diag_idx.empty()) {
        const std::size_t i0 = diag_idx[0];
        std::vector<Jet> sub = identity_subst(ring);
        Jet acc = Jet::variable(ring, i0);
        for (std::size_t j = 1; j < diag_idx.size(); ++j)
            acc += Jet::variable(ring, diag_idx[j]).scaled(diag_root[j]);
        sub[i0] = acc.scaled(F.inv(diag_root[0]));
        apply_step(out, sub);
        if (i0 != out.rank) {
            // squared variable goes to position 2l+1
            std::vector<Jet> swap = identity_subst(ring);
            swap[i0] = Jet::variable(ring, out.rank);
            swap[out.rank] = Jet::variable(ring, i0);
            apply_step(out, swap);
        }
        out.char2_type = 'a';
    } else {
        out.char2_type = 'b';
    }
    out.normalized = true;
    return out;
}

namespace {

// parameter names that do not collide with the base variables
std::vector<std::string> fresh_params(const RingPtr& ring, const char* stem, std::size_t count) {
    std::vector<std::string> out;
    std::size_t next = 1;
    while (out.size() < count) {
        std::string name = stem + std::to_string(next++);
        if (!ring->var_index(name)) out.push_back(name);
    }
    return out;
}

} // namespace

VersalFamily semiuniversal_unfolding(const Jet& f) {
    const RingPtr ring = f.ring();
    const Field& F = ring->field();
    if (!f.is_zero() && !F.is_zero(f.constant_term())) fail(errc::unit_input, "germ must lie in m");

    StandardBasis S = std_basis(jacobian_generators(f));
    QuotientBasis Q = quotient_monomials(S, /*modulo_maximal_ideal=*/true);
    if (!Q.complete) fail(errc::not_isolated, "m/<df> does not saturate below the truncation");

    VersalFamily fam;
    fam.base_ring = ring;
    fam.f = {f};
    fam.deformation = false;
    fam.minimal = true;
    fam.params = fresh_params(ring, "s", Q.monomials.size());
    fam.family_ring = extend_ring(ring, fam.params, ring->trunc() + 1);
    Jet Ff = f.lifted(fam.family_ring);
    for (std::size_t j = 0; j < Q.monomials.size(); ++j) {
        Jet g = Jet::monomial(ring, Q.monomials[j].alpha, F.one());
        fam.cofactors.push_back(JetVec::single(g));
        Exponent sj(fam.family_ring->nvars());
        sj[ring->nvars() + j] = 1;
        Ff += g.lifted(fam.family_ring).mono_mul(sj, F.one());
    }
    fam.family = {Ff};
    return fam;
}

VersalFamily semiuniversal_deformation(const std::vector<Jet>& f_vec) {
    if (f_vec.empty()) fail(errc::bad_input, "empty system");
    const RingPtr ring = f_vec[0].ring();
    const Field& F = ring->field();
    const std::size_t k = f_vec.size();
    const std::size_t n = ring->nvars();
    if (k > n) fail(errc::not_complete_intersection, "more equations than variables");
    for (const Jet& f : f_vec) {
        if (!f.ring()->same(*ring)) fail(errc::variable_mismatch, "components over different rings");
        if (!f.is_zero() && !F.is_zero(f.constant_term())) fail(errc::unit_input, "germ must lie in m");
    }

    // submodule of K{x}^k: Jacobian columns and f_j e_i
    std::vector<JetVec> gens;
    for (std::size_t j = 0; j < n; ++j) {
        JetVec col(ring, k);
        for (std::size_t i = 0; i < k; ++i) col[i] = f_vec[i].derivative(j);
        gens.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            JetVec v(ring, k);
            v[i] = f_vec[j];
            gens.push_back(std::move(v));
        }

    StandardBasis S = std_basis(gens);
    QuotientBasis Q = quotient_monomials(S);
    if (!Q.complete) fail(errc::not_isolated, "T^1 does not saturate below the truncation");

    VersalFamily fam;
    fam.base_ring = ring;
    fam.f = f_vec;
    fam.deformation = true;
    fam.minimal = true;
    const std::size_t tau = Q.monomials.size();
    fam.params = fresh_params(ring, "t", tau);
    fam.family_ring = extend_ring(ring, fam.params, ring->trunc() + 1);
    std::vector<Jet> fm;
    for (const Jet& f : f_vec) fm.push_back(f.lifted(fam.family_ring));
    for (std::size_t j = 0; j < tau; ++j) {
        JetVec g(ring, k);
        g[Q.monomials[j].unit] = Jet::monomial(ring, Q.monomials[j].alpha, F.one());
        Exponent tj(fam.family_ring->nvars());
        tj[n + j] = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (!g[i].is_zero()) fm[i] += g[i].lifted(fam.family_ring).mono_mul(tj, F.one());
        fam.cofactors.push_back(std::move(g));
    }
    fam.family = std::move(fm);
    return fam;
}

} // namespace germ
