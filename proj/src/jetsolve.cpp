#include "germ/jetsolve.hpp"

#include <algorithm>
#include <map>

#include "germ/linalg.hpp"

namespace germ {

namespace {

Jet embed_offset(const Jet& f, const RingPtr& target, std::size_t offset) {
    std::vector<Jet> images;
    for (std::size_t k = 0; k < f.ring()->nvars(); ++k)
        images.push_back(Jet::variable(target, offset + k));
    return f.substituted(target, images);
}

Nat param_order(const Jet& f, std::size_t first_var) {
    // min degree in the trailing block; trunc+1 for zero
    Nat best = f.ring()->trunc() + 1;
    for (const auto& [a, c] : f.terms()) {
        Nat d = 0;
        for (std::size_t i = first_var; i < a.size(); ++i) d += a[i];
        best = std::min(best, d);
    }
    return best;
}

// normal form w.r.t. an ideal in the trailing-variable ring, applied
// coefficientwise over the leading block
Jet nf_in_params(const Jet& f, const StandardBasis& I, std::size_t nx, const RingPtr& s_ring) {
    if (I.elements().empty()) return f;
    const RingPtr ring = f.ring();
    std::map<std::vector<Nat>, Jet> groups;
    for (const auto& [a, c] : f.terms()) {
        std::vector<Nat> head(a.e.begin(), a.e.begin() + nx);
        Exponent sp(std::vector<Nat>(a.e.begin() + nx, a.e.end()));
        auto it = groups.find(head);
        if (it == groups.end()) it = groups.emplace(head, Jet::zero(s_ring)).first;
        it->second.add_term(sp, c);
    }
    Jet out = Jet::zero(ring);
    for (auto& [head, part] : groups) {
        Jet red = nf_ideal(part, I);
        if (red.is_zero()) continue;
        out += embed_offset(red, ring, nx).mono_mul([&] {
            Exponent h(ring->nvars());
            for (std::size_t i = 0; i < nx; ++i) h[i] = head[i];
            return h;
        }(), ring->field().one());
    }
    if (!f.exact()) out.mark_inexact();
    return out;
}

} // namespace

NestedProblem make_nested_problem(const Field& field, std::size_t nx, std::size_t ns,
                                  std::size_t p, std::size_t q, Nat trunc,
                                  const std::vector<std::string>& names) {
    NestedProblem prob;
    prob.nx = nx;
    prob.ns = ns;
    prob.p = p;
    prob.q = q;
    std::vector<std::string> vars;
    if (names.empty()) {
        for (std::size_t i = 0; i < nx; ++i) vars.push_back("x" + std::to_string(i + 1));
        for (std::size_t i = 0; i < ns; ++i) vars.push_back("s" + std::to_string(i + 1));
        for (std::size_t i = 0; i < p; ++i) vars.push_back("Y" + std::to_string(i + 1));
        for (std::size_t i = 0; i < q; ++i) vars.push_back("Z" + std::to_string(i + 1));
    } else {
        if (names.size() != nx + ns + p + q) fail(errc::bad_input, "variable name count");
        vars = names;
    }
    prob.full_ring = make_ring(field, vars, trunc);
    prob.x_ring = make_ring(field, {vars.begin(), vars.begin() + nx}, trunc);
    prob.s_ring = make_ring(field, {vars.begin() + nx, vars.begin() + nx + ns}, trunc);
    prob.xs_ring = make_ring(field, {vars.begin(), vars.begin() + nx + ns}, trunc);
    return prob;
}

std::vector<Jet> nested_residual(const NestedProblem& prob, const NestedState& state) {
    if (state.y.size() != prob.p || state.z.size() != prob.q)
        fail(errc::bad_input, "state block sizes");
    std::vector<Jet> images;
    for (std::size_t i = 0; i < prob.nx + prob.ns; ++i)
        images.push_back(Jet::variable(prob.xs_ring, i));
    for (const Jet& y : state.y) images.push_back(embed_offset(y, prob.xs_ring, prob.nx));
    for (const Jet& z : state.z) images.push_back(z);
    std::vector<Jet> out;
    for (const Jet& Fc : prob.F) {
        Jet g = Fc.substituted(prob.xs_ring, images);
        if (prob.ideal_in_s)
            g = nf_in_params(g, *prob.ideal_in_s, prob.nx, prob.s_ring);
        out.push_back(std::move(g));
    }
    return out;
}

ExtensionOracle cartan_oracle(const RadiusVector& rho, const RadiusVector& tau) {
    return [rho, tau](const std::vector<Jet>& F_e, const NestedProblem& prob,
                      Nat /*degree*/) -> std::optional<std::pair<std::vector<Jet>, std::vector<Jet>>> {
        // linearization data at s = 0, Y = 0, Z = 0
        Exponent zero_tail(prob.ns + prob.p + prob.q);
        auto at_origin = [&](const Jet& g) {
            return g.block_coefficient(prob.nx, zero_tail, prob.x_ring);
        };
        CartanProblem cp;
        for (std::size_t i = 0; i < prob.q; ++i) {
            std::vector<Jet> comps;
            for (const Jet& Fc : prob.F)
                comps.push_back(at_origin(Fc.derivative(prob.nx + prob.ns + prob.p + i)));
            cp.a.push_back(JetVec(std::move(comps)));
        }
        for (std::size_t j = 0; j < prob.p; ++j) {
            std::vector<Jet> comps;
            for (const Jet& Fc : prob.F)
                comps.push_back(at_origin(Fc.derivative(prob.nx + prob.ns + j)));
            cp.b.push_back(JetVec(std::move(comps)));
        }
        std::vector<Jet> negFe;
        for (const Jet& r : F_e) negFe.push_back(r.negated());
        cp.C = JetVec(std::move(negFe));
        cp.x_ring = prob.x_ring;
        cp.s_ring = prob.s_ring;
        cp.rho = rho;
        cp.tau = tau;
        try {
            CartanSolution sol = cartan_solve(cp);
            return std::make_pair(sol.y, sol.z);
        } catch (const error& e) {
            if (e.code == errc::inconsistent || e.code == errc::rank_deficient_input)
                return std::nullopt;
            throw;
        }
    };
}

NestedState extend_order(const NestedProblem& prob, const NestedState& state,
                         const ExtensionOracle& oracle, ExtensionTrace* trace) {
    const Nat e = state.degree_e;
    std::vector<Jet> G = nested_residual(prob, state);
    for (const Jet& g : G)
        if (param_order(g, prob.nx) <= e)
            fail(errc::not_a_solution, "state is not a solution of its order");

    std::vector<Jet> F_e;
    bool zero = true;
    for (const Jet& g : G) {
        Jet part = g.part_of_subdegree(prob.nx, e + 1);
        zero = zero && part.is_zero();
        F_e.push_back(std::move(part));
    }

    NestedState next = state;
    next.degree_e = e + 1;
    std::vector<Jet> u(prob.p, Jet::zero(prob.s_ring));
    std::vector<Jet> v(prob.q, Jet::zero(prob.xs_ring));
    if (!zero) {
        auto sol = oracle(F_e, prob, e + 1);
        if (!sol) fail(errc::oracle_failure, "linearized system inconsistent at degree " + std::to_string(e + 1));
        u = std::move(sol->first);
        v = std::move(sol->second);
        if (prob.ideal_in_s) {
            for (Jet& ui : u) ui = nf_ideal(ui, *prob.ideal_in_s);
            for (Jet& vi : v) vi = nf_in_params(vi, *prob.ideal_in_s, prob.nx, prob.s_ring);
        }
        for (std::size_t i = 0; i < prob.p; ++i) next.y[i] += u[i];
        for (std::size_t i = 0; i < prob.q; ++i) next.z[i] += v[i];
        std::vector<Jet> G2 = nested_residual(prob, next);
        for (const Jet& g : G2)
            if (param_order(g, prob.nx) <= e + 1)
                fail(errc::oracle_failure, "correction did not raise the order");
    }
    if (trace) trace->steps.push_back(ExtensionStep{e + 1, std::move(F_e), u, v});
    return next;
}

RightEquivResult jet_right_equiv(const Jet& f, const Jet& g) {
    const RingPtr ring = f.ring();
    if (!g.ring()->same(*ring)) fail(errc::variable_mismatch, "f and g over different rings");
    if (f.is_zero() || *f.order() < 2 || (!g.is_zero() && *g.order() < 2))
        fail(errc::order_too_low, "right equivalence needs germs in m^2");

    DeterminacyBound det;
    try {
        det = determinacy_bound(f, DeterminacyMode::right);
    } catch (const error& e) {
        if (e.code == errc::not_detectable)
            fail(errc::hypothesis_failure, "no determinacy bound detected for f");
        throw;
    }
    const Nat bound = det.bound_main;
    const Nat k = det.k;

    Jet diff = f - g;
    if (!diff.is_zero() && *diff.order() < bound + 1)
        fail(errc::hypothesis_failure,
             "f - g must lie in m^{N+1} with N >= " + std::to_string(bound));

    StandardBasis SJ = std_basis(jacobian_generators(f));

    RightEquivResult out;
    for (std::size_t i = 0; i < ring->nvars(); ++i) out.phi.push_back(Jet::variable(ring, i));

    unsigned guard = 0;
    while (true) {
        Jet R = f.substituted(ring, out.phi) - g;
        if (R.is_zero()) break;
        const Nat o = *R.order();
        SourceLift lift = lift_over_sources(JetVec::single(R), SJ);
        if (!lift.remainder.is_zero())
            fail(errc::hypothesis_failure, "residual does not lie in the Jacobian ideal");
        // b_i must gain order e - k + 1 = o - k; this is where the
        // determinacy hypothesis bites
        std::vector<Jet> b = std::move(lift.coeff_per_source);
        for (const Jet& bi : b)
            if (!bi.is_zero() && *bi.order() + k < o)
                fail(errc::hypothesis_failure, "lift coefficient order too low at degree " +
                                                   std::to_string(o));
        ExtensionStep step;
        step.degree = o;
        step.residual = {R};
        for (std::size_t i = 0; i < b.size(); ++i) {
            out.phi[i] -= b[i];
            step.v.push_back(b[i].negated());
        }
        out.trace.steps.push_back(std::move(step));
        Jet R2 = f.substituted(ring, out.phi) - g;
        if (!R2.is_zero() && *R2.order() <= o)
            fail(errc::hypothesis_failure, "Taylor step did not raise the residual order");
        if (++guard > ring->trunc() + 2) fail(errc::internal, "equivalence loop failed to terminate");
    }
    // the transcript must be a coordinate change with identity linear part
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
        Jet lin = out.phi[i].homogeneous_part(1);
        if (!(lin == Jet::variable(ring, i)))
            fail(errc::internal, "transform lost its identity linear part");
    }
    return out;
}

namespace {

// remainder of a division against the Jacobian basis must sit on the chosen
// quotient monomials; read off their coefficients
std::map<std::vector<Nat>, std::size_t> cofactor_index(const VersalFamily& fam) {
    std::map<std::vector<Nat>, std::size_t> idx;
    for (std::size_t j = 0; j < fam.cofactors.size(); ++j) {
        const JetVec& g = fam.cofactors[j];
        for (std::size_t c = 0; c < g.size(); ++c)
            for (const auto& [a, coeff] : g[c].terms()) {
                std::vector<Nat> key = a.e;
                key.push_back(static_cast<Nat>(c));
                idx.emplace(std::move(key), j);
            }
    }
    return idx;
}

} // namespace

InducedUnfolding induce_unfolding(const VersalFamily& fam, const Jet& G) {
    if (fam.deformation) fail(errc::bad_input, "family is a deformation, not an unfolding");
    const RingPtr xt = G.ring();
    const RingPtr base = fam.base_ring;
    const std::size_t n = base->nvars();
    const Field& F = xt->field();
    if (xt->nvars() < n) fail(errc::not_an_unfolding, "G must use the declared x-variables plus parameters");
    for (std::size_t i = 0; i < n; ++i)
        if (xt->var(i) != base->var(i))
            fail(errc::not_an_unfolding, "G must use the declared x-variables plus parameters");
    const std::size_t nt = xt->nvars() - n;
    const Nat D = xt->trunc();

    RingPtr xr = make_ring(F, base->vars(), D);
    RingPtr tr = make_ring(F, {xt->vars().begin() + n, xt->vars().end()}, D);

    Jet f = fam.f[0].lifted(xr);
    {
        Jet g0 = G.block_coefficient(n, Exponent(nt), xr);
        if (!(g0 == f)) fail(errc::not_an_unfolding, "G(x,0) differs from f");
    }

    StandardBasis SJ = std_basis(jacobian_generators(f));
    auto cof_idx = cofactor_index(fam);

    InducedUnfolding out;
    out.alpha = Jet::zero(tr);
    for (std::size_t j = 0; j < fam.params.size(); ++j) out.phi.push_back(Jet::zero(tr));
    for (std::size_t i = 0; i < n; ++i) out.Phi.push_back(Jet::variable(xt, i));
    std::vector<Jet> xt_images;
    for (std::size_t i = 0; i < xt->nvars(); ++i) xt_images.push_back(Jet::variable(xt, i));

    std::vector<Jet> g_lift;
    for (const JetVec& g : fam.cofactors) g_lift.push_back(g[0].lifted(xr).lifted(xt));

    for (Nat e = 0; e + 1 <= D; ++e) {
        for (std::size_t i = 0; i < n; ++i) xt_images[i] = out.Phi[i];
        Jet lhs = G.substituted(xt, xt_images);
        Jet rhs = f.lifted(xt) + embed_offset(out.alpha, xt, n);
        for (std::size_t j = 0; j < fam.params.size(); ++j)
            rhs += g_lift[j] * embed_offset(out.phi[j], xt, n);
        Jet R = lhs - rhs;
        if (R.is_zero()) break;

        Jet part = R.part_of_subdegree(n, e + 1);
        if (part.is_zero()) continue;

        std::vector<Jet> corr_Phi(n, Jet::zero(xt));
        for (const ModuleMonomial& nu_mm : module_monomials_of_degree(nt, 1, e + 1)) {
            const Exponent& nu = nu_mm.alpha;
            Jet h = part.block_coefficient(n, nu, xr);
            if (h.is_zero()) continue;
            Exponent nu_full(xt->nvars());
            for (std::size_t i = 0; i < nt; ++i) nu_full[n + i] = nu[i];
            Exponent nu_t(nt);
            for (std::size_t i = 0; i < nt; ++i) nu_t[i] = nu[i];

            SourceLift lift = lift_over_sources(JetVec::single(h), SJ);
            // remainder lives on {1} and the cofactor monomials
            for (const auto& [a, c] : lift.remainder[0].terms()) {
                if (a.degree() == 0) {
                    out.alpha.add_term(nu_t, c);
                    continue;
                }
                std::vector<Nat> key = a.e;
                key.push_back(0);
                auto it = cof_idx.find(key);
                if (it == cof_idx.end())
                    fail(errc::lift_failure, "residual leaves the span of the unfolding cofactors");
                out.phi[it->second].add_term(nu_t, c);
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (lift.coeff_per_source[i].is_zero()) continue;
                corr_Phi[i] += lift.coeff_per_source[i].lifted(xt).mono_mul(nu_full, F.one());
            }
        }
        ExtensionStep step;
        step.degree = e + 1;
        step.residual = {part};
        step.u = {out.alpha.part_of_subdegree(0, e + 1)};
        for (std::size_t j = 0; j < fam.params.size(); ++j)
            step.u.push_back(out.phi[j].part_of_subdegree(0, e + 1));
        for (std::size_t i = 0; i < n; ++i) {
            out.Phi[i] -= corr_Phi[i];
            step.v.push_back(corr_Phi[i].negated());
        }
        out.trace.steps.push_back(std::move(step));
    }
    return out;
}

namespace {

std::vector<std::vector<Jet>> jet_matrix_inverse(const std::vector<std::vector<Jet>>& M,
                                                 const RingPtr& ring) {
    const std::size_t k = M.size();
    const Field& F = ring->field();
    std::vector<std::vector<Jet>> a = M;
    std::vector<std::vector<Jet>> inv(k, std::vector<Jet>(k, Jet::zero(ring)));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = Jet::constant(ring, F.one());
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = k;
        for (std::size_t r = col; r < k; ++r)
            if (!a[r][col].is_zero() && !F.is_zero(a[r][col].constant_term())) { piv = r; break; }
        if (piv == k) fail(errc::not_a_deformation, "matrix not invertible at the origin");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Jet pinv = reciprocal(a[col][col]);
        for (std::size_t c = 0; c < k; ++c) {
            a[col][c] = a[col][c] * pinv;
            inv[col][c] = inv[col][c] * pinv;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Jet factor = a[r][col];
            for (std::size_t c = 0; c < k; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

} // namespace

InducedDeformation induce_deformation(const VersalFamily& fam, const std::vector<Jet>& G) {
    if (!fam.deformation) fail(errc::bad_input, "family is an unfolding, not a deformation");
    if (G.empty()) fail(errc::bad_input, "empty system");
    const RingPtr xs = G[0].ring();
    const RingPtr base = fam.base_ring;
    const std::size_t n = base->nvars();
    const std::size_t k = fam.f.size();
    const Field& F = xs->field();
    if (G.size() != k) fail(errc::not_a_deformation, "component count differs from the special fiber");
    if (xs->nvars() < n) fail(errc::not_a_deformation, "G must use the declared x-variables plus parameters");
    for (std::size_t i = 0; i < n; ++i)
        if (xs->var(i) != base->var(i))
            fail(errc::not_a_deformation, "G must use the declared x-variables plus parameters");
    const std::size_t ns = xs->nvars() - n;
    const Nat D = xs->trunc();

    RingPtr xr = make_ring(F, base->vars(), D);
    RingPtr sr = make_ring(F, {xs->vars().begin() + n, xs->vars().end()}, D);

    std::vector<Jet> f;
    for (const Jet& fi : fam.f) f.push_back(fi.lifted(xr));

    // ordered lift sources: f_j e_i first (so unit factors land in M), then
    // the Jacobian columns
    std::vector<JetVec> sources;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            JetVec v(xr, k);
            v[i] = f[j];
            sources.push_back(std::move(v));
        }
    for (std::size_t j = 0; j < n; ++j) {
        JetVec col(xr, k);
        for (std::size_t i = 0; i < k; ++i) col[i] = f[i].derivative(j);
        sources.push_back(std::move(col));
    }
    StandardBasis V = std_basis(sources);
    auto cof_idx = cofactor_index(fam);

    // normalize G(x,0) = M0 f to the identity
    std::vector<Jet> Gw = G;
    std::vector<std::vector<Jet>> M0(k, std::vector<Jet>(k, Jet::zero(xs)));
    {
        std::vector<Jet> comps;
        for (const Jet& gi : Gw) comps.push_back(gi.block_coefficient(n, Exponent(ns), xr));
        JetVec G0(std::move(comps));
        bool is_f = true;
        for (std::size_t i = 0; i < k; ++i) is_f = is_f && G0[i] == f[i];
        if (is_f) {
            for (std::size_t i = 0; i < k; ++i) M0[i][i] = Jet::constant(xs, F.one());
        } else {
            std::vector<JetVec> funits(sources.begin(), sources.begin() + k * k);
            DivisionResult dr = divide(G0, funits);
            if (!dr.remainder.is_zero())
                fail(errc::not_a_deformation, "G(x,0) is not a unit multiple of f");
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) M0[i][j] = dr.quotients[i * k + j].lifted(xs);
            // invertibility at the origin, then pass to M0^{-1} G
            Matrix m0(F, k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m0.at(i, j) = M0[i][j].constant_term();
            if (F.is_zero(m0.det())) fail(errc::not_a_deformation, "unit matrix singular at the origin");
            auto M0inv = jet_matrix_inverse(M0, xs);
            std::vector<Jet> Gt(k, Jet::zero(xs));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) Gt[i] += M0inv[i][j] * Gw[j];
            Gw = std::move(Gt);
        }
    }

    InducedDeformation out;
    for (std::size_t j = 0; j < fam.params.size(); ++j) out.phi.push_back(Jet::zero(sr));
    for (std::size_t i = 0; i < n; ++i) out.Phi.push_back(Jet::variable(xs, i));
    std::vector<std::vector<Jet>> M(k, std::vector<Jet>(k, Jet::zero(xs)));
    for (std::size_t i = 0; i < k; ++i) M[i][i] = Jet::constant(xs, F.one());

    std::vector<JetVec> g_base = fam.cofactors;
    std::vector<Jet> xs_images;
    for (std::size_t i = 0; i < xs->nvars(); ++i) xs_images.push_back(Jet::variable(xs, i));

    for (Nat e = 0; e + 1 <= D; ++e) {
        for (std::size_t i = 0; i < n; ++i) xs_images[i] = out.Phi[i];
        // F(x, phi(s)) then M * F
        std::vector<Jet> Fphi;
        for (std::size_t i = 0; i < k; ++i) {
            Jet v = f[i].lifted(xs);
            for (std::size_t j = 0; j < fam.params.size(); ++j) {
                if (g_base[j][i].is_zero() || out.phi[j].is_zero()) continue;
                v += g_base[j][i].lifted(xr).lifted(xs) * embed_offset(out.phi[j], xs, n);
            }
            Fphi.push_back(std::move(v));
        }
        bool zero = true;
        std::vector<Jet> R(k, Jet::zero(xs));
        for (std::size_t i = 0; i < k; ++i) {
            Jet mf = Jet::zero(xs);
            for (std::size_t j = 0; j < k; ++j) mf += M[i][j] * Fphi[j];
            R[i] = Gw[i].substituted(xs, xs_images) - mf;
            zero = zero && R[i].is_zero();
        }
        if (zero) break;

        std::vector<Jet> parts;
        bool part_zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            parts.push_back(R[i].part_of_subdegree(n, e + 1));
            part_zero = part_zero && parts.back().is_zero();
        }
        if (part_zero) continue;

        std::vector<Jet> corr_Phi(n, Jet::zero(xs));
        for (const ModuleMonomial& nu_mm : module_monomials_of_degree(ns, 1, e + 1)) {
            const Exponent& nu = nu_mm.alpha;
            std::vector<Jet> comps;
            bool hz = true;
            for (std::size_t i = 0; i < k; ++i) {
                comps.push_back(parts[i].block_coefficient(n, nu, xr));
                hz = hz && comps.back().is_zero();
            }
            if (hz) continue;
            JetVec h(std::move(comps));
            Exponent nu_full(xs->nvars());
            for (std::size_t i = 0; i < ns; ++i) nu_full[n + i] = nu[i];
            Exponent nu_s(ns);
            for (std::size_t i = 0; i < ns; ++i) nu_s[i] = nu[i];

            SourceLift lift = lift_over_sources(h, V);
            for (std::size_t c = 0; c < k; ++c)
                for (const auto& [a, coeff] : lift.remainder[c].terms()) {
                    std::vector<Nat> key = a.e;
                    key.push_back(static_cast<Nat>(c));
                    auto it = cof_idx.find(key);
                    if (it == cof_idx.end())
                        fail(errc::lift_failure, "residual leaves the span of the deformation cofactors");
                    out.phi[it->second].add_term(nu_s, coeff);
                }
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    const Jet& L = lift.coeff_per_source[i * k + j];
                    if (L.is_zero()) continue;
                    M[i][j] += L.lifted(xs).mono_mul(nu_full, F.one());
                }
            for (std::size_t j = 0; j < n; ++j) {
                const Jet& hc = lift.coeff_per_source[k * k + j];
                if (hc.is_zero()) continue;
                corr_Phi[j] += hc.lifted(xs).mono_mul(nu_full, F.one());
            }
        }
        ExtensionStep step;
        step.degree = e + 1;
        step.residual = parts;
        for (std::size_t j = 0; j < fam.params.size(); ++j)
            step.u.push_back(out.phi[j].part_of_subdegree(0, e + 1));
        for (std::size_t j = 0; j < n; ++j) {
            out.Phi[j] -= corr_Phi[j];
            step.v.push_back(corr_Phi[j].negated());
        }
        out.trace.steps.push_back(std::move(step));
    }

    // fold the initial unit back in: G(Phi,s) = M0(Phi) Gt(Phi,s), so the
    // matrix for the original G is M0 composed with Phi times the loop's M
    bool m0_identity = true;
    for (std::size_t i = 0; i < k && m0_identity; ++i)
        for (std::size_t j = 0; j < k && m0_identity; ++j) {
            Jet expect = i == j ? Jet::constant(xs, F.one()) : Jet::zero(xs);
            m0_identity = M0[i][j] == expect;
        }
    if (!m0_identity) {
        std::vector<Jet> phi_images;
        for (std::size_t i = 0; i < n; ++i) phi_images.push_back(out.Phi[i]);
        for (std::size_t i = n; i < xs->nvars(); ++i) phi_images.push_back(Jet::variable(xs, i));
        std::vector<std::vector<Jet>> prod(k, std::vector<Jet>(k, Jet::zero(xs)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    prod[i][j] += M0[i][l].substituted(xs, phi_images) * M[l][j];
        M = std::move(prod);
    }
    out.M = std::move(M);
    return out;
}

NormTraceReport norm_trace(const ExtensionTrace& trace, const RadiusVector& rho,
                           const RadiusVector& tau, const Rat& L) {
    NormTraceReport rep;
    RadiusVector rt = rho.concat(tau);
    auto norm_of = [&](const Jet& f) -> Rat {
        const std::size_t n = f.ring()->nvars();
        if (n == rt.size()) return f.norm(rt);
        if (n == tau.size()) return f.norm(tau);
        if (n == rho.size()) return f.norm(rho);
        fail(errc::bad_input, "trace jets do not match the given radii");
    };

    std::map<const Ring*, Jet> u_sum, v_sum;
    for (const ExtensionStep& step : trace.steps) {
        NormTraceRow row;
        row.degree = step.degree;
        row.residual_norm = Rat(0);
        for (const Jet& r : step.residual) row.residual_norm += norm_of(r);
        row.max_u = Rat(0);
        row.max_v = Rat(0);
        for (const Jet& u : step.u) row.max_u = std::max(row.max_u, norm_of(u));
        for (const Jet& v : step.v) row.max_v = std::max(row.max_v, norm_of(v));
        row.within = row.max_u <= L && row.max_v <= L;
        if (!row.within && !rep.violated_at) rep.violated_at = step.degree;
        rep.all_within = rep.all_within && row.within;
        rep.rows.push_back(row);
    }

    // geometric tail check |sum u|_{tau/2} < 2L on the partial sums
    Rat tail_u(0), tail_v(0);
    std::map<std::pair<const Ring*, std::size_t>, Jet> usums, vsums;
    for (const ExtensionStep& step : trace.steps) {
        for (std::size_t i = 0; i < step.u.size(); ++i) {
            auto key = std::make_pair(step.u[i].ring().get(), i);
            auto it = usums.find(key);
            if (it == usums.end()) usums.emplace(key, step.u[i]);
            else it->second += step.u[i];
        }
        for (std::size_t i = 0; i < step.v.size(); ++i) {
            auto key = std::make_pair(step.v[i].ring().get(), i);
            auto it = vsums.find(key);
            if (it == vsums.end()) vsums.emplace(key, step.v[i]);
            else it->second += step.v[i];
        }
    }
    RadiusVector tau_half = tau.scaled(Rat(1, 2));
    RadiusVector rt_half = rho.concat(tau_half);
    auto half_norm = [&](const Jet& f) -> Rat {
        const std::size_t n = f.ring()->nvars();
        if (n == rt_half.size()) return f.norm(rt_half);
        if (n == tau_half.size()) return f.norm(tau_half);
        if (n == rho.size()) return f.norm(rho.scaled(Rat(1, 2)));
        fail(errc::bad_input, "trace jets do not match the given radii");
    };
    for (const auto& [key, u] : usums) tail_u = std::max(tail_u, half_norm(u));
    for (const auto& [key, v] : vsums) tail_v = std::max(tail_v, half_norm(v));
    rep.tail_u_norm = tail_u;
    rep.tail_v_norm = tail_v;
    Rat two_l = 2 * L;
    rep.tail_within_2L = tail_u < two_l && tail_v < two_l;
    if (L == 0) rep.tail_within_2L = tail_u == 0 && tail_v == 0;
    return rep;
}

} // namespace germ
