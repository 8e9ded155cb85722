#include "germ/cartan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "germ/linalg.hpp"

namespace germ {

namespace {

// common s-degree of a homogeneous-in-s right-hand side; 0 for C = 0
Nat s_degree_of(const JetVec& C, std::size_t nx) {
    std::optional<Nat> e;
    for (std::size_t k = 0; k < C.size(); ++k)
        for (const auto& [a, c] : C[k].terms()) {
            Nat d = 0;
            for (std::size_t i = nx; i < a.size(); ++i) d += a[i];
            if (!e) e = d;
            else if (*e != d) fail(errc::bad_input, "right-hand side not homogeneous in s");
        }
    return e.value_or(0);
}

Jet into_xs(const Jet& f_s, const RingPtr& xs, std::size_t nx) {
    std::vector<Jet> images;
    for (std::size_t k = 0; k < f_s.ring()->nvars(); ++k)
        images.push_back(Jet::variable(xs, nx + k));
    return f_s.substituted(xs, images);
}

} // namespace

CartanSolution cartan_solve_r0(const std::vector<JetVec>& b, const JetVec& C,
                               const RingPtr& x_ring, const RingPtr& s_ring,
                               const RadiusVector& rho, const RadiusVector& tau) {
    const RingPtr xs = C.ring();
    const std::size_t nx = x_ring->nvars();
    const Field& F = xs->field();
    const std::size_t t = b.size();
    const std::size_t N = C.size();
    for (const JetVec& bj : b)
        if (bj.size() != N || !bj.ring()->same(*x_ring))
            fail(errc::variable_mismatch, "b shape mismatch");

    CartanSolution sol;
    sol.degree_e = s_degree_of(C, nx);
    sol.rho_used = rho;
    sol.norm_C = C.norm(rho.concat(tau));

    // rows b^{(alpha,k)} in decreasing module order
    struct Row {
        ModuleMonomial mm;
        std::vector<Scalar> v;
    };
    std::vector<Row> rows;
    {
        std::map<std::pair<std::vector<Nat>, Nat>, std::vector<Scalar>> seen;
        for (std::size_t j = 0; j < t; ++j)
            for (std::size_t k = 0; k < N; ++k)
                for (const auto& [a, c] : b[j][k].terms()) {
                    auto key = std::make_pair(a.e, static_cast<Nat>(k));
                    auto it = seen.find(key);
                    if (it == seen.end())
                        it = seen.emplace(key, std::vector<Scalar>(t, F.zero())).first;
                    it->second[j] = c;
                }
        for (auto& [key, v] : seen)
            rows.push_back(Row{ModuleMonomial{Exponent(key.first), key.second}, std::move(v)});
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return module_cmp(a.mm, b.mm) > 0; });
    }

    // greedy independent subset of rows, deglex scan order
    std::vector<std::size_t> sel;
    {
        std::vector<std::vector<Scalar>> reduced; // row echelon images of selected rows
        std::vector<std::size_t> lead_col;
        for (std::size_t ridx = 0; ridx < rows.size(); ++ridx) {
            std::vector<Scalar> v = rows[ridx].v;
            for (std::size_t s = 0; s < reduced.size(); ++s) {
                const Scalar& piv = reduced[s][lead_col[s]];
                if (F.is_zero(v[lead_col[s]])) continue;
                Scalar factor = F.div(v[lead_col[s]], piv);
                for (std::size_t c = 0; c < t; ++c)
                    v[c] = F.sub(v[c], F.mul(factor, reduced[s][c]));
            }
            std::size_t lc = t;
            for (std::size_t c = 0; c < t; ++c)
                if (!F.is_zero(v[c])) { lc = c; break; }
            if (lc == t) continue;
            sel.push_back(ridx);
            reduced.push_back(std::move(v));
            lead_col.push_back(lc);
        }
    }
    const std::size_t d = sel.size();
    // the finite row set stands in for the full span: the rank must not
    // still be growing at the truncation boundary
    for (std::size_t s : sel)
        if (rows[s].mm.alpha.degree() >= x_ring->trunc())
            fail(errc::truncation_too_small, "row space rank not stabilized below truncation");

    if (d == 0) {
        if (!C.is_zero()) {
            bool all_b_zero = true;
            for (const JetVec& bj : b) all_b_zero = all_b_zero && bj.is_zero();
            if (all_b_zero) fail(errc::rank_deficient_input, "all b vanish but C != 0");
            fail(errc::inconsistent, "no row support for the right-hand side");
        }
        sol.y.assign(t, Jet::zero(s_ring));
        sol.L_core = Rat(0);
        sol.L = Rat(0);
        for (std::size_t j = 0; j < t; ++j) sol.norm_y.push_back(Rat(0));
        sol.bounds_verified = true;
        return sol;
    }

    // d columns with nonzero minor, greedy in b order
    std::vector<std::size_t> cols;
    {
        Matrix probe(F, d, 0);
        (void)probe;
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < t && cand.size() < d; ++i) {
            cand.push_back(i);
            Matrix m(F, d, cand.size());
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t c = 0; c < cand.size(); ++c)
                    m.at(j, c) = rows[sel[j]].v[cand[c]];
            if (m.rank() < cand.size()) cand.pop_back();
        }
        if (cand.size() < d) fail(errc::internal, "column selection failed");
        cols = std::move(cand);
    }

    Matrix A(F, d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) A.at(j, i) = rows[sel[j]].v[cols[i]];
    const Scalar M = A.det();
    if (F.is_zero(M)) fail(errc::internal, "selected minor vanished");

    // L_core = max |minor_{j,i}| / (rho^{alpha_j} |M|)
    const Rat absM = F.valuation(M);
    Rat Lcore(0);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            Rat minor = F.valuation(A.without_row_col(j, i).det());
            Rat cand = minor / (rho.pow(rows[sel[j]].mm.alpha) * absM);
            cand.canonicalize();
            if (cand > Lcore) Lcore = cand;
        }
    sol.L_core = Lcore;
    sol.L = 2 * Lcore;
    sol.L.canonicalize();

    // per s-monomial Cramer solve on the selected square system
    std::vector<Jet> y(t, Jet::zero(s_ring));
    {
        // collect the s-monomials present in C on selected rows, and solve
        std::set<std::vector<Nat>> betas;
        for (std::size_t k = 0; k < N; ++k)
            for (const auto& [a, c] : C[k].terms()) {
                std::vector<Nat> beta(a.size() - nx);
                for (std::size_t i = nx; i < a.size(); ++i) beta[i - nx] = a[i];
                betas.insert(std::move(beta));
            }
        for (const auto& beta : betas) {
            std::vector<Scalar> rhs(d, F.zero());
            for (std::size_t j = 0; j < d; ++j) {
                Exponent full(xs->nvars());
                for (std::size_t i = 0; i < nx; ++i) full[i] = rows[sel[j]].mm.alpha[i];
                for (std::size_t i = 0; i < beta.size(); ++i) full[nx + i] = beta[i];
                rhs[j] = C[rows[sel[j]].mm.unit].coeff(full);
            }
            for (std::size_t i = 0; i < d; ++i) {
                Matrix Ai = A;
                for (std::size_t j = 0; j < d; ++j) Ai.at(j, i) = rhs[j];
                Scalar yi = F.div(Ai.det(), M);
                if (!F.is_zero(yi)) y[cols[i]].add_term(Exponent(std::vector<Nat>(beta)), yi);
            }
        }
    }

    // exact consistency check of the full (not only selected) system
    {
        JetVec recon(xs, N);
        for (std::size_t j = 0; j < t; ++j) {
            if (y[j].is_zero()) continue;
            Jet yx = into_xs(y[j], xs, nx);
            for (std::size_t k = 0; k < N; ++k) recon[k] += b[j][k].lifted(xs) * yx;
        }
        if (!(recon == C)) fail(errc::inconsistent, "linear system has no solution in K[s]");
    }

    sol.y = std::move(y);
    bool ok = true;
    for (std::size_t j = 0; j < t; ++j) {
        Rat ny = sol.y[j].norm(tau);
        sol.norm_y.push_back(ny);
        Rat bound = sol.L * sol.norm_C;
        bound.canonicalize();
        ok = ok && ny <= bound;
    }
    bool inputs_exact = C.exact();
    for (const JetVec& bj : b) inputs_exact = inputs_exact && bj.exact();
    sol.bounds_verified = ok && inputs_exact;
    return sol;
}

CartanSolution cartan_solve(const CartanProblem& problem) {
    if (problem.witness) {
        const auto& [wz, wy] = *problem.witness;
        if (wz.size() != problem.a.size() || wy.size() != problem.b.size())
            fail(errc::bad_input, "witness arity mismatch");
        const RingPtr xs = problem.C.ring();
        JetVec recon(xs, problem.C.size());
        for (std::size_t i = 0; i < wz.size(); ++i)
            for (std::size_t k = 0; k < recon.size(); ++k)
                recon[k] += problem.a[i][k].lifted(xs) * wz[i];
        for (std::size_t j = 0; j < wy.size(); ++j) {
            std::vector<Jet> images;
            for (std::size_t v = 0; v < problem.s_ring->nvars(); ++v)
                images.push_back(Jet::variable(xs, problem.x_ring->nvars() + v));
            Jet yx = wy[j].substituted(xs, images);
            for (std::size_t k = 0; k < recon.size(); ++k)
                recon[k] += problem.b[j][k].lifted(xs) * yx;
        }
        if (!(recon == problem.C)) fail(errc::bad_input, "supplied witness does not solve the system");
    }
    if (problem.a.empty())
        return cartan_solve_r0(problem.b, problem.C, problem.x_ring, problem.s_ring,
                               problem.rho, problem.tau);

    const RingPtr xs = problem.C.ring();
    const RingPtr xr = problem.x_ring;
    const std::size_t nx = xr->nvars();
    const std::size_t N = problem.C.size();
    const std::size_t r = problem.a.size();
    const std::size_t t = problem.b.size();

    StandardBasis V = std_basis(problem.a);
    if (V.elements().empty()) fail(errc::zero_divisor, "a generates the zero module");

    // shrink rho so the epsilon = 1/2 division certificates apply
    RadiusVector rho = problem.rho;
    bool transcripts_exact = true;
    for (const BasisElement& e : V.elements()) {
        transcripts_exact = transcripts_exact && e.g.exact();
        for (const Jet& h : e.cofactors) transcripts_exact = transcripts_exact && h.exact();
    }
    bool shrunk = false;
    if (transcripts_exact) {
        try {
            rho = shrink_radius(V.generator_list(), Rat(1, 2), problem.rho);
            shrunk = true;
        } catch (const error&) {
            shrunk = false;
        }
    }

    // division data over the x-ring for b_j, over the (x,s)-ring for C
    std::vector<SourceLift> blift;
    std::vector<JetVec> nfb;
    for (std::size_t j = 0; j < t; ++j) {
        SourceLift lj = lift_over_sources(problem.b[j], V);
        nfb.push_back(lj.remainder);
        blift.push_back(std::move(lj));
    }
    std::vector<JetVec> v_lifted;
    for (const BasisElement& e : V.elements()) {
        JetVec g(xs, N);
        for (std::size_t k = 0; k < N; ++k) g[k] = e.g[k].lifted(xs);
        v_lifted.push_back(std::move(g));
    }
    DivisionResult cdiv = divide(problem.C, v_lifted);
    JetVec nfC = cdiv.remainder;

    CartanSolution core =
        cartan_solve_r0(nfb, nfC, problem.x_ring, problem.s_ring, rho, problem.tau);

    // alpha_{ij} = sum_nu b_{j nu} h_{nu i},  beta_i = sum_nu h_{nu i} C_nu
    std::vector<Jet> beta(r, Jet::zero(xs));
    for (std::size_t nu = 0; nu < V.elements().size(); ++nu) {
        if (cdiv.quotients[nu].is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i)
            beta[i] += V.elements()[nu].cofactors[i].lifted(xs) * cdiv.quotients[nu];
    }

    CartanSolution sol;
    sol.degree_e = s_degree_of(problem.C, nx);
    sol.rho_used = rho;
    sol.norm_C = problem.C.norm(rho.concat(problem.tau));
    sol.y = core.y;
    sol.L_core = core.L_core;

    sol.z.assign(r, Jet::zero(xs));
    for (std::size_t i = 0; i < r; ++i) {
        Jet zi = beta[i];
        for (std::size_t j = 0; j < t; ++j) {
            if (core.y[j].is_zero() || blift[j].coeff_per_source[i].is_zero()) continue;
            Jet yx = into_xs(core.y[j], xs, nx);
            zi -= blift[j].coeff_per_source[i].lifted(xs) * yx;
        }
        sol.z[i] = std::move(zi);
    }

    // exact identity check
    {
        JetVec recon(xs, N);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < N; ++k)
                recon[k] += problem.a[i][k].lifted(xs) * sol.z[i];
        for (std::size_t j = 0; j < t; ++j) {
            if (sol.y[j].is_zero()) continue;
            Jet yx = into_xs(sol.y[j], xs, nx);
            for (std::size_t k = 0; k < N; ++k) recon[k] += problem.b[j][k].lifted(xs) * yx;
        }
        if (!(recon == problem.C)) fail(errc::inconsistent, "no bounded solution reproduces C");
    }

    // constant assembly along the proof: L_T, then L' and the final max
    const Rat L0 = core.L;
    Rat LT(0);
    for (std::size_t nu = 0; nu < V.elements().size(); ++nu) {
        const ModuleMonomial lm = leading_monomial(V.elements()[nu].g);
        for (std::size_t i = 0; i < r; ++i) {
            Rat cand = V.elements()[nu].cofactors[i].norm(rho) / rho.pow(lm.alpha);
            cand.canonicalize();
            if (cand > LT) LT = cand;
        }
    }
    LT *= 2 * static_cast<unsigned long>(V.elements().size());
    LT.canonicalize();
    Rat Lp(0);
    for (std::size_t j = 0; j < t; ++j) {
        Rat cand = LT * (2 * L0 * problem.b[j].norm(rho) + 1);
        cand.canonicalize();
        if (cand > Lp) Lp = cand;
    }
    sol.L = std::max(Rat(2 * L0), Lp);
    sol.L.canonicalize();

    bool ok = true;
    Rat bound = sol.L * sol.norm_C;
    bound.canonicalize();
    RadiusVector rt = rho.concat(problem.tau);
    for (std::size_t j = 0; j < t; ++j) {
        Rat ny = sol.y[j].norm(problem.tau);
        sol.norm_y.push_back(ny);
        ok = ok && ny <= bound;
    }
    for (std::size_t i = 0; i < r; ++i) {
        Rat nz = sol.z[i].norm(rt);
        sol.norm_z.push_back(nz);
        ok = ok && nz <= bound;
    }
    bool inputs_exact = problem.C.exact() && transcripts_exact && shrunk;
    for (const JetVec& v : problem.a) inputs_exact = inputs_exact && v.exact();
    for (const JetVec& v : problem.b) inputs_exact = inputs_exact && v.exact();
    sol.bounds_verified = ok && inputs_exact;
    return sol;
}

} // namespace germ
