#include <doctest.h>

#include "germ/io.hpp"
#include "germ/jetsolve.hpp"
#include "support.hpp"

using namespace germ;

namespace {
RingPtr qring(std::vector<std::string> vars, Nat d) {
    return make_ring(Field::rationals(), std::move(vars), d);
}

Jet embed_params(const Jet& f, const RingPtr& target, std::size_t offset) {
    std::vector<Jet> images;
    for (std::size_t k = 0; k < f.ring()->nvars(); ++k)
        images.push_back(Jet::variable(target, offset + k));
    return f.substituted(target, images);
}

Jet unfold_rhs(const VersalFamily& fam, const InducedUnfolding& ind, const RingPtr& xt) {
    const std::size_t n = fam.base_ring->nvars();
    RingPtr xr = make_ring(xt->field(), fam.base_ring->vars(), xt->trunc());
    Jet rhs = fam.f[0].lifted(xr).lifted(xt) + embed_params(ind.alpha, xt, n);
    for (std::size_t j = 0; j < fam.params.size(); ++j)
        rhs += fam.cofactors[j][0].lifted(xr).lifted(xt) * embed_params(ind.phi[j], xt, n);
    return rhs;
}

Jet unfold_lhs(const Jet& G, const InducedUnfolding& ind) {
    const RingPtr xt = G.ring();
    std::vector<Jet> images;
    for (std::size_t i = 0; i < ind.Phi.size(); ++i) images.push_back(ind.Phi[i]);
    for (std::size_t i = ind.Phi.size(); i < xt->nvars(); ++i) images.push_back(Jet::variable(xt, i));
    return G.substituted(xt, images);
}

} // namespace

TEST_CASE("extend_order on linear model problems") {
    Field Q = Field::rationals();
    SUBCASE("F = Y1 - s1 settles in one step") {
        NestedProblem prob = make_nested_problem(Q, 0, 1, 1, 0, 6);
        prob.F = {parse_jet("Y1 - s1", prob.full_ring)};
        NestedState st;
        st.y = {Jet::zero(prob.s_ring)};
        ExtensionTrace trace;
        auto oracle = cartan_oracle(RadiusVector(std::vector<Rat>{}), RadiusVector::uniform(1, Rat(1, 2)));
        NestedState s1 = extend_order(prob, st, oracle, &trace);
        CHECK(to_string(s1.y[0]) == "s1");
        NestedState s2 = extend_order(prob, s1, oracle, &trace);
        CHECK(s2.y[0] == s1.y[0]);
        for (const Jet& r : nested_residual(prob, s2)) CHECK(r.is_zero());
    }
    SUBCASE("F = Z - s x") {
        NestedProblem prob = make_nested_problem(Q, 1, 1, 0, 1, 6);
        prob.F = {parse_jet("Z1 - s1*x1", prob.full_ring)};
        NestedState st;
        st.z = {Jet::zero(prob.xs_ring)};
        auto oracle = cartan_oracle(RadiusVector::uniform(1, Rat(1, 2)), RadiusVector::uniform(1, Rat(1, 2)));
        NestedState s1 = extend_order(prob, st, oracle);
        CHECK(to_string(s1.z[0]) == "x1*s1");
        for (const Jet& r : nested_residual(prob, s1)) {
            Jet low = r;
            CHECK(r.part_of_subdegree(1, 0).is_zero());
            CHECK(r.part_of_subdegree(1, 1).is_zero());
            (void)low;
        }
    }
    SUBCASE("invalid states are rejected") {
        NestedProblem prob = make_nested_problem(Q, 0, 1, 1, 0, 6);
        prob.F = {parse_jet("Y1 - s1", prob.full_ring)};
        NestedState st;
        st.degree_e = 3; // claims order 3 but the residual has order 1
        st.y = {Jet::zero(prob.s_ring)};
        auto oracle = cartan_oracle(RadiusVector(std::vector<Rat>{}), RadiusVector::uniform(1, Rat(1, 2)));
        CHECK_THROWS_AS(extend_order(prob, st, oracle), error);
    }
    SUBCASE("nesting is preserved: y never sees x") {
        NestedProblem prob = make_nested_problem(Q, 1, 1, 1, 1, 6);
        prob.F = {parse_jet("Y1 + Z1 - s1*x1 - s1", prob.full_ring)};
        NestedState st;
        st.y = {Jet::zero(prob.s_ring)};
        st.z = {Jet::zero(prob.xs_ring)};
        auto oracle = cartan_oracle(RadiusVector::uniform(1, Rat(1, 2)), RadiusVector::uniform(1, Rat(1, 2)));
        NestedState s1 = extend_order(prob, st, oracle);
        for (const auto& [a, c] : s1.y[0].terms()) CHECK(a.size() == 1); // s-ring only
    }
}

TEST_CASE("extend_order reduces modulo an ideal in s") {
    // synthetic I != 0 path: I = <s1^2>, F = Y1 - s1 - s1^2
    Field Q = Field::rationals();
    NestedProblem prob = make_nested_problem(Q, 0, 1, 1, 0, 6);
    prob.F = {parse_jet("Y1 - s1 - s1^2", prob.full_ring)};
    prob.ideal_in_s = std_basis(std::vector<Jet>{parse_jet("s1^2", prob.s_ring)});
    NestedState st;
    st.y = {Jet::zero(prob.s_ring)};
    auto oracle = cartan_oracle(RadiusVector(std::vector<Rat>{}), RadiusVector::uniform(1, Rat(1, 2)));
    NestedState s1 = extend_order(prob, st, oracle);
    CHECK(to_string(s1.y[0]) == "s1");
    // mod I the equation is already satisfied at order 2
    NestedState s2 = extend_order(prob, s1, oracle);
    CHECK(s2.y[0] == s1.y[0]);
}

TEST_CASE("jet_right_equiv") {
    auto R = qring({"x", "y"}, 8);
    Jet f = parse_jet("x^3+y^3", R);
    SUBCASE("identity for g = f") {
        auto r = jet_right_equiv(f, f);
        CHECK(r.phi[0] == Jet::variable(R, 0));
        CHECK(r.phi[1] == Jet::variable(R, 1));
    }
    SUBCASE("perturbation inside m^4") {
        Jet g = parse_jet("x^3+y^3+x^2*y^2", R);
        auto r = jet_right_equiv(f, g);
        CHECK((f.substituted(R, r.phi) - g).is_zero());
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(r.phi[i].homogeneous_part(1) == Jet::variable(R, i));
    }
    SUBCASE("non-isolated germs are rejected") {
        Jet f2 = parse_jet("x^2", R);
        Jet g2 = parse_jet("x^2+y^3", R);
        CHECK_THROWS_AS(jet_right_equiv(f2, g2), error);
    }
    SUBCASE("perturbation below the bound is rejected") {
        Jet g = parse_jet("x^3+y^3+x*y^2", R); // order-3 difference, bound is 3
        CHECK_THROWS_AS(jet_right_equiv(f, g), error);
    }
}

TEST_CASE("determinacy bound is honored dynamically") {
    test::Rng rng(321);
    auto R = qring({"x", "y"}, 8);
    Jet f = parse_jet("x^3+y^3", R);
    DeterminacyBound d = determinacy_bound(f, DeterminacyMode::right);
    REQUIRE(d.bound == 3);
    for (int iter = 0; iter < 10; ++iter) {
        Jet g = f + test::random_jet_min_order(rng, R, d.bound + 1, 8, 5);
        auto r = jet_right_equiv(f, g);
        CHECK((f.substituted(R, r.phi) - g).is_zero());
    }
}

TEST_CASE("jet_right_equiv over a finite field") {
    auto R = make_ring(Field::finite(5), {"x", "y"}, 8);
    Jet f = parse_jet("x^3+y^3", R);
    Jet g = parse_jet("x^3+y^3+2*x^2*y^2", R);
    auto r = jet_right_equiv(f, g);
    CHECK((f.substituted(R, r.phi) - g).is_zero());
}

TEST_CASE("induce_unfolding") {
    auto R = qring({"x"}, 8);
    Jet f = parse_jet("x^3", R);
    VersalFamily fam = semiuniversal_unfolding(f);
    auto xt = qring({"x", "t"}, 12);
    SUBCASE("constant unfolding") {
        Jet G = parse_jet("x^3", xt);
        auto ind = induce_unfolding(fam, G);
        CHECK(ind.phi[0].is_zero());
        CHECK(ind.alpha.is_zero());
        CHECK(ind.Phi[0] == Jet::variable(xt, 0));
    }
    SUBCASE("hand-derived base change for x^3 + t x^2") {
        Jet G = parse_jet("x^3 + t*x^2", xt);
        auto ind = induce_unfolding(fam, G);
        auto tr = make_ring(Field::rationals(), {"t"}, 12);
        CHECK(ind.phi[0] == parse_jet("-1/3*t^2", tr));
        CHECK(ind.alpha == parse_jet("2/27*t^3", tr));
        CHECK((unfold_lhs(G, ind) - unfold_rhs(fam, ind, xt)).is_zero());
    }
    SUBCASE("undeclared variables are rejected at parse time") {
        // the declared ring carries x and t only, so 'q' is malformed input
        CHECK_THROWS_AS(parse_jet("x^3+t*q", xt), error);
        // and a ring whose x-block does not match f is rejected outright
        auto wrong = qring({"w", "t"}, 8);
        CHECK_THROWS_AS(induce_unfolding(fam, parse_jet("w^3+t*w", wrong)), error);
    }
    SUBCASE("G(x,0) must equal f") {
        CHECK_THROWS_AS(induce_unfolding(fam, parse_jet("x^3+x^4+t*x", xt)), error);
    }
}

TEST_CASE("induce_unfolding identity on random unfoldings") {
    test::Rng rng(77);
    auto R = qring({"x"}, 6);
    Jet f = parse_jet("x^3", R);
    VersalFamily fam = semiuniversal_unfolding(f);
    auto xt = qring({"x", "t"}, 9);
    for (int iter = 0; iter < 8; ++iter) {
        Jet G = parse_jet("x^3", xt);
        for (int t = 0; t < 3; ++t) {
            // t-multiples of arbitrary x-polynomials
            Exponent e(2);
            e[1] = 1 + rng() % 3;
            Jet coef = test::random_jet(rng, xt, 3, 2);
            Jet pert = coef.mono_mul(e, Rat(1));
            // keep x-variables only in the coefficient
            Jet clean(xt);
            for (const auto& [a, c] : pert.terms())
                if (a[0] <= 4) clean.add_term(a, c);
            G += clean;
        }
        auto ind = induce_unfolding(fam, G);
        CHECK((unfold_lhs(G, ind) - unfold_rhs(fam, ind, xt)).is_zero());
    }
}

TEST_CASE("induce_deformation") {
    auto R = qring({"x"}, 8);
    Jet f = parse_jet("x^3", R);
    VersalFamily fam = semiuniversal_deformation({f});
    auto xs = qring({"x", "s"}, 10);
    SUBCASE("constant deformation") {
        auto ind = induce_deformation(fam, {parse_jet("x^3", xs)});
        CHECK(ind.phi[0].is_zero());
        CHECK(ind.phi[1].is_zero());
        CHECK(to_string(ind.M[0][0]) == "1");
    }
    SUBCASE("unit factors are absorbed by M") {
        auto ind = induce_deformation(fam, {parse_jet("x^3 + s*x^3", xs)});
        CHECK(to_string(ind.M[0][0]) == "1 + s");
        CHECK(ind.phi[0].is_zero());
        CHECK(ind.phi[1].is_zero());
        CHECK(ind.Phi[0] == Jet::variable(xs, 0));
    }
    SUBCASE("family members pull back to the parameters") {
        auto ind = induce_deformation(fam, {parse_jet("x^3 + s", xs)});
        auto sr = make_ring(Field::rationals(), {"s"}, 10);
        CHECK(ind.phi[0] == parse_jet("s", sr));
        CHECK(ind.phi[1].is_zero());
    }
    SUBCASE("initial unit matrix is normalized away") {
        auto ind = induce_deformation(fam, {parse_jet("x^3 + x^4 + s", xs)});
        // G(x,0) = (1+x) x^3, so M starts at 1+x
        CHECK(ind.M[0][0].coeff(Exponent({1, 0})) == Rat(1));
        // identity check
        std::vector<Jet> images{ind.Phi[0], Jet::variable(xs, 1)};
        Jet lhs = parse_jet("x^3 + x^4 + s", xs).substituted(xs, images);
        RingPtr xr10 = qring({"x"}, 10);
        Jet Fphi = f.lifted(xr10).lifted(xs);
        for (std::size_t j = 0; j < fam.params.size(); ++j)
            Fphi += fam.cofactors[j][0].lifted(xr10).lifted(xs) * embed_params(ind.phi[j], xs, 1);
        CHECK((lhs - ind.M[0][0] * Fphi).is_zero());
    }
    SUBCASE("a non-deformation is rejected") {
        CHECK_THROWS_AS(induce_deformation(fam, {parse_jet("x^2 + s", xs)}), error);
    }
}

TEST_CASE("induced identities hold for random deformations") {
    test::Rng rng(888);
    auto R = qring({"x"}, 6);
    Jet f = parse_jet("x^3", R);
    VersalFamily fam = semiuniversal_deformation({f});
    auto xs = qring({"x", "s"}, 9);
    RingPtr xr = qring({"x"}, 9);
    for (int iter = 0; iter < 8; ++iter) {
        Jet G = parse_jet("x^3", xs);
        for (int t = 0; t < 2; ++t) {
            Exponent e(2);
            e[1] = 1 + rng() % 2;
            Jet coef = test::random_jet(rng, xs, 2, 2);
            Jet clean(xs);
            for (const auto& [a, c] : coef.terms())
                if (a[1] == 0) clean.add_term(a, c);
            G += clean.mono_mul(e, Rat(1));
        }
        auto ind = induce_deformation(fam, {G});
        std::vector<Jet> images{ind.Phi[0], Jet::variable(xs, 1)};
        Jet lhs = G.substituted(xs, images);
        Jet Fphi = f.lifted(xr).lifted(xs);
        for (std::size_t j = 0; j < fam.params.size(); ++j)
            Fphi += fam.cofactors[j][0].lifted(xr).lifted(xs) * embed_params(ind.phi[j], xs, 1);
        CHECK((lhs - ind.M[0][0] * Fphi).is_zero());
        CHECK(ind.M[0][0].constant_term() == Rat(1));
    }
}

TEST_CASE("norm trace reporting") {
    auto R = qring({"x"}, 8);
    Jet f = parse_jet("x^3", R);
    VersalFamily fam = semiuniversal_unfolding(f);
    auto xt = qring({"x", "t"}, 12);
    Jet G = parse_jet("x^3 + t*x^2", xt);
    auto ind = induce_unfolding(fam, G);
    RadiusVector rho = RadiusVector::uniform(1, Rat(1, 2));
    RadiusVector tau = RadiusVector::uniform(1, Rat(1, 2));
    SUBCASE("finite table with a generous bound") {
        NormTraceReport rep = norm_trace(ind.trace, rho, tau, Rat(2));
        CHECK(rep.rows.size() == 3); // corrections at degrees 1, 2, 3
        CHECK(rep.all_within);
        CHECK(rep.tail_within_2L);
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            CHECK(rep.rows[i].degree > rep.rows[i - 1].degree);
    }
    SUBCASE("violations are reported with their degree") {
        NormTraceReport rep = norm_trace(ind.trace, rho, tau, Rat(1, 100));
        CHECK_FALSE(rep.all_within);
        REQUIRE(rep.violated_at.has_value());
        CHECK(*rep.violated_at == 1);
    }
    SUBCASE("terminating traces have zero norms beyond the last step") {
        // all residual rows beyond degree 3 are absent because the loop hit zero
        NormTraceReport rep = norm_trace(ind.trace, rho, tau, Rat(2));
        CHECK(rep.rows.back().degree == 3);
    }
}
