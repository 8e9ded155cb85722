#include <doctest.h>

#include "germ/cartan.hpp"
#include "germ/io.hpp"
#include "support.hpp"

using namespace germ;

namespace {

struct Setup {
    Field Q = Field::rationals();
    RingPtr xr, sr, xs;
    RadiusVector rho, tau;

    Setup(Nat d = 8) {
        xr = make_ring(Q, {"x"}, d);
        sr = make_ring(Q, {"s"}, d);
        xs = make_ring(Q, {"x", "s"}, d);
        rho = RadiusVector::uniform(1, Rat(1, 2));
        tau = RadiusVector::uniform(1, Rat(1, 2));
    }

    CartanProblem problem(std::vector<std::string> a, std::vector<std::string> b,
                          const std::string& C) const {
        CartanProblem p;
        for (const auto& t : a) p.a.push_back(JetVec::single(parse_jet(t, xr)));
        for (const auto& t : b) p.b.push_back(JetVec::single(parse_jet(t, xr)));
        p.C = JetVec::single(parse_jet(C, xs));
        p.x_ring = xr;
        p.s_ring = sr;
        p.rho = rho;
        p.tau = tau;
        return p;
    }
};

Jet lift_y(const Jet& y, const RingPtr& xs) {
    return y.substituted(xs, std::vector<Jet>{Jet::variable(xs, 1)});
}

bool identity_holds(const CartanProblem& p, const CartanSolution& sol) {
    Jet acc = Jet::zero(p.C.ring());
    for (std::size_t i = 0; i < p.a.size(); ++i) acc += p.a[i][0].lifted(p.C.ring()) * sol.z[i];
    for (std::size_t j = 0; j < p.b.size(); ++j)
        acc += p.b[j][0].lifted(p.C.ring()) * lift_y(sol.y[j], p.C.ring());
    return acc == p.C[0];
}

} // namespace

TEST_CASE("r = 0: x-dependent right-hand side is inconsistent") {
    Setup st;
    std::vector<JetVec> b{JetVec::single(parse_jet("1", st.xr))};
    CHECK_THROWS_AS(
        cartan_solve_r0(b, JetVec::single(parse_jet("s*x", st.xs)), st.xr, st.sr, st.rho, st.tau),
        error);
}

TEST_CASE("r = 0: two-row Cramer instance") {
    Setup st;
    std::vector<JetVec> b{JetVec::single(parse_jet("1+x", st.xr)),
                          JetVec::single(parse_jet("x", st.xr))};
    auto sol = cartan_solve_r0(b, JetVec::single(parse_jet("s", st.xs)), st.xr, st.sr, st.rho, st.tau);
    CHECK(to_string(sol.y[0]) == "s");
    CHECK(to_string(sol.y[1]) == "-s");
    CHECK(sol.bounds_verified);
    CHECK(sol.L == 2 * sol.L_core);
}

TEST_CASE("r = 0: single equation") {
    Setup st;
    std::vector<JetVec> b{JetVec::single(parse_jet("1", st.xr))};
    auto sol = cartan_solve_r0(b, JetVec::single(parse_jet("3*s^2", st.xs)), st.xr, st.sr, st.rho, st.tau);
    CHECK(to_string(sol.y[0]) == "3*s^2");
    CHECK(sol.norm_y[0] <= sol.L * sol.norm_C);
}

TEST_CASE("r > 0 worked instances") {
    Setup st;
    SUBCASE("C inside the a-module") {
        auto p = st.problem({"x"}, {"1"}, "s*x");
        auto sol = cartan_solve(p);
        CHECK(to_string(sol.z[0]) == "s");
        CHECK(sol.y[0].is_zero());
        CHECK(identity_holds(p, sol));
        CHECK(sol.bounds_verified);
    }
    SUBCASE("mixed right-hand side") {
        auto p = st.problem({"x"}, {"1"}, "s + s*x");
        auto sol = cartan_solve(p);
        CHECK(to_string(sol.z[0]) == "s");
        CHECK(to_string(sol.y[0]) == "s");
        CHECK(identity_holds(p, sol));
        CHECK(sol.bounds_verified);
    }
    SUBCASE("zero right-hand side") {
        auto p = st.problem({"x"}, {"1"}, "0");
        auto sol = cartan_solve(p);
        CHECK(sol.z[0].is_zero());
        CHECK(sol.y[0].is_zero());
    }
}

TEST_CASE("outputs stay homogeneous of the input degree") {
    Setup st;
    for (const char* C : {"s*x", "s^2*x + s^2", "s^3*x^2"}) {
        auto p = st.problem({"x"}, {"1"}, C);
        auto sol = cartan_solve(p);
        CHECK(identity_holds(p, sol));
        for (const Jet& z : sol.z)
            for (const auto& [a, c] : z.terms()) CHECK(a[1] == sol.degree_e);
        for (const Jet& y : sol.y)
            for (const auto& [a, c] : y.terms()) CHECK(a[0] == sol.degree_e);
    }
}

TEST_CASE("one constant certifies every degree and radius") {
    Setup st;
    Rat L_seen(-1);
    for (const char* C : {"s*x + s", "s^2*x + s^2", "s^3*x + s^3"}) {
        auto p = st.problem({"x"}, {"1+x"}, C);
        auto sol = cartan_solve(p);
        CHECK(identity_holds(p, sol));
        CHECK(sol.bounds_verified);
        if (L_seen >= 0) CHECK(sol.L == L_seen);
        L_seen = sol.L;
        // smaller tau keeps the same certificate
        auto p2 = p;
        p2.tau = st.tau.scaled(Rat(1, 3));
        auto sol2 = cartan_solve(p2);
        CHECK(sol2.L == sol.L);
        CHECK(sol2.bounds_verified);
    }
}

TEST_CASE("solution map is additive in C for fixed data") {
    Setup st;
    auto p1 = st.problem({"x"}, {"1+x", "x"}, "s + s*x");
    auto p2 = st.problem({"x"}, {"1+x", "x"}, "s*x^2");
    auto p12 = st.problem({"x"}, {"1+x", "x"}, "s + s*x + s*x^2");
    auto s1 = cartan_solve(p1), s2 = cartan_solve(p2), s12 = cartan_solve(p12);
    for (std::size_t j = 0; j < 2; ++j) CHECK(s12.y[j] == s1.y[j] + s2.y[j]);
    for (std::size_t i = 0; i < 1; ++i) CHECK(s12.z[i] == s1.z[i] + s2.z[i]);
}

TEST_CASE("module right-hand sides (N = 2)") {
    Setup st;
    JetVec b1(st.xr, 2), b2(st.xr, 2);
    b1[0] = parse_jet("1", st.xr);
    b2[1] = parse_jet("1+x", st.xr);
    JetVec C(st.xs, 2);
    C[0] = parse_jet("s", st.xs);
    C[1] = parse_jet("s+s*x", st.xs);
    auto sol = cartan_solve_r0({b1, b2}, C, st.xr, st.sr, st.rho, st.tau);
    CHECK(to_string(sol.y[0]) == "s");
    CHECK(to_string(sol.y[1]) == "s");
    CHECK(sol.bounds_verified);
}

TEST_CASE("finite-field coefficients solve exactly") {
    Field F5 = Field::finite(5);
    auto xr = make_ring(F5, {"x"}, 6);
    auto sr = make_ring(F5, {"s"}, 6);
    auto xs = make_ring(F5, {"x", "s"}, 6);
    CartanProblem p;
    p.a = {JetVec::single(parse_jet("x", xr))};
    p.b = {JetVec::single(parse_jet("2", xr))};
    p.C = JetVec::single(parse_jet("3*s + s*x", xs));
    p.x_ring = xr;
    p.s_ring = sr;
    p.rho = RadiusVector::uniform(1, Rat(1, 2));
    p.tau = RadiusVector::uniform(1, Rat(1, 2));
    auto sol = cartan_solve(p);
    // 2*y = 3s -> y = 4s (mod 5), z = s
    CHECK(to_string(sol.y[0]) == "4*s");
    CHECK(to_string(sol.z[0]) == "s");
}

TEST_CASE("witness solutions are validated when supplied") {
    Setup st;
    auto p = st.problem({"x"}, {"1"}, "s*x");
    p.witness = std::make_pair(std::vector<Jet>{parse_jet("s", st.xs)},
                               std::vector<Jet>{Jet::zero(st.sr)});
    auto sol = cartan_solve(p);
    CHECK(to_string(sol.z[0]) == "s");
    p.witness = std::make_pair(std::vector<Jet>{parse_jet("s^2", st.xs)},
                               std::vector<Jet>{Jet::zero(st.sr)});
    CHECK_THROWS_AS(cartan_solve(p), error);
}

TEST_CASE("rank deficiency and truncation guards") {
    Setup st;
    std::vector<JetVec> b{JetVec::single(Jet::zero(st.xr))};
    CHECK_THROWS_AS(
        cartan_solve_r0(b, JetVec::single(parse_jet("s", st.xs)), st.xr, st.sr, st.rho, st.tau),
        error);
    // rank still growing at the truncation boundary
    auto small = Setup(2);
    std::vector<JetVec> b2{JetVec::single(parse_jet("1+x", small.xr)),
                           JetVec::single(parse_jet("1+x+x^2", small.xr))};
    CHECK_THROWS_AS(cartan_solve_r0(b2, JetVec::single(parse_jet("s", small.xs)), small.xr,
                                    small.sr, small.rho, small.tau),
                    error);
}
