#include <doctest.h>

#include <algorithm>

#include "germ/io.hpp"
#include "germ/standard_basis.hpp"
#include "support.hpp"

using namespace germ;

namespace {
RingPtr qring(std::vector<std::string> vars, Nat d) {
    return make_ring(Field::rationals(), std::move(vars), d);
}

std::vector<std::string> lm_strings(const StandardBasis& S) {
    std::vector<std::string> out;
    for (const ModuleMonomial& m : S.leading_module())
        out.push_back(to_string(m, *S.ring(), S.ncomp()));
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace

TEST_CASE("monomial ideals are their own standard bases") {
    auto R = qring({"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2", R), parse_jet("y^3", R)});
    CHECK(S.elements().size() == 2);
    CHECK(lm_strings(S) == std::vector<std::string>{"x^2", "y^3"});
}

TEST_CASE("completion finds y^4 for <x^2+y^3, xy>") {
    auto R = qring({"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2+y^3", R), parse_jet("x*y", R)});
    CHECK(lm_strings(S) == std::vector<std::string>{"x*y", "x^2", "y^4"});
    CHECK(is_member(parse_jet("y^4", R), S));
}

TEST_CASE("principal ideals need no completion") {
    auto R = qring({"x", "y"}, 4);
    auto S = std_basis(std::vector<Jet>{parse_jet("x-y", R)});
    CHECK(S.elements().size() == 1);
    CHECK_FALSE(S.complete()); // quotient is not finite-dimensional
}

TEST_CASE("normal forms w.r.t. ideals") {
    auto R = qring({"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2+y^3", R), parse_jet("x*y", R)});
    CHECK(nf_ideal(parse_jet("x^2+y^3", R), S).is_zero());
    auto S2 = std_basis(std::vector<Jet>{parse_jet("x^2", R)});
    CHECK(to_string(nf_ideal(parse_jet("y^3", R), S2)) == "y^3");
    auto S3 = std_basis(std::vector<Jet>{parse_jet("x^2-y^3", R)});
    CHECK(to_string(nf_ideal(parse_jet("x^2", R), S3)) == "y^3");
    // deglex makes y^2 the leading monomial of x^2 - y^2, so x^2 survives
    auto S4 = std_basis(std::vector<Jet>{parse_jet("x^2-y^2", R)});
    CHECK(to_string(nf_ideal(parse_jet("x^2+y^2", R), S4)) == "2*x^2");
}

TEST_CASE("membership examples") {
    auto R = qring({"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2", R)});
    CHECK(is_member(parse_jet("x^2*y", R), S));
    CHECK_FALSE(is_member(parse_jet("y", R), S));
}

TEST_CASE("quotient monomial bases") {
    auto R = qring({"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2", R), parse_jet("y^2", R)});
    QuotientBasis Q = quotient_monomials(S);
    CHECK(Q.complete);
    CHECK(Q.monomials.size() == 4); // 1, x, y, xy

    auto R1 = qring({"x"}, 4);
    auto S1 = std_basis(std::vector<Jet>{parse_jet("x", R1)});
    QuotientBasis Q1 = quotient_monomials(S1);
    CHECK(Q1.complete);
    CHECK(Q1.monomials.size() == 1);

    auto S2 = std_basis(std::vector<Jet>{parse_jet("x^2+y^3", R), parse_jet("x*y", R)});
    QuotientBasis Q2 = quotient_monomials(S2);
    CHECK(Q2.complete);
    CHECK(Q2.monomials.size() == 5); // 1, x, y, y^2, y^3
}

TEST_CASE("degree containment probes") {
    auto R = qring({"x", "y"}, 8);
    // m^4 subset m^2 <x^2, y^2> but m^3 is not
    std::vector<Jet> gens;
    for (const char* s : {"x^2", "y^2"})
        for (const char* m : {"x^2", "x*y", "y^2"})
            gens.push_back(parse_jet(std::string(m) + "*" + s, R));
    auto S = std_basis(gens);
    CHECK(contains_monomials_of_degree(S, 4));
    CHECK_FALSE(contains_monomials_of_degree(S, 3));
    CHECK_THROWS_AS(contains_monomials_of_degree(S, 9), error);

    // m * <x^2> in two variables never swallows the y-monomials
    auto Sm = std_basis(std::vector<Jet>{parse_jet("x^3", R), parse_jet("x^2*y", R)});
    CHECK_FALSE(contains_monomials_of_degree(Sm, 3)); // y^3 survives
}

TEST_CASE("membership agrees with the linear-algebra oracle") {
    test::Rng rng(550);
    int ideals = 0;
    while (ideals < 40) {
        const std::size_t n = 1 + rng() % 3;
        const Nat D = n == 3 ? 4 + rng() % 2 : 4 + rng() % 4; // <= 7
        std::vector<std::string> vars(n);
        for (std::size_t i = 0; i < n; ++i) vars[i] = "x" + std::to_string(i + 1);
        auto R = qring(vars, D);
        std::vector<Jet> gens;
        const std::size_t m = 1 + rng() % 3;
        for (std::size_t i = 0; i < m; ++i) gens.push_back(test::random_jet(rng, R, 4, 3));
        bool nonzero = false;
        for (const Jet& g : gens) nonzero = nonzero || !g.is_zero();
        if (!nonzero) continue;
        ++ideals;
        StandardBasis S = std_basis(gens);
        test::SpanOracle oracle = test::span_oracle(gens, R);
        for (int probe = 0; probe < 12; ++probe) {
            Jet f(R);
            if (probe % 2 == 0) {
                f = test::random_jet(rng, R, D, 4);
            } else {
                // honest members: random combination of the generators
                for (const Jet& g : gens) f += g * test::random_jet(rng, R, 2, 2);
            }
            CHECK(is_member(f, S) == oracle.contains(JetVec::single(f)));
        }
    }
}

TEST_CASE("module membership agrees with the oracle") {
    test::Rng rng(551);
    int cases = 0;
    while (cases < 20) {
        auto R = qring({"x", "y"}, 5);
        std::vector<JetVec> gens;
        const std::size_t N = 2;
        const std::size_t m = 2 + rng() % 2;
        for (std::size_t i = 0; i < m; ++i) {
            JetVec g(R, N);
            for (std::size_t k = 0; k < N; ++k) g[k] = test::random_jet(rng, R, 3, 2);
            gens.push_back(std::move(g));
        }
        bool nonzero = false;
        for (const JetVec& g : gens) nonzero = nonzero || !g.is_zero();
        if (!nonzero) continue;
        ++cases;
        StandardBasis S = std_basis(gens);
        test::SpanOracle oracle(gens, R, N);
        for (int probe = 0; probe < 10; ++probe) {
            JetVec f(R, N);
            if (probe % 2 == 0) {
                for (std::size_t k = 0; k < N; ++k) f[k] = test::random_jet(rng, R, 5, 3);
            } else {
                for (const JetVec& g : gens) f += g.mul(test::random_jet(rng, R, 2, 2));
            }
            CHECK(is_member(f, S) == oracle.contains(f));
        }
    }
}

TEST_CASE("standard bases over finite fields") {
    auto R = make_ring(Field::finite(5), {"x", "y"}, 6);
    auto S = std_basis(std::vector<Jet>{parse_jet("x^2+y^3", R), parse_jet("x*y", R)});
    CHECK(is_member(parse_jet("y^4", R), S));
    test::Rng rng(77);
    test::SpanOracle oracle = test::span_oracle(
        {parse_jet("x^2+y^3", R), parse_jet("x*y", R)}, R);
    for (int probe = 0; probe < 20; ++probe) {
        Jet f = test::random_jet(rng, R, 5, 4);
        CHECK(is_member(f, S) == oracle.contains(JetVec::single(f)));
    }
}

TEST_CASE("normal form does not depend on generator order") {
    test::Rng rng(808);
    auto R = qring({"x", "y"}, 6);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Jet> gens{test::random_jet(rng, R, 3, 3, true),
                              test::random_jet(rng, R, 3, 3, true),
                              test::random_jet(rng, R, 2, 2, true)};
        StandardBasis S1 = std_basis(gens);
        std::vector<Jet> perm{gens[2], gens[0], gens[1]};
        StandardBasis S2 = std_basis(perm);
        Jet f = test::random_jet(rng, R, 6, 5);
        CHECK(nf_ideal(f, S1) == nf_ideal(f, S2));
    }
}

TEST_CASE("generators reduce to zero against the basis") {
    test::Rng rng(909);
    auto R = qring({"x", "y"}, 6);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<Jet> gens{test::random_jet(rng, R, 3, 3, true),
                              test::random_jet(rng, R, 3, 3, true)};
        StandardBasis S = std_basis(gens);
        for (const Jet& g : gens) CHECK(is_member(g, S));
        // transcripts really express the basis over the sources
        for (const BasisElement& e : S.elements()) {
            JetVec recon(R, 1);
            for (std::size_t j = 0; j < S.sources().size(); ++j)
                recon += S.sources()[j].mul(e.cofactors[j]);
            CHECK(recon == e.g);
        }
    }
}

TEST_CASE("equal leading modules give equal membership") {
    auto R = qring({"x", "y"}, 6);
    std::vector<Jet> g1{parse_jet("x^2+y^3", R), parse_jet("x*y", R)};
    std::vector<Jet> g2{parse_jet("x^2+y^3", R), parse_jet("x*y", R), parse_jet("y*x^2+y^4", R)};
    StandardBasis S1 = std_basis(g1), S2 = std_basis(g2);
    CHECK(lm_strings(S1) == lm_strings(S2));
    test::Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        Jet f = test::random_jet(rng, R, 5, 4);
        CHECK(is_member(f, S1) == is_member(f, S2));
    }
}
