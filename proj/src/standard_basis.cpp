#include "germ/standard_basis.hpp"

#include <algorithm>
#include <set>

namespace germ {

namespace {

std::optional<Nat> find_full_degree(const std::vector<ModuleMonomial>& lead, std::size_t nvars,
                                    std::size_t ncomp, Nat trunc) {
    for (Nat k = 0; k <= trunc; ++k) {
        bool all = true;
        for (const ModuleMonomial& m : module_monomials_of_degree(nvars, ncomp, k)) {
            bool covered = false;
            for (const ModuleMonomial& l : lead)
                if (module_divides(l, m)) { covered = true; break; }
            if (!covered) { all = false; break; }
        }
        if (all) return k;
    }
    return std::nullopt;
}

std::vector<ModuleMonomial> minimalize(std::vector<ModuleMonomial> lms) {
    std::sort(lms.begin(), lms.end(),
              [](const ModuleMonomial& a, const ModuleMonomial& b) { return module_cmp(a, b) > 0; });
    lms.erase(std::unique(lms.begin(), lms.end()), lms.end());
    std::vector<ModuleMonomial> kept;
    for (const ModuleMonomial& m : lms) {
        bool redundant = false;
        for (const ModuleMonomial& k : kept)
            if (module_divides(k, m)) { redundant = true; break; }
        if (!redundant) kept.push_back(m);
    }
    return kept;
}

} // namespace

StandardBasis::StandardBasis(RingPtr ring, std::size_t ncomp, std::vector<JetVec> sources,
                             std::vector<BasisElement> elems)
    : ring_(std::move(ring)), ncomp_(ncomp), sources_(std::move(sources)), elems_(std::move(elems)) {
    std::vector<ModuleMonomial> lms;
    for (const BasisElement& e : elems_) lms.push_back(leading_monomial(e.g));
    minimal_leading_ = minimalize(std::move(lms));
    full_degree_ = find_full_degree(minimal_leading_, ring_->nvars(), ncomp_, ring_->trunc());
}

std::vector<JetVec> StandardBasis::generator_list() const {
    std::vector<JetVec> out;
    out.reserve(elems_.size());
    for (const BasisElement& e : elems_) out.push_back(e.g);
    return out;
}

namespace {

struct Reduction {
    JetVec r;
    std::vector<Jet> q; // per basis element
};

Reduction reduce(const JetVec& f, const std::vector<BasisElement>& elems) {
    std::vector<JetVec> divisors;
    divisors.reserve(elems.size());
    for (const BasisElement& e : elems) divisors.push_back(e.g);
    DivisionResult d = divide(f, divisors);
    return Reduction{std::move(d.remainder), std::move(d.quotients)};
}

} // namespace

StandardBasis std_basis(const std::vector<JetVec>& generators) {
    if (generators.empty()) fail(errc::bad_input, "no generators");
    std::vector<JetVec> sources = generators; // zero entries stay, to keep indices stable
    const RingPtr ring = sources[0].ring();
    const std::size_t ncomp = sources[0].size();
    const Field& F = ring->field();

    std::vector<BasisElement> elems;
    for (std::size_t j = 0; j < sources.size(); ++j) {
        if (sources[j].is_zero()) continue;
        BasisElement e;
        e.g = sources[j];
        e.original = true;
        for (std::size_t i = 0; i < sources.size(); ++i)
            e.cofactors.push_back(i == j ? Jet::constant(ring, F.one()) : Jet::zero(ring));
        elems.push_back(std::move(e));
    }
    if (elems.empty()) return StandardBasis(ring, ncomp, std::move(sources), {});

    // pair queue in increasing lcm degree (normal selection)
    struct Pair {
        Nat deg;
        std::size_t i, j;
        bool operator<(const Pair& o) const {
            return std::tie(deg, i, j) < std::tie(o.deg, o.i, o.j);
        }
    };
    std::set<Pair> pairs;
    auto lm_of = [&](std::size_t i) { return leading_monomial(elems[i].g); };
    auto push_pairs_for = [&](std::size_t j) {
        ModuleMonomial mj = lm_of(j);
        for (std::size_t i = 0; i < j; ++i) {
            ModuleMonomial mi = lm_of(i);
            if (mi.unit != mj.unit) continue;
            Exponent lcm = mi.alpha;
            for (std::size_t v = 0; v < lcm.size(); ++v) lcm[v] = std::max(lcm[v], mj.alpha[v]);
            if (lcm.degree() > ring->trunc()) continue; // spoly vanishes mod m^{D+1}
            pairs.insert(Pair{lcm.degree(), i, j});
        }
    };
    for (std::size_t j = 0; j < elems.size(); ++j) push_pairs_for(j);

    const std::size_t add_cap = count_monomials_upto(ring->nvars(), ring->trunc()) * ncomp + 2;
    std::size_t added = 0;
    while (!pairs.empty()) {
        Pair p = *pairs.begin();
        pairs.erase(pairs.begin());
        ModuleMonomial mi = lm_of(p.i), mj = lm_of(p.j);
        Exponent lcm = mi.alpha;
        for (std::size_t v = 0; v < lcm.size(); ++v) lcm[v] = std::max(lcm[v], mj.alpha[v]);
        Scalar ci = F.inv(elems[p.i].g[mi.unit].coeff(mi.alpha));
        Scalar cj = F.inv(elems[p.j].g[mj.unit].coeff(mj.alpha));
        JetVec spoly = elems[p.i].g.mono_mul(lcm.minus(mi.alpha), ci) -
                       elems[p.j].g.mono_mul(lcm.minus(mj.alpha), cj);
        std::vector<Jet> cof;
        for (std::size_t s = 0; s < sources.size(); ++s)
            cof.push_back(elems[p.i].cofactors[s].mono_mul(lcm.minus(mi.alpha), ci) -
                          elems[p.j].cofactors[s].mono_mul(lcm.minus(mj.alpha), cj));
        if (spoly.is_zero()) continue;
        Reduction red = reduce(spoly, elems);
        if (red.r.is_zero()) continue;
        for (std::size_t d = 0; d < elems.size(); ++d) {
            if (red.q[d].is_zero()) continue;
            for (std::size_t s = 0; s < sources.size(); ++s)
                cof[s] -= red.q[d] * elems[d].cofactors[s];
        }
        BasisElement e;
        e.g = std::move(red.r);
        e.cofactors = std::move(cof);
        elems.push_back(std::move(e));
        push_pairs_for(elems.size() - 1);
        if (++added > add_cap) fail(errc::internal, "completion failed to terminate");
    }

    return StandardBasis(ring, ncomp, std::move(sources), std::move(elems));
}

StandardBasis std_basis(const std::vector<Jet>& generators) {
    std::vector<JetVec> gens;
    gens.reserve(generators.size());
    for (const Jet& g : generators) gens.push_back(JetVec::single(g));
    return std_basis(gens);
}

JetVec nf_ideal(const JetVec& f, const StandardBasis& S) {
    if (S.elements().empty()) return f;
    return normal_form(f, S.generator_list());
}

Jet nf_ideal(const Jet& f, const StandardBasis& S) {
    return nf_ideal(JetVec::single(f), S)[0];
}

bool is_member(const JetVec& f, const StandardBasis& S) { return nf_ideal(f, S).is_zero(); }
bool is_member(const Jet& f, const StandardBasis& S) { return nf_ideal(f, S).is_zero(); }

QuotientBasis quotient_monomials(const StandardBasis& S, bool modulo_maximal_ideal) {
    QuotientBasis out;
    out.complete = S.complete();
    const Nat top = S.complete() ? (*S.full_degree() == 0 ? 0 : *S.full_degree() - 1)
                                 : S.ring()->trunc();
    if (S.complete() && *S.full_degree() == 0) return out; // everything inside L
    for (Nat d = modulo_maximal_ideal ? 1 : 0; d <= top; ++d) {
        for (const ModuleMonomial& m : module_monomials_of_degree(S.ring()->nvars(), S.ncomp(), d)) {
            bool covered = false;
            for (const ModuleMonomial& l : S.leading_module())
                if (module_divides(l, m)) { covered = true; break; }
            if (!covered) out.monomials.push_back(m);
        }
    }
    return out;
}

bool contains_monomials_of_degree(const StandardBasis& S, Nat d) {
    if (d > S.ring()->trunc())
        fail(errc::truncation_too_small, "degree " + std::to_string(d) + " beyond truncation");
    const Field& F = S.ring()->field();
    for (const ModuleMonomial& m : module_monomials_of_degree(S.ring()->nvars(), S.ncomp(), d)) {
        JetVec v = JetVec::unit_monomial(S.ring(), S.ncomp(), m, F.one());
        if (!is_member(v, S)) return false;
    }
    return true;
}

SourceLift lift_over_sources(const JetVec& f, const StandardBasis& S) {
    SourceLift out;
    out.coeff_per_source.assign(S.sources().size(), Jet::zero(f.ring()));
    if (S.elements().empty()) {
        out.remainder = f;
        return out;
    }
    DivisionResult d = divide(f, S.generator_list());
    out.remainder = std::move(d.remainder);
    for (std::size_t e = 0; e < S.elements().size(); ++e) {
        if (d.quotients[e].is_zero()) continue;
        for (std::size_t s = 0; s < S.sources().size(); ++s)
            out.coeff_per_source[s] += d.quotients[e] * S.elements()[e].cofactors[s];
    }
    return out;
}

} // namespace germ
