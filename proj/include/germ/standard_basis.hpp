#pragma once

#include <optional>
#include <vector>

#include "germ/divide.hpp"
#include "germ/jet.hpp"

namespace germ {

// One element of a standard basis, with the transcript expressing it as a
// combination of the source generators.
struct BasisElement {
    JetVec g;
    std::vector<Jet> cofactors; // g = sum_j cofactors[j] * source[j]
    bool original = false;
};

// Standard basis of a submodule of K{x}^N for deglex: original generators
// first (input order preserved), completion elements after.  full_degree()
// is the smallest k <= D with every degree-k module monomial in L(S); its
// presence is the saturation witness the section-5/6 consumers require.
class StandardBasis {
public:
    StandardBasis(RingPtr ring, std::size_t ncomp, std::vector<JetVec> sources,
                  std::vector<BasisElement> elems);

    const RingPtr& ring() const { return ring_; }
    std::size_t ncomp() const { return ncomp_; }
    const std::vector<JetVec>& sources() const { return sources_; }
    const std::vector<BasisElement>& elements() const { return elems_; }
    std::vector<JetVec> generator_list() const;
    const std::vector<ModuleMonomial>& leading_module() const { return minimal_leading_; }
    std::optional<Nat> full_degree() const { return full_degree_; }
    bool complete() const { return full_degree_.has_value(); }

private:
    RingPtr ring_;
    std::size_t ncomp_;
    std::vector<JetVec> sources_;
    std::vector<BasisElement> elems_;
    std::vector<ModuleMonomial> minimal_leading_;
    std::optional<Nat> full_degree_;
};

StandardBasis std_basis(const std::vector<JetVec>& generators);
StandardBasis std_basis(const std::vector<Jet>& generators);

// NF(f | I) through the basis; for the empty basis (zero module) f itself.
JetVec nf_ideal(const JetVec& f, const StandardBasis& S);
Jet nf_ideal(const Jet& f, const StandardBasis& S);

// membership mod m^{D+1}
bool is_member(const JetVec& f, const StandardBasis& S);
bool is_member(const Jet& f, const StandardBasis& S);

struct QuotientBasis {
    std::vector<ModuleMonomial> monomials; // outside L(S), degree <= D
    bool complete = false;                 // some full degree level lies in L(S)
};

// standard monomials of the quotient; with modulo_maximal_ideal the monomial
// 1 (slot 0) is dropped, giving a basis of m/I for ideals
QuotientBasis quotient_monomials(const StandardBasis& S, bool modulo_maximal_ideal = false);

// every module monomial of total degree d is a member
bool contains_monomials_of_degree(const StandardBasis& S, Nat d);

// f = r + sum_j coeff_per_source[j] * source_j with r = NF(f | S)
struct SourceLift {
    JetVec remainder;
    std::vector<Jet> coeff_per_source;
};
SourceLift lift_over_sources(const JetVec& f, const StandardBasis& S);

} // namespace germ
