#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "germ/cartan.hpp"
#include "germ/singularity.hpp"

namespace germ {

// Nested equation system F(x, s, Y, Z) = 0 mod I with unknowns split into a
// K[s] block Y and a K{x}[s] block Z.
struct NestedProblem {
    RingPtr full_ring; // variables x(nx), s(ns), Y(p), Z(q) in that order
    std::size_t nx = 0, ns = 0, p = 0, q = 0;
    std::vector<Jet> F; // N components over full_ring
    RingPtr x_ring;
    RingPtr s_ring;
    RingPtr xs_ring;
    std::optional<StandardBasis> ideal_in_s; // I, a standard basis over s_ring
};

NestedProblem make_nested_problem(const Field& field, std::size_t nx, std::size_t ns,
                                  std::size_t p, std::size_t q, Nat trunc,
                                  const std::vector<std::string>& names = {});

// Solution of order e: y depends on s only, z on (x, s); both in normal form
// w.r.t. the ideal when one is present.
struct NestedState {
    Nat degree_e = 0;
    std::vector<Jet> y; // p jets over s_ring
    std::vector<Jet> z; // q jets over xs_ring
};

struct ExtensionStep {
    Nat degree;                // corrected degree e+1
    std::vector<Jet> residual; // F_e components, over xs (or the op's base ring)
    std::vector<Jet> u;        // parameter-only corrections
    std::vector<Jet> v;        // (x, s) corrections
};

struct ExtensionTrace {
    std::vector<ExtensionStep> steps;
};

// Solves F_e + sum u_i dF/dY_i|0 + sum v_i dF/dZ_i|0 = 0 for homogeneous
// (u, v); nullopt when the linearized system is inconsistent.
using ExtensionOracle = std::function<std::optional<std::pair<std::vector<Jet>, std::vector<Jet>>>(
    const std::vector<Jet>& F_e, const NestedProblem& prob, Nat degree)>;

// The bounded default route through the Cartan solver.
ExtensionOracle cartan_oracle(const RadiusVector& rho, const RadiusVector& tau);

NestedState extend_order(const NestedProblem& prob, const NestedState& state,
                         const ExtensionOracle& oracle, ExtensionTrace* trace = nullptr);

// substitutes the state into F and reduces mod the ideal
std::vector<Jet> nested_residual(const NestedProblem& prob, const NestedState& state);

struct RightEquivResult {
    std::vector<Jet> phi; // substitution jets with identity linear part
    ExtensionTrace trace;
};

// phi with f(phi) = g mod m^{D+1}, built order by order from the
// determinacy data of f.
RightEquivResult jet_right_equiv(const Jet& f, const Jet& g);

struct InducedUnfolding {
    std::vector<Jet> phi; // base change, jets over the parameter ring of G
    std::vector<Jet> Phi; // coordinates, jets over G's ring
    Jet alpha;            // translation, over the parameter ring
    ExtensionTrace trace;
};

// G(Phi(x,t), t) = F(x, phi(t)) + alpha(t) mod the truncation.
InducedUnfolding induce_unfolding(const VersalFamily& fam, const Jet& G);

struct InducedDeformation {
    std::vector<Jet> phi;            // base change
    std::vector<Jet> Phi;            // coordinates
    std::vector<std::vector<Jet>> M; // k x k unit matrix jet
    ExtensionTrace trace;
};

// G(Phi(x,s), s) = M(x,s) F(x, phi(s)) mod the truncation.  M(x,0) is the
// identity when G(x,0) = f; otherwise it carries the unit matrix M0 with
// G(x,0) = M0 f, which the loop normalizes away internally.
InducedDeformation induce_deformation(const VersalFamily& fam, const std::vector<Jet>& G);

struct NormTraceRow {
    Nat degree;
    Rat residual_norm;
    Rat max_u;
    Rat max_v;
    bool within;
};

struct NormTraceReport {
    std::vector<NormTraceRow> rows;
    bool all_within = true;
    std::optional<Nat> violated_at;
    Rat tail_u_norm; // |sum_e u^(e)|_{tau/2}
    Rat tail_v_norm;
    bool tail_within_2L = true;
};

// Boundedness diagnostic in the shape of the convergence estimates; it
// reports observed norms, it proves nothing.
NormTraceReport norm_trace(const ExtensionTrace& trace, const RadiusVector& rho,
                           const RadiusVector& tau, const Rat& L);

} // namespace germ
