#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "germ/standard_basis.hpp"

namespace germ {

// Orders, Milnor/Tjurina numbers and Hessian data of a hypersurface germ.
// Dimensions are reported only with a saturation witness; "not detected
// below the truncation" is nullopt, never a claim of infinity.
struct SingularityProfile {
    std::optional<Nat> order;
    std::optional<Nat> diff_order;
    std::optional<std::size_t> milnor;
    std::optional<std::size_t> tjurina;
    std::size_t hessian_rank = 0;
    std::size_t corank = 0;
};

SingularityProfile profile(const Jet& f);

std::vector<Jet> jacobian_generators(const Jet& f);

enum class DeterminacyMode { right, contact };

struct DeterminacyBound {
    DeterminacyMode mode;
    Nat k = 0;          // least k with the order-2 inclusion
    Nat bound_main = 0; // 2k - d(f) + 1, resp. 2k - ord(f) + 2
    std::optional<Nat> newton_k; // least k with m^{k+1} in m*J(f)^2 (right mode)
    std::optional<Nat> newton_bound;
    Nat bound = 0; // minimum applicable
};

DeterminacyBound determinacy_bound(const Jet& f, DeterminacyMode mode);

// The inclusion shapes behind the determinacy criteria.
enum class InclusionForm {
    right_order2,   // m^{k+2} in m^2 * J(f)
    contact_order2, // m^{k+2} in m<f> + m^2 * J(f)
    right_newton,   // m^{k+1} in m * J(f)^2
};

// Tests the stated power-of-m inclusion for the given k via membership
// against a standard basis of the product ideal.
bool power_membership(const Jet& f, Nat k, InclusionForm form);

// Splitting-lemma normal form.  transform applied to f equals
// quadratic_part + residual mod m^{D+1}; residual lives in the last
// n - rank variables (char != 2) resp. the last n - 2l (char 2, where the
// residual additionally carries the d_i x_i^2 diagonal).
struct SplitResult {
    RingPtr ring;
    std::vector<Jet> transform;
    Jet quadratic_part;
    Jet residual;
    std::size_t rank = 0;            // k, resp. 2l
    std::vector<Scalar> quad_coeffs; // a_1..a_k resp. a_1..a_{2l}
    std::optional<char> char2_type;  // 'a' / 'b' when the literal shape is reached
    bool normalized = false;
};

SplitResult split(const Jet& f);

// Scalar hooks for coefficient normalization: square roots and roots of
// monic quadratics t^2 + b t + c.  Absence of a root is reported, never
// guessed.
struct FieldHooks {
    std::function<std::optional<Scalar>(const Field&, const Scalar&)> sqrt;
    std::function<std::optional<Scalar>(const Field&, const Scalar&, const Scalar&)> quad_root;
};

FieldHooks default_hooks();

SplitResult normalize_coefficients(const SplitResult& sr, const FieldHooks& hooks);

// Explicit unfolding/deformation F = f + sum t_j g_j with its parameters.
struct VersalFamily {
    RingPtr base_ring;
    std::vector<Jet> f; // k components (k = 1 for unfoldings)
    RingPtr family_ring;
    std::vector<std::string> params;
    std::vector<JetVec> cofactors; // one k-vector per parameter, over base_ring
    std::vector<Jet> family;       // k jets in family_ring, linear in the parameters
    bool deformation = false;
    bool minimal = true;
};

// F(x,s) = f + sum s_i g_i with g_i the standard monomials of m/<df>.
VersalFamily semiuniversal_unfolding(const Jet& f);

// ICIS semiuniversal deformation via T^1 = K{x}^k / (Jacobian columns + f-multiples).
VersalFamily semiuniversal_deformation(const std::vector<Jet>& f_vec);

} // namespace germ
