#pragma once

#include <optional>
#include <vector>

#include "germ/standard_basis.hpp"

namespace germ {

// Bounded linear solver: given a_1..a_r, b_1..b_t over the x-variables and a
// right-hand side C over (x,s) homogeneous of degree e in s, produce
//   sum a_i z_i + sum b_j y_j = C
// with y_j in K[s], z_i in K{x}[s] and certified norm bounds
//   |y_j|_tau <= L |C|_(rho,tau),   |z_i|_(rho,tau) <= L |C|_(rho,tau).
// L depends only on a, b and rho, never on C, e or tau.
struct CartanProblem {
    std::vector<JetVec> a; // r vectors over the x-ring
    std::vector<JetVec> b; // t vectors over the x-ring
    JetVec C;              // over the (x,s)-ring
    RingPtr x_ring;        // nx leading variables of C's ring
    RingPtr s_ring;        // trailing variables of C's ring
    RadiusVector rho;      // cap for the x-radius (the solver may shrink it)
    RadiusVector tau;
    // optional witness (z, y); consistency is decidable at jet level, so a
    // witness is validated when given but never required
    std::optional<std::pair<std::vector<Jet>, std::vector<Jet>>> witness;
};

struct CartanSolution {
    std::vector<Jet> z; // over the (x,s)-ring, homogeneous of degree e in s
    std::vector<Jet> y; // over the s-ring, homogeneous of degree e
    Rat L;              // implementation constant (slack factor 2 included)
    Rat L_core;         // literal proof constant of the r = 0 core
    RadiusVector rho_used;
    bool bounds_verified = false;
    Rat norm_C;
    std::vector<Rat> norm_y;
    std::vector<Rat> norm_z;
    Nat degree_e = 0;
};

CartanSolution cartan_solve_r0(const std::vector<JetVec>& b, const JetVec& C,
                               const RingPtr& x_ring, const RingPtr& s_ring,
                               const RadiusVector& rho, const RadiusVector& tau);

CartanSolution cartan_solve(const CartanProblem& problem);

} // namespace germ
