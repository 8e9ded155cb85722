#pragma once

#include <string>
#include <vector>

#include "germ/jet.hpp"

namespace germ {

// Polynomial texts look like `3*x^2*y - 1/2*z + 4`; vectors like `[x; y^2]`.
Jet parse_jet(const std::string& text, const RingPtr& ring);
JetVec parse_jet_vector(const std::string& text, const RingPtr& ring);

std::string to_string(const Jet& f);
std::string to_string(const JetVec& f);
std::string to_string(const Exponent& a, const Ring& ring);
std::string to_string(const ModuleMonomial& m, const Ring& ring, std::size_t ncomp);
std::string to_string(const Rat& r);

} // namespace germ
