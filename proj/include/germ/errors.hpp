#pragma once

#include <stdexcept>
#include <string>

namespace germ {

enum class errc {
    division_by_zero,
    variable_mismatch,
    substitution_constant_term,
    zero_element,
    zero_divisor,
    noninvertible_leading_coefficient,
    not_polynomial,
    certificate_unachievable,
    truncation_too_small,
    inconsistent,
    rank_deficient_input,
    unit_input,
    order_too_low,
    hook_failure,
    not_isolated,
    not_complete_intersection,
    not_a_solution,
    oracle_failure,
    hypothesis_failure,
    not_an_unfolding,
    not_a_deformation,
    lift_failure,
    not_detectable,
    syntax_error,
    unknown_variable,
    coefficient_not_in_field,
    bad_input,
    internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
    errc code;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

} // namespace germ
