#include "germ/errors.hpp"

namespace germ {

const char* errc_name(errc c) {
    switch (c) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::variable_mismatch: return "VariableMismatch";
        case errc::substitution_constant_term: return "SubstitutionConstantTerm";
        case errc::zero_element: return "ZeroElement";
        case errc::zero_divisor: return "ZeroDivisor";
        case errc::noninvertible_leading_coefficient: return "NonInvertibleLeadingCoefficient";
        case errc::not_polynomial: return "NotPolynomial";
        case errc::certificate_unachievable: return "CertificateUnachievable";
        case errc::truncation_too_small: return "TruncationTooSmall";
        case errc::inconsistent: return "Inconsistent";
        case errc::rank_deficient_input: return "RankDeficientInput";
        case errc::unit_input: return "UnitInput";
        case errc::order_too_low: return "OrderTooLow";
        case errc::hook_failure: return "HookFailure";
        case errc::not_isolated: return "NotIsolated";
        case errc::not_complete_intersection: return "NotCompleteIntersection";
        case errc::not_a_solution: return "NotASolution";
        case errc::oracle_failure: return "OracleFailure";
        case errc::hypothesis_failure: return "HypothesisFailure";
        case errc::not_an_unfolding: return "NotAnUnfolding";
        case errc::not_a_deformation: return "NotADeformation";
        case errc::lift_failure: return "LiftFailure";
        case errc::not_detectable: return "NotDetectable";
        case errc::syntax_error: return "SyntaxError";
        case errc::unknown_variable: return "UnknownVariable";
        case errc::coefficient_not_in_field: return "CoefficientNotInField";
        case errc::bad_input: return "BadInput";
        case errc::internal: return "InternalError";
    }
    return "Error";
}

} // namespace germ
