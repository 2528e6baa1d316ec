#ifndef WEYLFORGE_ERRORS_HPP
#define WEYLFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weylforge {

// Domain errors carry a stable machine-readable code (used by the CLI's
// structured error output) next to the human-readable message.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* not_prime = "NotPrime";
inline constexpr const char* budget_exceeded = "BudgetExceeded";
inline constexpr const char* division_by_zero = "DivisionByZero";
inline constexpr const char* descriptor_mismatch = "DescriptorMismatch";
inline constexpr const char* not_a_subfield = "NotASubfield";
inline constexpr const char* internal_error = "InternalError";
inline constexpr const char* not_squarefree = "NotSquarefree";
inline constexpr const char* genus_prime_conflict = "GenusPrimeConflict";
inline constexpr const char* not_cm_symmetric = "NotCMSymmetric";
inline constexpr const char* inconsistent_lift = "InconsistentLift";
inline constexpr const char* not_irreducible = "NotIrreducible";
inline constexpr const char* not_quartic = "NotQuartic";
inline constexpr const char* insufficient_census = "InsufficientCensus";
inline constexpr const char* degenerate_discriminant = "DegenerateD";
inline constexpr const char* bad_multiplier = "BadMultiplier";
inline constexpr const char* enumeration_too_large = "EnumerationTooLarge";
inline constexpr const char* conflicting_constraints = "ConflictingConstraints";
inline constexpr const char* empty_window = "EmptyWindow";
inline constexpr const char* bad_config = "BadConfig";
}  // namespace errc

}  // namespace weylforge

#endif
