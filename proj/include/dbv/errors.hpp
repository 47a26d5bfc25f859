#ifndef DBV_ERRORS_HPP
#define DBV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dbv {

/// A series was divided by a power of hbar it is not divisible by.
struct HbarDivisionError : std::domain_error
{
    using std::domain_error::domain_error;
};

/// Vectors or series over different bases / variable sets were combined.
struct BasisMismatch : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// A runtime-checked algebraic identity did not hold.
struct IdentityViolation : std::logic_error
{
    explicit IdentityViolation(const std::string &what, int t = -1, int hbar = -1)
        : std::logic_error(what), t_order(t), hbar_order(hbar)
    {
    }

    /// Series cell (t-order, hbar-order) where it failed; -1 when not tied to one.
    int t_order;
    int hbar_order;
};

/// The spectral sequence does not degenerate, so no splitting exists.
struct NotDegenerate : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

} // namespace dbv

#endif // DBV_ERRORS_HPP
