#ifndef QTEL_ERRORS_HPP
#define QTEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtel
{

// Raised when an argument falls outside the documented domain of an operation
// (non-member object fed to a bijection, negative cap, ...).
class precondition_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Raised by the cancelation iteration when the orbit does not reach the target
// set within the allotted number of applications.
class iteration_budget_exceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{

inline void require(bool cond, const std::string &msg)
{
    if (!cond) {
        throw precondition_error(msg);
    }
}

} // namespace detail

} // namespace qtel

#endif
