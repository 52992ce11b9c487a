#ifndef ECDL_ERRORS_HPP
#define ECDL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecdl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ReducibleModulus : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NoSolution : Error { using Error::Error; };
struct NoRationalPoint : Error { using Error::Error; };
struct DegenerateGroup : Error { using Error::Error; };
struct UnsupportedCurveForm : Error { using Error::Error; };
struct ZeroLeadingForm : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };
struct BadArity : Error { using Error::Error; };
struct ResourceLimit : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NoKernel : Error { using Error::Error; };
struct DegenerateB : Error { using Error::Error; };
struct BudgetExhausted : Error { using Error::Error; };
struct LiftMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace ecdl

#endif
