#pragma once

#include <stdexcept>
#include <string>

namespace proplie {

// Failure classes surfaced across the library.  Input/domain problems map to
// CLI exit code 2, computation/assertion problems to exit code 1.
enum class ErrKind {
    BadInput,                 // malformed files, bad parameters
    NotAUnit,                 // inversion of a non-unit
    NotPIntegral,             // rational with denominator divisible by p
    OutsideConvergenceDomain, // exp/log argument outside its domain
    UnsupportedOrder,         // automorphism order not dividing p-1, or p=2
    InsufficientPrecision,    // requested level exceeds working precision
    ConvergenceFailure,       // iterative limit failed to stabilize
    BudgetExceeded,           // explicit-set closure ran past the element budget
    InconsistentInput,        // semantically contradictory input data
    Internal,                 // violated internal certificate or invariant
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrKind kind() const { return kind_; }

    bool is_input_error() const {
        switch (kind_) {
        case ErrKind::BadInput:
        case ErrKind::NotAUnit:
        case ErrKind::NotPIntegral:
        case ErrKind::UnsupportedOrder:
        case ErrKind::InsufficientPrecision:
        case ErrKind::InconsistentInput:
            return true;
        default:
            return false;
        }
    }

  private:
    ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace proplie
