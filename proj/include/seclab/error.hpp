#ifndef SECLAB_ERROR_HPP_
#define SECLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace seclab {

  enum class ErrorKind {
    // group-core
    TableOutOfRange,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    ClosureBound,
    NotASubgroup,
    NotAHomomorphism,
    NotNormal,
    // extensions
    NotInjective,
    NotSurjective,
    NotExact,
    NotNormalInE,
    NotAnAction,
    NotALift,
    DifferenceEscapesA,
    // cohomology
    NotACocycle,
    NotACocycleForThisAction,
    ActionMismatch,
    NotTrivialOnKernel,
    // localglobal
    NotASectionMap,
    IncompatibleTower,
    // cli
    SyntaxError,
    UnknownName,
    ValidationError,
    BoundExceeded,
    // an asserted theorem failed to hold; always a bug or a counterexample
    InvariantViolated
  };

  constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
      case ErrorKind::TableOutOfRange: return "TableOutOfRange";
      case ErrorKind::NotAssociative: return "NotAssociative";
      case ErrorKind::NoIdentity: return "NoIdentity";
      case ErrorKind::NoInverse: return "NoInverse";
      case ErrorKind::NotAPermutation: return "NotAPermutation";
      case ErrorKind::ClosureBound: return "ClosureBound";
      case ErrorKind::NotASubgroup: return "NotASubgroup";
      case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
      case ErrorKind::NotNormal: return "NotNormal";
      case ErrorKind::NotInjective: return "NotInjective";
      case ErrorKind::NotSurjective: return "NotSurjective";
      case ErrorKind::NotExact: return "NotExact";
      case ErrorKind::NotNormalInE: return "NotNormalInE";
      case ErrorKind::NotAnAction: return "NotAnAction";
      case ErrorKind::NotALift: return "NotALift";
      case ErrorKind::DifferenceEscapesA: return "DifferenceEscapesA";
      case ErrorKind::NotACocycle: return "NotACocycle";
      case ErrorKind::NotACocycleForThisAction: return "NotACocycleForThisAction";
      case ErrorKind::ActionMismatch: return "ActionMismatch";
      case ErrorKind::NotTrivialOnKernel: return "NotTrivialOnKernel";
      case ErrorKind::NotASectionMap: return "NotASectionMap";
      case ErrorKind::IncompatibleTower: return "IncompatibleTower";
      case ErrorKind::SyntaxError: return "SyntaxError";
      case ErrorKind::UnknownName: return "UnknownName";
      case ErrorKind::ValidationError: return "ValidationError";
      case ErrorKind::BoundExceeded: return "BoundExceeded";
      case ErrorKind::InvariantViolated: return "InvariantViolated";
    }
    return "Unknown";
  }

  // All library failures are reported through this type; kind() is the
  // machine-checkable part, what() carries the witness in prose.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
          _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  namespace detail {
    [[noreturn]] inline void fail(ErrorKind kind, std::string const& detail) {
      throw Error(kind, detail);
    }

    inline void ensure(bool cond, std::string const& what) {
      if (!cond) {
        throw Error(ErrorKind::InvariantViolated, what);
      }
    }
  }  // namespace detail

}  // namespace seclab

#endif  // SECLAB_ERROR_HPP_
