#pragma once

#include <stdexcept>
#include <string>

namespace polystab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// polytope construction / verification
struct UnboundedPolytope : Error { using Error::Error; };
struct EmptyOrLowerDimensional : Error { using Error::Error; };
struct InactiveLabel : Error {
  int index;
  explicit InactiveLabel(int i)
      : Error("label " + std::to_string(i) + " does not cut a facet"), index(i) {}
};
struct NonPrimitiveNormal : Error {
  int index;
  explicit NonPrimitiveNormal(int i)
      : Error("label " + std::to_string(i) + " has a non-primitive normal"), index(i) {}
};
struct DegenerateHyperplane : Error { using Error::Error; };

// integration
struct DimensionMismatch : Error { using Error::Error; };
struct EvaluatorFailure : Error { using Error::Error; };

// weights
struct PoleNotCancelled : Error { using Error::Error; };
struct KaehlerConeViolation : Error { using Error::Error; };
struct SingularGram : Error { using Error::Error; };

// functionals / norms
struct LPUnbounded : Error { using Error::Error; };
struct LPInfeasible : Error { using Error::Error; };
struct BasePointOnBoundary : Error { using Error::Error; };

// test configurations
struct EmptyPieceList : Error { using Error::Error; };
struct NotStrictlyPositive : Error { using Error::Error; };
struct NonIntegerSlope : Error { using Error::Error; };

// fibration
struct PullbackNotConstantAlongFibers : Error { using Error::Error; };

// mabuchi / numerics
struct NotConvex : Error { using Error::Error; };
struct FDInstability : Error { using Error::Error; };

// stability search
struct EnvelopeDegenerate : Error { using Error::Error; };

}  // namespace polystab
