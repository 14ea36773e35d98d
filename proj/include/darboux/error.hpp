#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- jets ---
struct DivisionBySingularJet : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct OrderExceeded : Error { using Error::Error; };
struct OrderMismatch : Error { using Error::Error; };

// --- octonions / quadric ---
struct NotIsotropic : Error { using Error::Error; };
struct ZeroElement : Error { using Error::Error; };
struct AmbiguousFamily : Error { using Error::Error; };
struct SameFamily : Error { using Error::Error; };
struct IncompatibleArguments : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

// --- surfaces / triplets ---
struct UnknownPair : Error { using Error::Error; };
struct NotImmersion : Error { using Error::Error; };
struct NotIsometricDeformation : Error { using Error::Error; };
struct InconsistentSystem : Error { using Error::Error; };
struct TangentPlaneThroughOrigin : Error { using Error::Error; };
struct BothRoutesUnavailable : Error { using Error::Error; };
struct PolarUndefined : Error { using Error::Error; };
struct BadWord : Error { using Error::Error; };

// --- gauss / forms / incidence ---
struct DegeneratePoint : Error { using Error::Error; };
struct DegenerateSecondary : Error { using Error::Error; };
struct DirectionMismatch : Error { using Error::Error; };
struct TableViolation : Error { using Error::Error; };
struct NotIncident : Error { using Error::Error; };
struct ChartDegenerate : Error { using Error::Error; };

// --- cli ---
struct UnknownSuite : Error { using Error::Error; };
struct UnknownSurface : Error { using Error::Error; };

}
