#pragma once

#include <stdexcept>
#include <string>

namespace cwfkit {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// category-level failures
struct CompositionMismatch : Error { using Error::Error; };
struct CospanMismatch : Error { using Error::Error; };
struct ParallelPairMismatch : Error { using Error::Error; };
struct ChainMismatch : Error { using Error::Error; };
struct NotAPullback : Error { using Error::Error; };
struct ConeDoesNotCommute : Error { using Error::Error; };

// syntax-level failures
struct IllFormed : Error { using Error::Error; };
struct NonTermination : Error { using Error::Error; };

// interface-level failures
struct SortMismatch : Error { using Error::Error; };
struct FiberMismatch : Error { using Error::Error; };
struct MissingCapability : Error { using Error::Error; };
struct MissingLccCapability : Error { using Error::Error; };
struct BoundaryMismatch : Error { using Error::Error; };

// presheaf-model failures
struct BaseMismatch : Error { using Error::Error; };
struct NotASection : Error { using Error::Error; };
struct SectionMismatch : Error { using Error::Error; };

// morphism-level failures
struct NotLimitPreserving : Error { using Error::Error; };
struct NotNatural : Error { using Error::Error; };
struct InstanceMismatch : Error { using Error::Error; };

// reporting failures
struct EmptySampler : Error { using Error::Error; };

// cli failures
struct ParseError : Error { using Error::Error; };
struct ScopeError : Error { using Error::Error; };
struct ElaborationError : Error { using Error::Error; };
struct Unreadable : Error { using Error::Error; };

}  // namespace cwfkit
