#pragma once

#include <stdexcept>
#include <string>

namespace sentplan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// load-time errors
struct ParseError : Error { using Error::Error; };
struct ArityClash : Error { using Error::Error; };
struct UnboundVariable : Error { using Error::Error; };
struct FootNodeViolation : Error { using Error::Error; };

// knowledge
struct NonGroundFact : Error { using Error::Error; };

// grammar combination
struct NotASite : Error { using Error::Error; };
struct CategoryMismatch : Error { using Error::Error; };
struct FeatureClash : Error { using Error::Error; };
struct IndexArityMismatch : Error { using Error::Error; };
struct CannotAdjoinAtLeaf : Error { using Error::Error; };
struct IncompleteTree : Error { using Error::Error; };

// lexicon
struct NoTruthfulInstantiation : Error { using Error::Error; };
struct UncoveredVariable : Error { using Error::Error; };

// reference
struct MissingContextSet : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct SearchBoundExceeded : Error { using Error::Error; };

}  // namespace sentplan
