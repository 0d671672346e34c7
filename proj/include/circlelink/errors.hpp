#pragma once

#include <stdexcept>
#include <string>

namespace circlelink {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph construction / lookup
struct NegativeWeight : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };

// ego-network extraction
struct EmptyProfile : Error { using Error::Error; };
struct FutureTimestamp : Error { using Error::Error; };
struct EmptyEgoNetwork : Error { using Error::Error; };

// slicing / similarity
struct MissingEgoNetwork : Error { using Error::Error; };
struct SameNode : Error { using Error::Error; };

// unsupervised prediction
struct EmptyCandidatePool : Error { using Error::Error; };
struct NoPositives : Error { using Error::Error; };
struct MismatchedEgoSets : Error { using Error::Error; };

// supervised prediction
struct FoldOutOfRange : Error { using Error::Error; };
struct InsufficientNegatives : Error { using Error::Error; };
struct SingleClassTrainingSet : Error { using Error::Error; };
struct NonFiniteFeature : Error { using Error::Error; };

// I/O and generators
struct ParseError : Error { using Error::Error; };
struct EmptyFile : Error { using Error::Error; };
struct InfeasibleSpec : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace circlelink
