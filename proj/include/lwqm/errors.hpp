#pragma once
#include <stdexcept>
#include <string>

namespace lwqm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerics
struct NoConvergence : Error { using Error::Error; };
struct InvalidBracket : Error { using Error::Error; };
struct DivergentTail : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };

// special functions
struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct ParameterPole : Error { using Error::Error; };
struct ConnectionPole : Error { using Error::Error; };

// model / spectrum
struct NearSingularity : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };

// energy-dependent sector
struct DegenerateMap : Error { using Error::Error; };

// susy
struct VanishingTransform : Error { using Error::Error; };
struct PoleInDomain : Error { using Error::Error; };
struct SingularData : Error { using Error::Error; };

// integrals
struct NodeInInterval : Error { using Error::Error; };

// dirac
struct ZeroKy : Error { using Error::Error; };
struct ZeroV22 : Error { using Error::Error; };
struct DegenerateK0 : Error { using Error::Error; };
struct EnergyMismatch : Error { using Error::Error; };

} // namespace lwqm
