// errors.hpp
// Exception hierarchy shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace contextlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidOperator : Error { using Error::Error; };
struct InvalidEffect : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidFragment : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };

struct DegenerateSpan : Error { using Error::Error; };
struct NotFullDimensional : Error { using Error::Error; };

struct InvalidNoiseDefinition : Error { using Error::Error; };
struct NotSelfDualCompatible : Error { using Error::Error; };

struct NoFiniteRobustness : Error { using Error::Error; };
struct SolverError : Error { using Error::Error; };
struct DegenerateModel : Error { using Error::Error; };

}  // namespace contextlab
