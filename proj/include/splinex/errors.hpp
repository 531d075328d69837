#pragma once

#include <stdexcept>
#include <string>

namespace splinex {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A circulant system has an eigenvalue below the singularity tolerance.
struct SingularCirculant : Error {
    using Error::Error;
};

/// The finite biorthogonality system for a compact dual has no solution.
struct NoCompactDual : Error {
    using Error::Error;
};

/// The requested uniform-norm cap on a compact dual could not be met
/// within the support-growth retry limit.
struct NormCapUnreachable : Error {
    using Error::Error;
};

/// A masked grid contains no points.
struct EmptyDomain : Error {
    using Error::Error;
};

/// Unrecognized builtin domain name or malformed descriptor.
struct UnknownDomain : Error {
    using Error::Error;
};

/// The requested operation does not support the chosen Z specification.
struct UnsupportedZspec : Error {
    using Error::Error;
};

/// An ESRI ASCII grid or CSV mask file could not be parsed.
struct RasterParseError : Error {
    using Error::Error;
};

/// Raster dimensions are incompatible with the requested (q, N).
struct GridMismatch : Error {
    using Error::Error;
};

}  // namespace splinex
