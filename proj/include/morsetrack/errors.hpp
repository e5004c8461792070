#ifndef MORSETRACK_ERRORS_HPP
#define MORSETRACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace morsetrack {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, meshes, values).
class InputError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage failed on structurally valid input.
class PipelineError : public Error {
public:
    using Error::Error;
};

/// A configurable enumeration cap was exceeded (V-path explosion guard).
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace morsetrack

#endif
