#pragma once

#include <stdexcept>
#include <string>

namespace spinor_lab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad files, bad indices, bad levels).
class InputError : public Error {
public:
    using Error::Error;
};

/// A spectral computation found something it refuses to round away.
class SpectrumError : public Error {
public:
    using Error::Error;
};

}  // namespace spinor_lab
