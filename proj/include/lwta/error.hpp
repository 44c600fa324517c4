#pragma once

#include <stdexcept>
#include <string>

namespace lwta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with a primitive or layer.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents (IDX, CIFAR, checkpoint).
class FormatError : public Error {
public:
    using Error::Error;
};

/// A value is outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Training produced a non-finite quantity.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace lwta
