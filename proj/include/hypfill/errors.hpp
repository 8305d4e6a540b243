#pragma once

#include <stdexcept>
#include <string>

namespace hypfill {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

// A checked postcondition failed; indicates a bug or numerical breakdown.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class CornerHitError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace hypfill
