#pragma once

#include <stdexcept>
#include <string>

namespace zlb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameter values or violated preconditions.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// p = q = 1: the ergodic weight is undefined.
class DegenerateChain : public Error {
public:
    using Error::Error;
};

// A scalar or matrix that must be inverted is (numerically) singular.
class Singularity : public Error {
public:
    using Error::Error;
};

// Iterations that fail to converge, brackets that cannot be found, etc.
class NumericFailure : public Error {
public:
    using Error::Error;
};

}  // namespace zlb
