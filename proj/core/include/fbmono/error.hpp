#pragma once

#include <stdexcept>
#include <string>

namespace fbmono {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or config.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Mesh violates manifold or orientation invariants.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// Zero-area face or repeated curve vertex.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Parameter outside its valid range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fbmono
