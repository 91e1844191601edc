#pragma once

#include <stdexcept>
#include <string>

namespace efrac {

/// Malformed input or violated structural precondition (non-nested chain,
/// M' not dividing M, bad cache header). Maps to CLI exit code 1.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its memory budget or configured cap.
/// Maps to CLI exit code 2.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace efrac
