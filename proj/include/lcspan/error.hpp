#pragma once

#include <stdexcept>
#include <string>

namespace lcspan {

// Malformed input, violated precondition, or dimension mismatch. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured size or search budget would be exceeded. CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lcspan
