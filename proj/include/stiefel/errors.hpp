#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

// Bad user-supplied data (malformed files, non-finite entries, shape mismatch).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured cap was hit (table weight cap, uncertifiable tail).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stiefel
