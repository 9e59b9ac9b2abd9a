#pragma once

#include <stdexcept>
#include <string>

namespace coordmech {

// Malformed documents, bad literals, invalid matrices.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violations: machine not in a strategy set, wrong mechanism, bad k.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Refusal to enumerate past a configured cap; the message names the cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace coordmech
