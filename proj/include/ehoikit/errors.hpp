#pragma once

#include <stdexcept>
#include <string>

namespace ehoi {

// Malformed input document (bad JSON, missing keys, unreadable file).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a schema invariant. Messages
// always name the offending record.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ehoi
