#pragma once

#include <stdexcept>
#include <string>

namespace relmux {

// Bad input: malformed documents, violated preconditions, unsupported
// parameter combinations. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relmux
