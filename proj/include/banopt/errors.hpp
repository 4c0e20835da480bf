#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace banopt {

struct BanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or syntactic error in an expression or network file. `position`
// is a byte offset into the text handed to the parser.
struct ParseError : BanError {
  ParseError(const std::string& message, std::size_t position)
      : BanError(message), position(position) {}
  std::size_t position = 0;
};

// An expression exceeded the configured fan-in cap for truth-table work.
struct FanInCapError : BanError {
  using BanError::BanError;
};

// A network is too wide for exhaustive dynamics under the configured cap.
struct StateCapError : BanError {
  using BanError::BanError;
};

// An operation requiring a closed network was given a module with open inputs.
struct OpenInputsError : BanError {
  using BanError::BanError;
};

// An operation defined only for acyclic modules was given a cyclic one.
struct CyclicModuleError : BanError {
  using BanError::BanError;
};

// The essential-variables promise does not hold; one (node, variable) pair
// per inessential occurrence.
struct PromiseError : BanError {
  PromiseError(const std::string& message,
               std::vector<std::pair<std::string, std::string>> violations)
      : BanError(message), violations(std::move(violations)) {}
  std::vector<std::pair<std::string, std::string>> violations;
};

}  // namespace banopt
