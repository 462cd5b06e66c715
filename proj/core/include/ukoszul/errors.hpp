#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ukoszul {

/// Malformed or semantically invalid user input (bad file, violated precondition).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in one of the text formats; `offset` is the byte position in the
/// string handed to the parser.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A configured enumeration or workspace limit would be exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource limits shared by every module. All of them can be overridden from the CLI.
struct Limits {
  std::size_t max_enum_dim = 6;       // ambient dimension for subspace enumeration
  std::size_t max_enum_points = 1024; // bound on p^dim for subspace enumeration
  std::size_t workspace = 20000;      // ambient coordinate count per degree
  int max_cap = 5;                    // degree cap accepted from users
  unsigned max_p = 97;
  std::size_t max_table_entries = std::size_t{1} << 26; // structure constants stored
};

}  // namespace ukoszul
