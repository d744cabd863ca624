// Text format for bipartite states:
//
//   {"dA": 2, "dB": 2,
//    "re": [[...], ...],   // row-major real parts, one array per row
//    "im": [[...], ...]}   // row-major imaginary parts
//
// Writers emit every number with 17 significant digits so a write/read
// cycle reproduces the matrix bit for bit.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ndlid/states.hpp"

namespace ndlid {

class StateFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parsed but not yet validated state file.
struct RawState {
  int dA = 0;
  int dB = 0;
  ComplexMatrix rho;
};

RawState parse_state(const std::string& text);
RawState read_state_file(const std::filesystem::path& path);

std::string serialize_state(const ComplexMatrix& rho, int dA, int dB);
inline std::string serialize_state(const BipartiteState& s) { return serialize_state(s.rho(), s.dA(), s.dB()); }
void write_state_file(const std::filesystem::path& path, const BipartiteState& state);

/// Shortest decimal form is not used; always 17 significant digits.
std::string format_double(double value);

}  // namespace ndlid
