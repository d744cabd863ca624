#include "ndlid/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ndlid {
namespace {

using nlohmann::json;

int read_dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw StateFormatError(std::string("state file: missing integer field '") + key + "'");
  }
  const auto value = doc[key].get<long long>();
  if (value < 1 || value > 64) throw StateFormatError(std::string("state file: '") + key + "' out of range");
  return static_cast<int>(value);
}

void read_part(const json& doc, const char* key, Eigen::Index n, bool imaginary, ComplexMatrix& rho) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw StateFormatError(std::string("state file: missing array field '") + key + "'");
  }
  const json& rows = doc[key];
  if (static_cast<Eigen::Index>(rows.size()) != n) {
    throw StateFormatError(std::string("state file: '") + key + "' must have dA*dB rows");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw StateFormatError(std::string("state file: row ") + std::to_string(i) + " of '" + key +
                             "' must have dA*dB entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) throw StateFormatError(std::string("state file: non-numeric entry in '") + key + "'");
      const double v = cell.get<double>();
      if (imaginary) {
        rho(i, j).imag(v);
      } else {
        rho(i, j).real(v);
      }
    }
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

RawState parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StateFormatError(std::string("state file: ") + e.what());
  }
  if (!doc.is_object()) throw StateFormatError("state file: top level must be an object");
  RawState out;
  out.dA = read_dimension(doc, "dA");
  out.dB = read_dimension(doc, "dB");
  const Eigen::Index n = static_cast<Eigen::Index>(out.dA) * out.dB;
  out.rho = ComplexMatrix::Zero(n, n);
  read_part(doc, "re", n, false, out.rho);
  read_part(doc, "im", n, true, out.rho);
  return out;
}

RawState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("cannot open state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

std::string serialize_state(const ComplexMatrix& rho, int dA, int dB) {
  std::ostringstream out;
  auto part = [&](const char* key, bool imaginary) {
    out << "  \"" << key << "\": [\n";
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      out << "    [";
      for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        if (j) out << ", ";
        out << format_double(imaginary ? rho(i, j).imag() : rho(i, j).real());
      }
      out << (i + 1 < rho.rows() ? "],\n" : "]\n");
    }
    out << "  ]";
  };
  out << "{\n  \"dA\": " << dA << ",\n  \"dB\": " << dB << ",\n";
  part("re", false);
  out << ",\n";
  part("im", true);
  out << "\n}\n";
  return out.str();
}

void write_state_file(const std::filesystem::path& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file " + path.string());
  out << serialize_state(state);
}

}  // namespace ndlid
