#include "ndlid/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "ndlid/baselines.hpp"
#include "ndlid/entanglement.hpp"
#include "ndlid/measures.hpp"
#include "ndlid/state_io.hpp"

namespace ndlid {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw SweepError("grid: cannot parse " + what + " '" + text + "'");
  }
  return v;
}

struct Range {
  double lo, hi;
};

Range parameter_range(Family f, const std::string& name) {
  if (f == Family::werner) return {-1.0, 1.0};
  if (f == Family::qc && name == "phi") return {0.0, std::numbers::pi};
  return {0.0, 1.0};
}

struct PointResult {
  std::vector<double> values;
  bool converged = true;
};

PointResult evaluate(const SweepSpec& spec, const std::vector<double>& params) {
  BipartiteState state = BipartiteState::validate(ComplexMatrix::Identity(4, 4) / 4.0, 2, 2);
  std::optional<PureState> pure;
  QcParams qc;
  switch (spec.family) {
    case Family::werner:
      state = werner(params[0]);
      break;
    case Family::qc:
      qc = {params[0], params[1], params[2], params[3]};
      qc.validate();
      state = qc_state(qc.p, qc.s0, qc.s1, qc.phi);
      break;
    case Family::pure2q: {
      const double l = std::clamp(params[0] * params[0], 0.0, 1.0);
      RealVector lam(2);
      lam << l, 1.0 - l;
      pure = pure_from_schmidt(lam);
      state = pure->to_state();
      break;
    }
  }

  PointResult out;
  for (const std::string& m : spec.measures) {
    double v = 0.0;
    if (m == "d1") {
      const MeasureResult r = d_p(state, 1.0, spec.config);
      out.converged = out.converged && r.diagnostics.converged;
      v = r.value;
    } else if (m == "d2") {
      v = d2_closed(state).value;
    } else if (m == "dG") {
      v = geometric_discord_2q(state);
    } else if (m == "dG1") {
      v = spec.family == Family::werner ? one_norm_gd_werner(params[0]) : one_norm_gd_qc(qc);
    } else if (m == "q") {
      v = q_measure_qc(qc);
    } else if (m == "concurrence") {
      v = pure ? concurrence_pure(*pure) : concurrence(state);
    } else if (m == "ep") {
      v = e_p_pure(*pure, 1.0);
    }
    out.values.push_back(v);
  }
  return out;
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "werner") return Family::werner;
  if (name == "qc") return Family::qc;
  if (name == "pure2q") return Family::pure2q;
  throw SweepError("unknown family '" + name + "' (expected werner, qc or pure2q)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::werner:
      return "werner";
    case Family::qc:
      return "qc";
    case Family::pure2q:
      return "pure2q";
  }
  return "unknown";
}

std::vector<std::string> family_parameters(Family f) {
  switch (f) {
    case Family::werner:
      return {"a"};
    case Family::qc:
      return {"p", "s0", "s1", "phi"};
    case Family::pure2q:
      return {"sqrtlambda"};
  }
  return {};
}

std::vector<double> family_defaults(Family f) {
  switch (f) {
    case Family::werner:
      return {0.0};
    case Family::qc:
      return {2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, std::numbers::pi / 3.0};
    case Family::pure2q:
      return {std::sqrt(0.5)};
  }
  return {};
}

std::vector<std::string> family_measures(Family f) {
  switch (f) {
    case Family::werner:
      return {"d1", "d2", "dG", "dG1", "concurrence"};
    case Family::qc:
      return {"d1", "d2", "dG", "dG1", "q", "concurrence"};
    case Family::pure2q:
      return {"d1", "d2", "dG", "concurrence", "ep"};
  }
  return {};
}

double GridAxis::value(int k) const {
  if (steps <= 1) return min;
  if (k == steps - 1) return max;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

GridAxis parse_grid_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw SweepError("grid: expected name=min:max:steps, got '" + text + "'");
  GridAxis axis;
  axis.name = trim(text.substr(0, eq));
  std::vector<std::string> parts;
  std::stringstream rest(text.substr(eq + 1));
  for (std::string piece; std::getline(rest, piece, ':');) parts.push_back(piece);
  if (axis.name.empty() || parts.size() != 3) {
    throw SweepError("grid: expected name=min:max:steps, got '" + text + "'");
  }
  axis.min = parse_number(parts[0], "min");
  axis.max = parse_number(parts[1], "max");
  const double steps = parse_number(parts[2], "steps");
  if (steps < 1 || steps != std::floor(steps) || steps > 1e6) {
    throw SweepError("grid: steps must be a positive integer, got '" + parts[2] + "'");
  }
  axis.steps = static_cast<int>(steps);
  return axis;
}

std::vector<std::string> parse_measure_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string piece; std::getline(in, piece, ',');) {
    piece = trim(piece);
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

void SweepSpec::validate() const {
  config.validate();
  if (grid.empty()) throw SweepError("sweep: at least one --grid axis is required");
  if (measures.empty()) throw SweepError("sweep: no measures requested");
  const auto names = family_parameters(family);
  std::set<std::string> seen;
  for (const GridAxis& axis : grid) {
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      throw SweepError("sweep: family " + to_string(family) + " has no parameter '" + axis.name + "'");
    }
    if (!seen.insert(axis.name).second) throw SweepError("sweep: parameter '" + axis.name + "' gridded twice");
    if (axis.steps < 1) throw SweepError("sweep: steps must be positive");
    const Range r = parameter_range(family, axis.name);
    constexpr double slack = 1e-12;
    auto inside = [&](double v) { return v >= r.lo - slack && v <= r.hi + slack; };
    if (!inside(axis.min) || !inside(axis.max)) {
      throw SweepError("sweep: range of '" + axis.name + "' leaves [" + format_double(r.lo) + ", " +
                       format_double(r.hi) + "]");
    }
  }
  const auto allowed = family_measures(family);
  std::set<std::string> requested;
  for (const std::string& m : measures) {
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
      throw SweepError("sweep: measure '" + m + "' is not available for family " + to_string(family));
    }
    if (!requested.insert(m).second) throw SweepError("sweep: measure '" + m + "' requested twice");
  }
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto names = family_parameters(spec.family);
  std::vector<double> params = family_defaults(spec.family);
  std::vector<std::size_t> slot;
  for (const GridAxis& axis : spec.grid) {
    slot.push_back(static_cast<std::size_t>(std::find(names.begin(), names.end(), axis.name) - names.begin()));
  }

  SweepTable table;
  table.header = names;
  table.header.insert(table.header.end(), spec.measures.begin(), spec.measures.end());

  std::vector<int> index(spec.grid.size(), 0);
  while (true) {
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
      const Range r = parameter_range(spec.family, spec.grid[g].name);
      params[slot[g]] = std::clamp(spec.grid[g].value(index[g]), r.lo, r.hi);
    }
    const PointResult point = evaluate(spec, params);
    table.converged = table.converged && point.converged;
    std::vector<double> row = params;
    row.insert(row.end(), point.values.begin(), point.values.end());
    table.rows.push_back(std::move(row));

    // Odometer increment, last axis fastest.
    std::size_t g = spec.grid.size();
    while (g > 0 && ++index[g - 1] == spec.grid[g - 1].steps) {
      index[g - 1] = 0;
      --g;
    }
    if (g == 0) break;
  }

  if (spec.normalize) {
    for (std::size_t c = names.size(); c < table.header.size(); ++c) {
      double peak = 0.0;
      for (const auto& row : table.rows) peak = std::max(peak, row[c]);
      if (peak > 0.0) {
        for (auto& row : table.rows) row[c] /= peak;
      }
    }
  }
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ndlid
