// Parameter sweeps over the built-in two-qubit families (Werner,
// quantum-classical, pure) producing CSV tables of measures.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ndlid/optimizer.hpp"

namespace ndlid {

class SweepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { werner, qc, pure2q };

Family parse_family(const std::string& name);
std::string to_string(Family f);

/// Parameter names of a family, in CSV column order:
///   werner: a;  qc: p, s0, s1, phi;  pure2q: sqrtlambda
/// (pure2q is sqrt(l)|00> + sqrt(1 - l)|11> with sqrtlambda = sqrt(l)).
std::vector<std::string> family_parameters(Family f);

/// Values used for parameters that no grid axis covers.
std::vector<double> family_defaults(Family f);

/// Measures a family supports: d1, d2, dG, concurrence everywhere; dG1 for
/// werner and qc; q for qc; ep (E_1 of the pure state) for pure2q.
std::vector<std::string> family_measures(Family f);

struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;  // number of points, endpoints included

  double value(int k) const;
};

/// Parses "name=min:max:steps".
GridAxis parse_grid_axis(const std::string& text);

/// Splits "d1,d2,dG" on commas, trimming blanks.
std::vector<std::string> parse_measure_list(const std::string& text);

struct SweepSpec {
  Family family = Family::werner;
  std::vector<GridAxis> grid;
  std::vector<std::string> measures;
  bool normalize = false;
  OptimizerConfig config;

  /// Throws SweepError: empty grid or measure list, unknown or repeated
  /// names, measures the family does not support, invalid ranges.
  void validate() const;
};

struct SweepTable {
  std::vector<std::string> header;  // family parameters, then measures
  std::vector<std::vector<double>> rows;
  bool converged = true;  // every optimized value converged
};

/// Evaluates every grid point (Cartesian product, first axis outermost).
/// With normalize set, each measure column is divided by its maximum.
SweepTable run_sweep(const SweepSpec& spec);

/// Header plus rows, 17 significant digits, '\n' line ends.
std::string to_csv(const SweepTable& table);

}  // namespace ndlid
