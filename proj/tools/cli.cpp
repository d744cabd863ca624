#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include <CLI11.hpp>

#include "ndlid/measures.hpp"
#include "ndlid/selftest.hpp"
#include "ndlid/state_io.hpp"
#include "ndlid/sweep.hpp"

namespace ndlid::cli {
namespace {

struct Options {
  std::string state;
  double p = 2.0;
  std::string method = "auto";
  int starts = OptimizerConfig{}.starts;
  std::uint64_t seed = 0;
  std::string family;
  std::vector<std::string> grid;
  std::string measures;
  bool normalize = false;
  std::string out;
  std::string level = "quick";
};

OptimizerConfig make_config(const Options& o) {
  OptimizerConfig cfg;
  cfg.starts = o.starts;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

BipartiteState load_state(const std::string& path) {
  const RawState raw = read_state_file(path);
  return BipartiteState::validate(raw.rho, raw.dA, raw.dB);
}

void print_violations(const ValidationError& e, std::ostream& err) {
  err << "error: state is not a valid density matrix\n";
  for (const Violation& v : e.violations()) err << "  " << v.invariant << ": residual " << format_double(v.residual) << '\n';
}

int cmd_validate(const Options& o, std::ostream& out) {
  const BipartiteState s = load_state(o.state);
  out << "valid state: dA=" << s.dA() << " dB=" << s.dB() << '\n';
  return kSuccess;
}

int cmd_measure(const Options& o, std::ostream& out, std::ostream& err) {
  const BipartiteState s = load_state(o.state);
  const OptimizerConfig cfg = make_config(o);
  MeasureResult r;
  if (o.method == "closed") {
    if (o.p != 2.0) throw std::invalid_argument("--method closed is only available for p = 2");
    r = d2_closed(s);
  } else if (o.method == "direct") {
    r = d_p_direct(s, o.p);
  } else if (o.method == "optimize") {
    r = d_p_optimized(s, o.p, cfg);
  } else {
    r = d_p(s, o.p, cfg);
  }
  out << "value      " << format_double(r.value) << '\n';
  out << "p          " << format_double(r.p) << '\n';
  out << "method     " << to_string(r.method) << '\n';
  if (r.method == Method::optimized) {
    out << "starts     " << r.diagnostics.startsUsed << '\n';
    out << "iterations " << r.diagnostics.iterations << '\n';
    out << "gap        " << format_double(r.diagnostics.gap) << '\n';
    out << "converged  " << (r.diagnostics.converged ? "yes" : "no") << '\n';
    const ComplexMatrix& u = r.basis.unitary();
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      out << "basis[" << j << "]  ";
      for (Eigen::Index i = 0; i < u.rows(); ++i) {
        out << (i ? " " : "") << format_double(u(i, j).real()) << (u(i, j).imag() < 0 ? "" : "+")
            << format_double(u(i, j).imag()) << 'i';
      }
      out << '\n';
    }
  }
  if (r.diagnostics.radicandClamped) out << "note       radicand clamped to zero\n";
  if (r.method == Method::optimized && !r.diagnostics.converged) {
    err << "warning: optimizer did not converge within the iteration budget\n";
    return kNotConverged;
  }
  return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.family = parse_family(o.family);
  for (const std::string& g : o.grid) spec.grid.push_back(parse_grid_axis(g));
  spec.measures = o.measures.empty() ? family_measures(spec.family) : parse_measure_list(o.measures);
  spec.normalize = o.normalize;
  spec.config = make_config(o);
  spec.validate();

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot open '" + o.out + "' for writing");
  }
  const SweepTable table = run_sweep(spec);
  const std::string csv = to_csv(table);
  if (o.out.empty()) {
    out << csv;
  } else {
    file << csv;
    file.close();
    if (!file) throw std::invalid_argument("failed writing '" + o.out + "'");
    out << "wrote " << table.rows.size() << " rows to " << o.out << '\n';
  }
  if (!table.converged) {
    err << "warning: some optimized values did not converge within the iteration budget\n";
    return kNotConverged;
  }
  return kSuccess;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  SelftestOptions opt;
  opt.level = parse_selftest_level(o.level);
  opt.seed = o.seed;
  const SelftestReport report = run_selftest(opt);
  out << format_report(report);
  return report.passed() ? kSuccess : kInternalError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutator-based quantum-correlation measures D_p"};
  app.require_subcommand(1);
  Options o;

  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--starts", o.starts, "Random optimizer starts")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for the random starts");
  };

  CLI::App* measure = app.add_subcommand("measure", "Compute D_p of a state file");
  measure->add_option("--state", o.state, "State file (JSON)")->required();
  measure->add_option("--p", o.p, "Schatten index p >= 1");
  measure->add_option("--method", o.method, "auto|closed|direct|optimize")
      ->check(CLI::IsMember({"auto", "closed", "direct", "optimize"}));
  add_search(measure);

  CLI::App* validate = app.add_subcommand("validate", "Check that a state file holds a density matrix");
  validate->add_option("--state", o.state, "State file (JSON)")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate measures over a built-in family");
  sweep->add_option("--family", o.family, "werner|qc|pure2q")->required();
  sweep->add_option("--grid", o.grid, "name=min:max:steps (repeatable)")->required();
  sweep->add_option("--measures", o.measures, "Comma list of d1,d2,dG,dG1,q,concurrence,ep");
  sweep->add_flag("--normalize", o.normalize, "Scale each measure column to maximum 1");
  sweep->add_option("--out", o.out, "CSV output path (default: standard output)");
  add_search(sweep);

  CLI::App* selftest = app.add_subcommand("selftest", "Run the property suite");
  selftest->add_option("--level", o.level, "quick|full")->check(CLI::IsMember({"quick", "full"}));
  selftest->add_option("--seed", o.seed, "Seed for the random inputs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (*measure) return cmd_measure(o, out, err);
    if (*validate) return cmd_validate(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*selftest) return cmd_selftest(o, out);
  } catch (const ValidationError& e) {
    print_violations(e, err);
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace ndlid::cli
