#include "idect/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "idect/errors.hpp"
#include "idect/problem_file.hpp"
#include "idect/solver.hpp"

namespace idect {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Settings {
  std::string file;
  std::string out;
  std::size_t grid = 1000;
  std::vector<std::size_t> ns = {16, 32, 64, 128, 256, 512, 1024};
  std::string exact;
  bool self_ref = false;
  std::size_t spy_n = 60;
  std::string points;
  double length = 1.0;
  std::optional<double> tol;
};

// Thrown for anything the user can fix in the input; mapped to exit 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double resolve_tol(const Settings& s, const ProblemFile& pf) {
  if (s.tol) return *s.tol;
  if (pf.tol) return *pf.tol;
  if (const char* env = std::getenv("IDECT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw InputError(std::string("invalid IDECT_TOL '") + env + "'");
    return v;
  }
  return SolveOptions{}.tol;
}

ProblemFile load(const Settings& s) {
  try {
    return load_problem_file(s.file);
  } catch (const ProblemFileError& e) {
    throw InputError(s.file + ": " + e.what());
  }
}

// Writes through `fn` to the file at `path`, or to `out` when it is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  fn(f);
}

std::filesystem::path sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension();
  p += ".coeffs.csv";
  return p;
}

int cmd_solve(const Settings& s, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load(s);
  SolveOptions opts;
  opts.tol = resolve_tol(s, pf);
  if (pf.n_min) opts.n_min = *pf.n_min;
  if (pf.n_max) opts.n_max = *pf.n_max;
  const Solution sol = solve(pf.problem, opts);

  if (!s.out.empty()) {
    const auto samples = equispaced(sol.y.domain(), s.grid);
    const auto values = evaluate(sol.y, samples);
    emit(s.out, out, [&](std::ostream& o) {
      o << "t,y\n";
      for (std::size_t i = 0; i < samples.size(); ++i) {
        o << format_number(samples[i]) << ',' << format_number(values[i]) << '\n';
      }
    });
    emit(sidecar_path(s.out).string(), out, [&](std::ostream& o) {
      o << "n,c_n\n";
      for (std::size_t n = 0; n < sol.y.size(); ++n) o << n << ',' << format_number(sol.y[n]) << '\n';
    });
  }
  const Diagnostics& d = sol.diagnostics;
  out << "N_used: " << sol.degree_used << '\n'
      << "converged: " << (sol.converged ? "yes" : "no") << '\n'
      << "bandwidth: " << d.lower_bandwidth << " lower, " << d.upper_bandwidth << " upper\n"
      << "dense_rows: " << d.dense_rows << '\n'
      << "residual: " << format_number(sol.residual) << '\n'
      << "trailing_magnitude: " << format_number(d.trailing_magnitude) << '\n'
      << "solve_seconds: " << format_number(d.solve_seconds) << '\n';
  for (const auto& w : d.warnings) err << "warning: " << w << '\n';
  return sol.converged ? kExitOk : kExitSolver;
}

int cmd_converge(const Settings& s, std::ostream& out, std::ostream&) {
  const ProblemFile pf = load(s);
  const double tol = resolve_tol(s, pf);
  std::optional<ScalarFunction> reference;
  if (!s.exact.empty()) {
    Expr e;
    try {
      e = parse(s.exact);
    } catch (const Error& ex) {
      throw InputError(std::string("--exact: ") + ex.what());
    }
    reference = [e](double t) { return e(t); };
  } else if (!s.self_ref && pf.exact) {
    const Expr e = *pf.exact;
    reference = [e](double t) { return e(t); };
  }
  const PreparedProblem prepared = prepare(pf.problem, tol);
  const auto records = convergence_study(prepared, s.ns, reference, tol);
  emit(s.out, out, [&](std::ostream& o) {
    o << "N,max_error\n";
    for (const auto& r : records) o << r.degree << ',' << format_number(r.max_error) << '\n';
  });
  return kExitOk;
}

int cmd_spy(const Settings& s, std::ostream& out, std::ostream&) {
  const ProblemFile pf = load(s);
  const AssembledSystem sys = assemble(pf.problem, s.spy_n, resolve_tol(s, pf));
  const auto pattern = spy_pattern(sys.matrix);
  emit(s.out, out, [&](std::ostream& o) {
    o << "row,col\n";
    for (const auto& [i, j] : pattern) o << i << ',' << j << '\n';
  });
  return kExitOk;
}

int cmd_eval(const Settings& s, std::ostream& out, std::ostream&) {
  std::vector<double> coeffs;
  try {
    coeffs = read_coefficients(s.file);
  } catch (const ProblemFileError& e) {
    throw InputError(s.file + ": " + e.what());
  }
  if (!(s.length > 0.0)) throw InputError("--T must be positive");
  const LegendreSeries series(Domain(s.length), std::move(coeffs));
  std::vector<double> points;
  std::stringstream ss(s.points);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double t = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || item.find_first_not_of(" \t", static_cast<std::size_t>(end - item.c_str())) != std::string::npos) {
      throw InputError("--points: '" + item + "' is not a number");
    }
    if (!series.domain().contains(t)) {
      throw InputError("point " + item + " outside [0, " + format_number(s.length) + "]");
    }
    points.push_back(t);
  }
  const auto values = evaluate(series, points);
  emit(s.out, out, [&](std::ostream& o) {
    o << "t,y\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      o << format_number(points[i]) << ',' << format_number(values[i]) << '\n';
    }
  });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral solver for Volterra and Fredholm integro-differential equations", "idect"};
  app.require_subcommand(1);
  Settings s;
  double tol = 0.0;
  const auto add_tol = [&](CLI::App* c) {
    return c->add_option("--tol", tol, "Solver tolerance (overrides the file and IDECT_TOL)")
        ->check(CLI::PositiveNumber);
  };

  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("file", s.file, "Problem file")->required();
  solve_cmd->add_option("--out", s.out, "Sample CSV (t,y); coefficients go to <stem>.coeffs.csv");
  solve_cmd->add_option("--grid", s.grid, "Number of equispaced samples")->check(CLI::PositiveNumber);
  add_tol(solve_cmd);

  auto* conv_cmd = app.add_subcommand("converge", "Max error against a reference for several N");
  conv_cmd->add_option("file", s.file, "Problem file")->required();
  conv_cmd->add_option("--ns", s.ns, "Comma-separated truncation degrees")->delimiter(',');
  auto* exact_opt = conv_cmd->add_option("--exact", s.exact, "Exact solution expression in t");
  conv_cmd->add_flag("--self-ref", s.self_ref, "Compare against a solve at 2 max(N)")->excludes(exact_opt);
  conv_cmd->add_option("--out", s.out, "Output CSV (default stdout)");
  add_tol(conv_cmd);

  auto* spy_cmd = app.add_subcommand("spy", "Nonzero pattern of the assembled matrix");
  spy_cmd->add_option("file", s.file, "Problem file")->required();
  spy_cmd->add_option("--n", s.spy_n, "Truncation degree")->check(CLI::PositiveNumber);
  spy_cmd->add_option("--out", s.out, "Output CSV (default stdout)");
  add_tol(spy_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a coefficient file");
  eval_cmd->add_option("file", s.file, "Coefficient file (n,c_n rows or one value per line)")->required();
  eval_cmd->add_option("--points", s.points, "Comma-separated points t")->required();
  eval_cmd->add_option("--T", s.length, "Interval length");
  eval_cmd->add_option("--out", s.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  for (auto* c : {solve_cmd, conv_cmd, spy_cmd}) {
    if (c->parsed() && c->count("--tol") > 0) s.tol = tol;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(s, out, err);
    if (conv_cmd->parsed()) return cmd_converge(s, out, err);
    if (spy_cmd->parsed()) return cmd_spy(s, out, err);
    return cmd_eval(s, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace idect
