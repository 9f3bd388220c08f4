#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "idect/cli.hpp"
#include "idect/errors.hpp"
#include "idect/problem_file.hpp"
#include "model_problems.hpp"

namespace fs = std::filesystem;
using namespace idect;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"idect"};
  owned.insert(owned.end(), args);
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) { return std::string(IDECT_SOURCE_DIR) + "/problems/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("idect_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = path / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Rows of a two-column CSV, header skipped.
std::vector<std::pair<double, double>> csv(const std::string& text) {
  std::vector<std::pair<double, double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

const char* kSimple = R"([domain]
T = 1
[equation]
order = 1
coeff_0 = 100
coeff_1 = 1
kind = volterra
kernel = exp(-u)
[constraints]
eval 0 = 1
)";

}  // namespace

TEST_CASE("problem files parse into the expected problem") {
  const auto pf = load_problem_file(problem("volterra_exp_kernel.ini"));
  CHECK(pf.problem.order == 1);
  CHECK(pf.problem.kind == IntegralKind::Volterra);
  CHECK(pf.problem.coeffs[0](0.3) == 100.0);
  CHECK(pf.problem.kernel(0.5) == doctest::Approx(std::exp(-0.5)));
  REQUIRE(pf.exact);
  CHECK((*pf.exact)(0.4) == doctest::Approx(model::exp_volterra_exact(100.0, 0.4)).epsilon(1e-14));

  const auto g = load_problem_file(problem("gaussian_fredholm.ini"));
  REQUIRE(g.problem.constraints.size() == 2);
  CHECK(g.problem.constraints[1].target == doctest::Approx(model::gaussian_mean(0.1)).epsilon(1e-15));
  CHECK(g.problem.integral_sign == -1.0);
}

TEST_CASE("problem file errors carry line numbers") {
  const auto error_line = [](const std::string& text) -> std::size_t {
    try {
      parse_problem_file(text, ".");
    } catch (const ProblemFileError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("[domain]\nT = 1\n[equation]\norder = 0\ncoeff_0 = 1\nbogus = 2\n") == 6);
  CHECK(error_line("[nowhere]\n") == 1);
  CHECK(error_line("[equation]\norder = 1\ncoeff_1 = 1\ncoeff_1 = 2\n") == 4);
  CHECK(error_line("[equation]\norder = 1\ncoeff_0 = 1\n") == 2);
  CHECK(error_line("[equation]\norder = 0\ncoeff_0 = 1\nkernel = u\n") == 4);
  CHECK(error_line("[equation]\norder = 1\ncoeff_1 = 1\n[constraints]\neval 2 = 1\n") == 5);
  CHECK(error_line("[equation]\norder = 2\ncoeff_2 = 1\n[constraints]\neval 0 = 1\n") == 4);

  try {
    parse_problem_file("[equation]\norder = 0\ncoeff_0 = 1 + * t\n", ".");
    FAIL("expected a parse error");
  } catch (const ProblemFileError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
}

TEST_CASE("solve writes samples and coefficients") {
  TempDir dir;
  const auto out = dir.file("sol.csv");
  const auto r = run({"solve", problem("volterra_exp_kernel.ini"), "--out", out});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("bandwidth:") != std::string::npos);
  CHECK(r.out.find("converged: yes") != std::string::npos);
  CHECK(r.out.find("bandwidth:") != std::string::npos);
  CHECK(r.out.find("residual:") != std::string::npos);
  const auto rows = csv(slurp(out));
  REQUIRE(rows.size() == 1000);
  CHECK(rows.front().first == 0.0);
  CHECK(rows.back().first == 1.0);
  CHECK(std::abs(rows.front().second - 1.0) <= 1e-11);
  double worst = 0.0;
  for (const auto& [t, y] : rows) worst = std::max(worst, std::abs(y - model::exp_volterra_exact(100.0, t)));
  CHECK(worst <= 1e-10);
  const auto coeffs = dir.path / "sol.coeffs.csv";
  REQUIRE(fs::exists(coeffs));
  CHECK(slurp(coeffs.string()).rfind("n,c_n\n", 0) == 0);

  // Same inputs, same bytes.
  const auto again = dir.file("again.csv");
  REQUIRE(run({"solve", problem("volterra_exp_kernel.ini"), "--out", again}).code == kExitOk);
  CHECK(slurp(out) == slurp(again));
  CHECK(slurp(coeffs.string()) == slurp((dir.path / "again.coeffs.csv").string()));
}

TEST_CASE("the mean constraint fixes the leading coefficient") {
  TempDir dir;
  const auto out = dir.file("g.csv");
  REQUIRE(run({"solve", problem("gaussian_fredholm.ini"), "--out", out}).code == kExitOk);
  const auto rows = csv(slurp((dir.path / "g.coeffs.csv").string()));
  REQUIRE(!rows.empty());
  CHECK(rows[0].second == doctest::Approx(model::gaussian_mean(0.1)).epsilon(1e-12));
}

TEST_CASE("eval reads coefficient files") {
  TempDir dir;
  const auto constant = dir.file("c.csv", "n,c_n\n0,2.5\n");
  const auto r = run({"eval", constant, "--points", "0,0.25,1"});
  REQUIRE(r.code == kExitOk);
  for (const auto& [t, y] : csv(r.out)) CHECK(y == 2.5);

  const auto out = dir.file("sol.csv");
  REQUIRE(run({"solve", problem("bessel_volterra.ini"), "--out", out}).code == kExitOk);
  const auto back = run({"eval", (dir.path / "sol.coeffs.csv").string(), "--points", "0.1,0.37,0.9"});
  REQUIRE(back.code == kExitOk);
  for (const auto& [t, y] : csv(back.out)) CHECK(std::abs(y - model::bessel_exact(3, 20.0, t)) <= 1e-12);

  const auto plain = dir.file("plain.txt", "1\n0.5\n");
  const auto p = run({"eval", plain, "--points", "1", "--T", "2"});
  REQUIRE(p.code == kExitOk);
  CHECK(csv(p.out)[0].second == 1.0);

  CHECK(run({"eval", constant, "--points", "1.5"}).code == kExitInput);
  CHECK(run({"eval", constant, "--points", "abc"}).code == kExitInput);
  CHECK(run({"eval", dir.file("missing.csv"), "--points", "0"}).code == kExitInput);
}

TEST_CASE("converge reports errors per degree") {
  const auto r = run({"converge", problem("volterra_exp_kernel.ini"), "--ns", "16,32,64,64"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("N,max_error\n", 0) == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].first == 16);
  CHECK(rows[3].second <= 1e-10);
  CHECK(rows[2].second == rows[3].second);
  CHECK(rows[0].second > rows[3].second);

  const auto e = run({"converge", problem("volterra_exp_kernel.ini"), "--ns", "64", "--exact",
                      "exp(-101/2*t) * (cosh(sqrt(9805)/2*t) - 99/sqrt(9805)*sinh(sqrt(9805)/2*t))"});
  REQUIRE(e.code == kExitOk);
  CHECK(csv(e.out)[0].second <= 1e-10);

  const auto s = run({"converge", problem("bessel_volterra_perturbed.ini"), "--ns", "128,512", "--self-ref"});
  REQUIRE(s.code == kExitOk);
  CHECK(csv(s.out)[1].second <= 1e-8);
  CHECK(run({"converge", problem("volterra_exp_kernel.ini"), "--exact", "t +"}).code == kExitInput);
}

TEST_CASE("spy lists the nonzero pattern") {
  const auto r = run({"spy", problem("fredholm_exp_kernel.ini"), "--n", "30"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("row,col\n", 0) == 0);
  std::vector<std::pair<std::size_t, std::size_t>> pattern;
  for (const auto& [i, j] : csv(r.out)) pattern.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  CHECK(count_dense_rows(pattern, 31) == 2);
}

TEST_CASE("input errors exit with status 1") {
  TempDir dir;
  const auto bad = dir.file("bad.ini", std::string(kSimple) + "[solver]\nspeed = 3\n");
  const auto r = run({"solve", bad});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("line 12") != std::string::npos);
  CHECK(run({"solve", dir.file("absent.ini")}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"solve", problem("volterra_exp_kernel.ini"), "--tol", "-1"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("tolerance precedence") {
  TempDir dir;
  const auto file = dir.file("p.ini", kSimple);
  const auto band_line = [](const std::string& out) {
    const auto at = out.find("bandwidth:");
    return out.substr(at, out.find('\n', at) - at);
  };
  ::setenv("IDECT_TOL", "1e-6", 1);
  const auto loose = run({"solve", file});
  ::setenv("IDECT_TOL", "garbage", 1);
  const auto garbage = run({"solve", file});
  const auto flag = run({"solve", file, "--tol", "1e-6"});
  ::unsetenv("IDECT_TOL");
  const auto tight = run({"solve", file});
  REQUIRE(loose.code == kExitOk);
  CHECK(garbage.code == kExitInput);
  CHECK(band_line(loose.out) == band_line(flag.out));
  CHECK(band_line(loose.out) != band_line(tight.out));

  const auto with_solver = dir.file("q.ini", std::string(kSimple) + "[solver]\ntol = 1e-6\n");
  ::setenv("IDECT_TOL", "1e-13", 1);
  const auto from_file = run({"solve", with_solver});
  ::unsetenv("IDECT_TOL");
  CHECK(band_line(from_file.out) == band_line(loose.out));
}

TEST_CASE("right-hand side from a coefficient file") {
  TempDir dir;
  dir.file("f.csv", "n,c_n\n0,1\n1,0.5\n");
  const auto file = dir.file("p.ini", "[equation]\norder = 0\ncoeff_0 = 2\nrhs = file:f.csv\n");
  const auto pf = load_problem_file(file);
  const auto sol = solve(pf.problem);
  CHECK(sol.y[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sol.y[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(run({"solve", dir.file("r.ini", "[equation]\norder = 0\ncoeff_0 = 2\nrhs = file:none.csv\n")}).code ==
        kExitInput);
}

TEST_CASE("hitting the degree cap exits with status 2") {
  TempDir dir;
  std::string text = slurp(problem("bessel_volterra_perturbed.ini"));
  text += "\n[solver]\nn_min = 16\nn_max = 32\n";
  const auto r = run({"solve", dir.file("cap.ini", text)});
  CHECK(r.code == kExitSolver);
  CHECK(r.out.find("converged: no") != std::string::npos);
  CHECK(r.err.find("warning:") != std::string::npos);
}
