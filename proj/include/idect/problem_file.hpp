#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "idect/funcparse.hpp"
#include "idect/solver.hpp"

namespace idect {

// Sectioned key = value text describing one problem:
//
//   [domain]       T
//   [equation]     order, coeff_0 .. coeff_r, kind, kernel, g, h, sign, rhs
//   [constraints]  eval <t0> = <target>, deriv <t0> = <target>, mean = <target>
//   [solver]       tol, n_min, n_max
//   [reference]    exact
//
// Blank lines and lines starting with '#' or ';' are ignored. `rhs` may be
// "file:<path>" naming a coefficient list, resolved against `base_dir`.
struct ProblemFile {
  IdeProblem problem;
  std::optional<double> tol;
  std::optional<std::size_t> n_min;
  std::optional<std::size_t> n_max;
  std::optional<Expr> exact;
};

/// Throws ProblemFileError (with the 1-based line) for malformed input.
ProblemFile parse_problem_file(std::string_view text, const std::filesystem::path& base_dir = {});
ProblemFile load_problem_file(const std::filesystem::path& path);

/// Coefficients from a file holding one value per line or `n,c_n` rows
/// (as written by `idect solve`). Throws ProblemFileError.
std::vector<double> read_coefficients(const std::filesystem::path& path);

}  // namespace idect
