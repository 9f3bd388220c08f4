#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idect/banded_matrix.hpp"

namespace idect {

inline constexpr std::size_t kMaxDenseRows = 8;

/// Square n x n matrix whose first r rows are dense and whose remaining
/// n - r rows are the rows of a banded block. Row k of the block is row
/// r + k of the whole matrix.
class AlmostBandedMatrix {
 public:
  AlmostBandedMatrix(std::vector<std::vector<double>> dense_rows, BandedMatrix banded);

  std::size_t size() const noexcept { return n_; }
  std::size_t dense_count() const noexcept { return dense_.size(); }
  const std::vector<std::vector<double>>& dense_rows() const noexcept { return dense_; }
  const BandedMatrix& banded() const noexcept { return banded_; }

  double operator()(std::size_t i, std::size_t j) const noexcept;
  double max_abs() const noexcept;
  std::vector<std::vector<double>> to_dense() const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> dense_;
  BandedMatrix banded_;
};

std::vector<double> aband_matvec(const AlmostBandedMatrix& m, std::span<const double> v);

/// Solves M x = rhs by Givens QR in O(n (b + r)^2) time and O(n (b + r))
/// memory, where b is the bandwidth of the banded block.
///
/// Every working row is kept as a banded part plus a length-r combination of
/// the original dense rows. Rotations act on both pieces, so fill-in from
/// the dense rows never materialises and R's upper bandwidth stays bounded
/// by lower + upper + r. Throws SingularSystem when a diagonal entry of R
/// falls below 1e-14 * max|M|.
std::vector<double> aband_solve(const AlmostBandedMatrix& m, std::span<const double> rhs);

}  // namespace idect
