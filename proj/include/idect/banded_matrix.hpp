#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace idect {

/// Rectangular banded matrix. Row i stores columns i - lower .. i + upper;
/// everything outside that band is an exact zero and cannot be written.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);

  static BandedMatrix identity(std::size_t n);
  static BandedMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i < rows_ && j < cols_ && j + lower_ >= i && j <= i + upper_;
  }
  /// Zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;
  /// Throws std::out_of_range outside the band.
  double& at(std::size_t i, std::size_t j);
  void set(std::size_t i, std::size_t j, double v) { at(i, j) = v; }

  /// First and one-past-last stored column of row i, clipped to [0, cols).
  std::size_t row_begin(std::size_t i) const noexcept {
    return i > lower_ ? i - lower_ : 0;
  }
  std::size_t row_end(std::size_t i) const noexcept;

  /// Top-left rows x cols block, keeping the declared bandwidths.
  BandedMatrix crop(std::size_t rows, std::size_t cols) const;
  /// Shrinks lower/upper to the outermost diagonals holding a nonzero.
  BandedMatrix tightened() const;
  /// Outermost diagonals that actually hold a nonzero entry.
  std::size_t occupied_lower() const noexcept;
  std::size_t occupied_upper() const noexcept;

  std::vector<std::vector<double>> to_dense() const;
  double max_abs() const noexcept;

  BandedMatrix& operator*=(double s);
  friend BandedMatrix operator*(double s, BandedMatrix a) { return a *= s; }
  friend BandedMatrix operator+(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b);

 private:
  std::size_t width() const noexcept { return lower_ + upper_ + 1; }
  std::size_t offset(std::size_t i, std::size_t j) const noexcept {
    return i * width() + (j + lower_ - i);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<double> data_;
};

/// Exact product; bandwidths add. Throws DimensionMismatch.
BandedMatrix band_mul(const BandedMatrix& a, const BandedMatrix& b);
BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b);

/// y = A v. A v shorter than A.cols() is treated as zero-padded; a longer
/// one throws DimensionMismatch.
std::vector<double> band_matvec(const BandedMatrix& a, std::span<const double> v);

}  // namespace idect
