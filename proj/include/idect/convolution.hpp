#pragma once

#include <cstddef>
#include <optional>

#include "idect/approx.hpp"
#include "idect/banded_matrix.hpp"

namespace idect {

/// Discrete Legendre convolution operator V[k] : P -> P, the coefficient
/// map of y -> int_0^t k(t - s) y(s) ds, truncated to degree N.
///
/// For k of degree m the operator is (m+2)-banded. Columns 0 and 1 come
/// from closed-form starting values, the lower triangle is marched column
/// by column with the three-term recurrence in n, and the upper triangle is
/// filled from the scaled symmetry V_{j,n} = (-1)^{n+j} (2j+1)/(2n+1) V_{n,j}.
/// The march runs on a working block m + 4 larger than requested, so the
/// returned (N+1) x (N+1) block is exact. Entries outside the band are
/// structural zeros.
///
/// Throws DomainMismatch if k is not a Legendre (level 0) series and
/// TruncationError if N < m + 3.
BandedMatrix volterra_op(const LegendreSeries& kernel, std::size_t degree);

/// Largest violation of the column recurrence over in-band entries on and
/// above the diagonal, relative to max|V|. A stability diagnostic: the
/// marched lower triangle and the mirrored upper triangle only agree with
/// the recurrence when the march did not amplify rounding error.
double volterra_recurrence_residual(const BandedMatrix& v);

/// Kernel data for a Fredholm operator int_0^T k(t - s) y(s) ds.
struct KernelPair {
  LegendreSeries kernel;  // k(u) for u in [0,T]
  std::optional<LegendreSeries> flipped;  // k(-u) for u in [0,T]
  bool abs_mode = false;  // kernel is k(|t - s|); `flipped` must be empty
};

/// F = V[k] + I~ V[k~] I~, with k~ = k in abs mode. Throws
/// MissingFlippedKernel when a standard-mode pair lacks k~, and
/// DomainMismatch when both series are given in abs mode or live on
/// different intervals.
BandedMatrix fredholm_op(const KernelPair& pair, std::size_t degree);

/// M[g] core M[h], cropped to degree N. `core` must be square; its entries
/// are taken as exact, and the product is exact in the top-left block as
/// long as core exceeds degree N by deg g + deg h + bandwidth(core).
/// Throws DegreeError when core is too small for the multipliers.
BandedMatrix weighted_integral_block(const LegendreSeries& g, const BandedMatrix& core,
                                     const LegendreSeries& h, std::size_t degree);

}  // namespace idect
