#pragma once

namespace idect {

inline constexpr int kMaxBesselOrder = 20;
inline constexpr double kMaxBesselArgument = 500.0;

/// Bessel function of the first kind J_nu(x) for integer 0 <= nu <= 20 and
/// |x| <= 500. Ascending series for |x| < 2, Miller backward recurrence
/// normalised by J_0 + 2 sum J_2k = 1 otherwise. Throws RangeError outside
/// that envelope.
double bessel_j(int nu, double x);

/// J_nu(x) / x^p for integer 0 <= p <= nu. The quotient is entire; near
/// x = 0 it is summed directly from the series so that the removable
/// singularity costs no accuracy.
double bessel_j_over_power(int nu, int p, double x);

/// Error function, odd by construction.
double erf(double x);

}  // namespace idect
