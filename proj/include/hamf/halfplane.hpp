#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "hamf/util.hpp"

namespace hamf {

/// Point x + i y of the upper half plane; construction enforces y > 0.
struct UpperHalfPoint {
  double x;
  double y;
  UpperHalfPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0))
      throw std::invalid_argument("UpperHalfPoint: Im z must be positive");
  }
  std::complex<double> value() const { return {x, y}; }
};

/// Integer 2x2 matrix (a b; c d) with determinant 1.
struct UnimodularInt {
  long long a, b, c, d;
  UnimodularInt(long long a_, long long b_, long long c_, long long d_)
      : a(a_), b(b_), c(c_), d(d_) {
    if (a * d - b * c != 1)
      throw std::invalid_argument("UnimodularInt: determinant must be 1");
  }
  static UnimodularInt identity() { return {1, 0, 0, 1}; }
  UnimodularInt inverse() const { return {d, -b, -c, a}; }
  friend bool operator==(const UnimodularInt&, const UnimodularInt&) = default;
};

UnimodularInt operator*(const UnimodularInt& l, const UnimodularInt& r);

/// Fractional linear action (a z + b) / (c z + d); Im of the image is
/// y / |c z + d|^2 and stays positive.
UpperHalfPoint moebius(const UnimodularInt& g, const UpperHalfPoint& z);

/// (c z + d) / |c z + d|, the unit phase of the denominator.
std::complex<double> epsilon(const UnimodularInt& g, const UpperHalfPoint& z);

/// Membership in Gamma_1(N): a = d = 1 and c = 0 mod N.
bool in_gamma1(const UnimodularInt& g, long long N);

/// Seeded element of Gamma_1(N) with all entries bounded by height:
/// draws (c, d) in the box with c = 0 mod N, d = 1 mod N, gcd(c, d) = 1,
/// then completes the row (a, b) by the extended Euclid algorithm with a
/// shifted into the smallest residue class mod c. A test-data generator;
/// the draw is not uniform over the group. Requires height >= N >= 1.
UnimodularInt random_gamma1(long long N, uint64_t seed, long long height);

}  // namespace hamf
