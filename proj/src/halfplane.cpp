#include "hamf/halfplane.hpp"

#include <numeric>

namespace hamf {

UnimodularInt operator*(const UnimodularInt& l, const UnimodularInt& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
          l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

UpperHalfPoint moebius(const UnimodularInt& g, const UpperHalfPoint& z) {
  // Long double intermediates: transform checks push the image close to the
  // real axis where the evaluators are phase sensitive.
  const long double x = z.x, y = z.y;
  const long double u = static_cast<long double>(g.c) * x + static_cast<long double>(g.d);
  const long double v = static_cast<long double>(g.c) * y;
  const long double den = u * u + v * v;
  const long double p = static_cast<long double>(g.a) * x + static_cast<long double>(g.b);
  const long double q = static_cast<long double>(g.a) * y;
  // Im(gz) = y (ad - bc) / |cz+d|^2 = y / |cz+d|^2
  return {static_cast<double>((p * u + q * v) / den), static_cast<double>(y / den)};
}

std::complex<double> epsilon(const UnimodularInt& g, const UpperHalfPoint& z) {
  const std::complex<double> w{static_cast<double>(g.c) * z.x + static_cast<double>(g.d),
                               static_cast<double>(g.c) * z.y};
  return w / std::abs(w);
}

bool in_gamma1(const UnimodularInt& g, long long N) {
  if (N < 1) throw std::invalid_argument("in_gamma1: N must be positive");
  auto is0 = [N](long long v) { return ((v % N) + N) % N == 0; };
  return is0(g.a - 1) && is0(g.d - 1) && is0(g.c);
}

namespace {

long long div_floor(long long a, long long b) {  // b > 0
  long long q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}
long long div_ceil(long long a, long long b) { return -div_floor(-a, b); }

// u*x + v*y = gcd(x, y), gcd normalized nonnegative
void ext_gcd(long long x, long long y, long long& u, long long& v) {
  long long u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (y != 0) {
    const long long q = x / y;
    long long t = x - q * y;
    x = y;
    y = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = v0 - q * v1;
    v0 = v1;
    v1 = t;
  }
  if (x < 0) {
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
}

}  // namespace

UnimodularInt random_gamma1(long long N, uint64_t seed, long long height) {
  if (N < 1 || height < N)
    throw std::invalid_argument("random_gamma1: need N >= 1 and height >= N");
  SplitMix64 rng(seed);
  const long long c0_max = height / N;
  const long long k_lo = div_ceil(-height - 1, N);
  const long long k_hi = div_floor(height - 1, N);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const long long c = N * rng.next_in(-c0_max, c0_max);
    const long long d = 1 + N * rng.next_in(k_lo, k_hi);
    if (std::gcd(c, d) != 1) continue;  // c = 0 forces d = +-1 here
    if (c == 0) {
      // parabolic row: (d, b; 0, d) with d = +-1 and d = 1 mod N
      return {d, rng.next_in(-height, height), 0, d};
    }
    long long u, v;
    ext_gcd(d, c, u, v);  // u*d + v*c = 1
    const long long cc = c < 0 ? -c : c;
    long long a = u % cc;  // a*d = 1 mod c for any representative
    if (a < 0) a += cc;
    if (2 * a > cc) a -= cc;  // smallest representative, |a| <= |c|/2
    const long long b = (a * d - 1) / c;
    // a = 1 mod N is automatic: ad = 1 mod c, N | c, d = 1 mod N
    return {a, b, c, d};
  }
  throw std::runtime_error("random_gamma1: rejection sampling failed");
}

}  // namespace hamf
