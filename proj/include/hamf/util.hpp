#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamf {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;

inline constexpr char kVersion[] = "0.1.0";

/// Thrown when a series cannot reach the requested tolerance within the
/// configured term cap.
class term_cap_error : public std::runtime_error {
 public:
  explicit term_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Fractional part of m*x for integer |m| < 2^53, accurate to double
/// precision. fma recovers the rounding error of the product, which matters
/// once m*x grows past ~2^26.
inline double frac_mul(long long m, double x) {
  const double md = static_cast<double>(m);
  const double p = md * x;
  const double err = std::fma(md, x, -p);
  double r = p - std::floor(p) + err;
  r -= std::floor(r);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

/// exp(2 pi i m x) for integer m.
inline std::complex<double> e_unit(long long m, double x) {
  const double t = kTwoPi * frac_mul(m, x);
  return {std::cos(t), std::sin(t)};
}

/// Argument in (-pi, pi]; the negative real axis maps to +pi.
inline double principal_arg(const std::complex<double>& w) {
  double a = std::arg(w);
  if (a <= -kPi) a = kPi;
  return a;
}

/// Square root on the branch -pi/2 < arg <= pi/2.
inline std::complex<double> principal_sqrt(const std::complex<double>& w) {
  if (w.imag() == 0.0) {
    return w.real() < 0.0 ? std::complex<double>{0.0, std::sqrt(-w.real())}
                          : std::complex<double>{std::sqrt(w.real()), 0.0};
  }
  return std::sqrt(w);
}

std::complex<double> cpow_int(std::complex<double> w, long long n);

/// Fixed-order pairwise reduction of f(base), ..., f(base+n-1). The
/// association order depends only on n, never on scheduling.
template <class F>
auto pairwise_map_sum(long long n, F&& f, long long base = 0) -> decltype(f(0LL)) {
  using T = decltype(f(0LL));
  if (n <= 0) return T{};
  if (n <= 32) {
    T s = f(base);
    for (long long i = 1; i < n; ++i) s += f(base + i);
    return s;
  }
  const long long h = n / 2;
  return pairwise_map_sum(h, f, base) + pairwise_map_sum(n - h, f, base + h);
}

/// Riemann zeta for real s > 1 (Euler-Maclaurin), abs error below 1e-13.
double zeta(double s);

/// Moebius function table mu[0..n] (mu[0] unused).
std::vector<int> moebius_table(long long n);

/// splitmix64 mix of a 64-bit word.
uint64_t splitmix64(uint64_t x);

/// Counter-based deterministic generator; identical stream on every platform.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next();
  double next_unit();                             // in [0, 1)
  long long next_in(long long lo, long long hi);  // inclusive bounds
};

/// Runs fn(i) for i in [0, chunks) on up to n_threads workers. Work is owned
/// by chunk index, so anything written per chunk is independent of the
/// number of workers.
void parallel_chunks(int n_threads, long long chunks,
                     const std::function<void(long long)>& fn);

}  // namespace hamf
