#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hamf/theta.hpp"

namespace hamf {

/// Coefficient data h_k with a certified decay bound |h_k| <= C / k^beta,
/// beta > 1/4. The certificate is spot-checked up to k = 1e5 at construction
/// and a violation raises std::invalid_argument.
class CoeffSequence {
 public:
  CoeffSequence(std::function<std::complex<double>(long long)> rule, double C,
                double beta);
  std::complex<double> coeff(long long k) const { return rule_(k); }
  double decay_C() const { return C_; }
  double decay_beta() const { return beta_; }

  static CoeffSequence log_squares();  // h_k = -1/k  (C = 1, beta = 1)
  static CoeffSequence theta_only();   // h_1 = 1, rest 0
  static CoeffSequence from_table(std::vector<std::complex<double>> table,
                                  double C, double beta);

 private:
  std::function<std::complex<double>(long long)> rule_;
  double C_;
  double beta_;
};

/// Fourier coefficients indexed 0..m_max.
struct FourierCoeffs {
  std::vector<std::complex<double>> values;
  long long m_max() const { return static_cast<long long>(values.size()) - 1; }
};

struct ApproxReport {
  long long K;
  long long M;
  double error_sq;  // (1/sqrt(M)) sum_{m=0}^{M} |xi_m - xiK_m|^2
};

/// h(z) = sum_k h_k e(k z), absolute error below abs_tol.
std::complex<double> h_eval(const CoeffSequence& h, const UpperHalfPoint& z,
                            const SeriesTolerance& tol = {});

/// xi(z) = sum_{n>=1} h(n^2 z), absolute error below abs_tol.
std::complex<double> xi_eval(const CoeffSequence& h, const UpperHalfPoint& z,
                             const SeriesTolerance& tol = {});

/// sum_{n>=1} Log(1 - e(n^2 z)) with principal logs; every factor has
/// positive real part, so each term is unambiguous.
std::complex<double> xi_log_direct(const UpperHalfPoint& z,
                                   const SeriesTolerance& tol = {});

/// xi through its Fourier series sum_m xi_m e(m z), horizon chosen from the
/// decay certificate; fast at small y where the nested sums get long.
std::complex<double> xi_eval_fourier(const CoeffSequence& h, const UpperHalfPoint& z,
                                     const SeriesTolerance& tol = {});

/// xi_m = sum_{n^2 | m} h_{m / n^2}, xi_0 = 0; sieve over (k, n) pairs.
FourierCoeffs xi_coeff(const CoeffSequence& h, long long m_max);

/// Same values by per-m divisor-square enumeration; reference path.
FourierCoeffs xi_coeff_naive(const CoeffSequence& h, long long m_max);

/// Coefficients of the approximant (1/2) sum_{k<=K} h_k theta(k z):
/// value 1/2 sum_{k<=K} h_k at m = 0, sum_{k<=K, n^2 k = m} h_k at m >= 1.
FourierCoeffs xiK_coeff(const CoeffSequence& h, long long K, long long m_max);

/// The normalized coefficient distance between xi and its K-th approximant,
/// including the m = 0 term.
ApproxReport approx_error(const CoeffSequence& h, long long K, long long M);

/// Certificate bound for the limiting coefficient distance:
/// C^2 sum over gcd(p,q)=1, r p^2 > K, r q^2 > K of
/// r^-(1/2+2beta) p^-(1+2beta) q^-(1+2beta), enumerated with adaptive caps
/// until the discarded region is below 1% of the running total.
double tail_bound(const CoeffSequence& h, long long K);

}  // namespace hamf
