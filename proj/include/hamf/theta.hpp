#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hamf/cover.hpp"

namespace hamf {

/// Truncation control shared by every series evaluator: the absolute
/// truncation target and a hard cap on the number of terms.
struct SeriesTolerance {
  double abs_tol = 1e-12;
  long long max_terms = 10'000'000;
};

void validate(const SeriesTolerance& tol);

/// theta(z) = 1 + 2 sum_{n>=1} e(n^2 z), absolute error below abs_tol.
std::complex<double> theta(const UpperHalfPoint& z, const SeriesTolerance& tol = {});

/// theta(k z), same error contract.
std::complex<double> theta_scaled(long long k, const UpperHalfPoint& z,
                                  const SeriesTolerance& tol = {});

/// xi_K(z) = sum_{k<=K} a_k theta(k z); error below (sum |a_k|) abs_tol.
std::complex<double> xi_K(const std::vector<std::complex<double>>& a,
                          const UpperHalfPoint& z, const SeriesTolerance& tol = {});

/// Delta(z) = e(z) prod_{n>=1} (1 - e(n z))^24, relative error O(abs_tol).
std::complex<double> delta_jacobi(const UpperHalfPoint& z,
                                  const SeriesTolerance& tol = {});

/// A form together with its transformation data: weight kappa = two_kappa/2
/// and level N. Under gamma in Gamma_1(N),
///   f(gamma z) = (c|d)^{2 kappa} (c z + d)^{kappa} f(z),
/// with (c z + d)^{kappa} = (principal sqrt)^{2 kappa}.
struct WeightedForm {
  std::function<std::complex<double>(const UpperHalfPoint&, const SeriesTolerance&)> eval;
  int two_kappa;
  long long level;
};

WeightedForm theta_form();                    // weight 1/2, level 4
WeightedForm theta_scaled_form(long long k);  // weight 1/2, level 4k
WeightedForm xi_K_form(std::vector<std::complex<double>> a);  // level 4 lcm(1..K)
WeightedForm delta_form();                    // weight 12, level 1

/// |f(gamma z) - (c|d)^{2k} (cz+d)^k f(z)| / max(1, |f(z)|).
/// Rejects gamma outside the form's declared level.
double transform_residual(const WeightedForm& f, const UnimodularInt& gamma,
                          const UpperHalfPoint& z, const SeriesTolerance& tol = {});

/// Lift to the cover: y^{kappa/2} f(z) e^{-i kappa phi}.
std::complex<double> lift(const WeightedForm& f, const CoverPoint& p,
                          const SeriesTolerance& tol = {});

struct TransformCheck {
  double max_residual = 0.0;
  long long trials = 0;
};

/// Seeded sweep of the transformation law under random Gamma_1(level)
/// elements with entries bounded by height, z drawn with y in [0.3, 2].
/// Checks theta by default; with xi_order = K > 0 it checks xi_K with
/// a_k = -1/(2k). Test points whose image falls below the term cap are
/// redrawn.
TransformCheck check_transform(long long level, long long trials, uint64_t seed,
                               long long height, int xi_order = 0,
                               const SeriesTolerance& tol = {});

}  // namespace hamf
