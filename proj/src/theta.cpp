#include "hamf/theta.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "hamf/residue_symbol.hpp"

namespace hamf {

void validate(const SeriesTolerance& tol) {
  if (!(tol.abs_tol > 0.0) || tol.max_terms < 1)
    throw std::invalid_argument("SeriesTolerance: need abs_tol > 0 and max_terms >= 1");
}

namespace {

// theta(k z) = 1 + 2 sum_{n>=1} e(k n^2 z). The tail from index n on is
// bounded by 2 exp(-2 pi k y n^2) / (1 - exp(-2 pi k y (2n+1))) since the
// squares grow by at least 2n+1 per step.
std::complex<double> theta_impl(long long k, const UpperHalfPoint& z,
                                const SeriesTolerance& tol) {
  if (k < 1) throw std::invalid_argument("theta: scale k must be positive");
  const double c = kTwoPi * static_cast<double>(k) * z.y;
  auto tail_from = [&](long long n) {
    const double q = std::exp(-c * static_cast<double>(n) * static_cast<double>(n));
    return 2.0 * q / -std::expm1(-c * static_cast<double>(2 * n + 1));
  };
  long long nstar = static_cast<long long>(
      std::ceil(std::sqrt(std::max(1.0, std::log(2.0 / tol.abs_tol) / c))));
  while (nstar > 1 && tail_from(nstar - 1) < tol.abs_tol) --nstar;
  while (tail_from(nstar) >= tol.abs_tol) {
    ++nstar;
    if (nstar > tol.max_terms) break;
  }
  if (nstar > tol.max_terms)
    throw term_cap_error("theta: term cap exceeded (Im z too small for the tolerance)");
  std::complex<double> s{1.0, 0.0};
  for (long long n = 1; n <= nstar; ++n) {
    const long long m = k * n * n;
    s += 2.0 * std::exp(-kTwoPi * static_cast<double>(m) * z.y) * e_unit(m, z.x);
  }
  return s;
}

}  // namespace

std::complex<double> theta(const UpperHalfPoint& z, const SeriesTolerance& tol) {
  validate(tol);
  return theta_impl(1, z, tol);
}

std::complex<double> theta_scaled(long long k, const UpperHalfPoint& z,
                                  const SeriesTolerance& tol) {
  validate(tol);
  return theta_impl(k, z, tol);
}

std::complex<double> xi_K(const std::vector<std::complex<double>>& a,
                          const UpperHalfPoint& z, const SeriesTolerance& tol) {
  validate(tol);
  if (a.empty()) throw std::invalid_argument("xi_K: need at least one coefficient");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = 1; k <= a.size(); ++k)
    s += a[k - 1] * theta_impl(static_cast<long long>(k), z, tol);
  return s;
}

std::complex<double> delta_jacobi(const UpperHalfPoint& z, const SeriesTolerance& tol) {
  validate(tol);
  const double c = kTwoPi * z.y;
  const double gap = -std::expm1(-c);  // 1 - e^{-2 pi y}
  std::complex<double> prod = std::exp(-c) * e_unit(1, z.x);
  for (long long n = 1;; ++n) {
    if (n > tol.max_terms) throw term_cap_error("delta_jacobi: term cap exceeded");
    // remaining log-product is below 24 e^{-2 pi y n} / (1 - e^{-2 pi y})^2
    if (24.0 * std::exp(-c * static_cast<double>(n)) / (gap * gap) < tol.abs_tol) break;
    const std::complex<double> w =
        1.0 - std::exp(-c * static_cast<double>(n)) * e_unit(n, z.x);
    prod *= cpow_int(w, 24);
  }
  return prod;
}

WeightedForm theta_form() {
  return {[](const UpperHalfPoint& z, const SeriesTolerance& t) { return theta(z, t); },
          1, 4};
}

WeightedForm theta_scaled_form(long long k) {
  if (k < 1) throw std::invalid_argument("theta_scaled_form: k must be positive");
  return {[k](const UpperHalfPoint& z, const SeriesTolerance& t) {
            return theta_scaled(k, z, t);
          },
          1, 4 * k};
}

WeightedForm xi_K_form(std::vector<std::complex<double>> a) {
  if (a.empty()) throw std::invalid_argument("xi_K_form: need at least one coefficient");
  long long l = 1;
  for (std::size_t k = 2; k <= a.size(); ++k)
    l = std::lcm(l, static_cast<long long>(k));
  auto coeffs = std::make_shared<std::vector<std::complex<double>>>(std::move(a));
  return {[coeffs](const UpperHalfPoint& z, const SeriesTolerance& t) {
            return xi_K(*coeffs, z, t);
          },
          1, 4 * l};
}

WeightedForm delta_form() {
  return {[](const UpperHalfPoint& z, const SeriesTolerance& t) {
            return delta_jacobi(z, t);
          },
          24, 1};
}

double transform_residual(const WeightedForm& f, const UnimodularInt& gamma,
                          const UpperHalfPoint& z, const SeriesTolerance& tol) {
  validate(tol);
  if (!in_gamma1(gamma, f.level))
    throw std::invalid_argument("transform_residual: gamma outside the form's level");
  const std::complex<double> w{
      static_cast<double>(gamma.c) * z.x + static_cast<double>(gamma.d),
      static_cast<double>(gamma.c) * z.y};
  std::complex<double> mult = cpow_int(principal_sqrt(w), f.two_kappa);
  if (f.two_kappa & 1)
    mult *= static_cast<double>(qr_symbol(gamma.c, gamma.d));
  const std::complex<double> fz = f.eval(z, tol);
  const std::complex<double> lhs = f.eval(moebius(gamma, z), tol);
  return std::abs(lhs - mult * fz) / std::max(1.0, std::abs(fz));
}

std::complex<double> lift(const WeightedForm& f, const CoverPoint& p,
                          const SeriesTolerance& tol) {
  const double kappa = 0.5 * static_cast<double>(f.two_kappa);
  return std::pow(p.z.y, 0.5 * kappa) * f.eval(p.z, tol) *
         std::polar(1.0, -kappa * p.phi);
}

TransformCheck check_transform(long long level, long long trials, uint64_t seed,
                               long long height, int xi_order,
                               const SeriesTolerance& tol) {
  validate(tol);
  if (level < 4 || level % 4 != 0)
    throw std::invalid_argument("check_transform: level must be a positive multiple of 4");
  if (trials < 1) throw std::invalid_argument("check_transform: trials must be positive");
  WeightedForm f = theta_form();
  if (xi_order > 0) {
    std::vector<std::complex<double>> a;
    for (int k = 1; k <= xi_order; ++k) a.emplace_back(-0.5 / k, 0.0);
    f = xi_K_form(std::move(a));
  }
  if (level % f.level != 0)
    throw std::invalid_argument("check_transform: level incompatible with the form");
  f.level = level;
  TransformCheck out;
  out.trials = trials;
  SplitMix64 rng(seed);
  for (long long t = 0; t < trials; ++t) {
    const UnimodularInt g = random_gamma1(level, rng.next(), height);
    for (int retry = 0;; ++retry) {
      if (retry >= 100)
        throw term_cap_error("check_transform: no evaluable test point found");
      const UpperHalfPoint z{rng.next_unit(), 0.3 + 1.7 * rng.next_unit()};
      try {
        out.max_residual = std::max(out.max_residual, transform_residual(f, g, z, tol));
        break;
      } catch (const term_cap_error&) {
        // image fell too deep into the cusp for the tolerance; redraw z
      }
    }
  }
  return out;
}

}  // namespace hamf
