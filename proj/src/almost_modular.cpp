#include "hamf/almost_modular.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>

namespace hamf {

CoeffSequence::CoeffSequence(std::function<std::complex<double>(long long)> rule,
                             double C, double beta)
    : rule_(std::move(rule)), C_(C), beta_(beta) {
  if (!rule_) throw std::invalid_argument("CoeffSequence: missing rule");
  if (!(C_ > 0.0))
    throw std::invalid_argument("CoeffSequence: decay constant must be positive");
  if (!(beta_ > 0.25))
    throw std::invalid_argument("CoeffSequence: decay exponent must exceed 1/4");
  for (long long k = 1; k <= 100000; ++k) {
    const double bound =
        C_ * std::pow(static_cast<double>(k), -beta_) * (1.0 + 1e-9) + 1e-300;
    if (std::abs(rule_(k)) > bound)
      throw std::invalid_argument("CoeffSequence: decay certificate violated at k = " +
                                  std::to_string(k));
  }
}

CoeffSequence CoeffSequence::log_squares() {
  return CoeffSequence(
      [](long long k) { return std::complex<double>(-1.0 / static_cast<double>(k), 0.0); },
      1.0, 1.0);
}

CoeffSequence CoeffSequence::theta_only() {
  return CoeffSequence(
      [](long long k) { return std::complex<double>(k == 1 ? 1.0 : 0.0, 0.0); }, 1.0,
      1.0);
}

CoeffSequence CoeffSequence::from_table(std::vector<std::complex<double>> table,
                                        double C, double beta) {
  auto data = std::make_shared<std::vector<std::complex<double>>>(std::move(table));
  return CoeffSequence(
      [data](long long k) {
        return (k >= 1 && static_cast<std::size_t>(k) <= data->size())
                   ? (*data)[k - 1]
                   : std::complex<double>{0.0, 0.0};
      },
      C, beta);
}

namespace {

// sum_k h_k e(k m0 z) with integer phases k*m0 kept exact.
std::complex<double> h_eval_scaled(const CoeffSequence& h, long long m0,
                                   const UpperHalfPoint& z, const SeriesTolerance& tol) {
  const double c = kTwoPi * static_cast<double>(m0) * z.y;
  const double C = h.decay_C(), beta = h.decay_beta();
  const double gap = -std::expm1(-c);
  std::complex<double> s{0.0, 0.0};
  for (long long k = 1;; ++k) {
    if (k > tol.max_terms) throw term_cap_error("h_eval: term cap exceeded");
    // tail over j >= k: C k^-beta e^{-ck} / (1 - e^{-c})
    const double tail = C * std::pow(static_cast<double>(k), -beta) *
                        std::exp(-c * static_cast<double>(k)) / gap;
    if (tail < tol.abs_tol) break;
    s += h.coeff(k) * (std::exp(-c * static_cast<double>(k)) * e_unit(m0 * k, z.x));
  }
  return s;
}

// Bound for sum_{j>=n} C q_j / (1 - q_j) with q_j = e^{-2 pi j^2 y}: the
// squares grow by at least 2n+1 per step, so the tail is geometric.
double outer_tail(double C, double y, long long n) {
  const double c = kTwoPi * y;
  const double q = std::exp(-c * static_cast<double>(n) * static_cast<double>(n));
  if (q >= 1.0) return HUGE_VAL;
  const double gap = -std::expm1(-c * static_cast<double>(2 * n + 1));
  return C * q / ((1.0 - q) * gap);
}

// Smallest n with outer_tail(n) < budget.
long long first_outer_index(double C, double y, double budget, long long cap,
                            const char* who) {
  const double c = kTwoPi * y;
  long long n = static_cast<long long>(
      std::ceil(std::sqrt(std::max(1.0, std::log(std::max(2.0, C / budget)) / c))));
  while (n > 1 && outer_tail(C, y, n - 1) < budget) --n;
  while (outer_tail(C, y, n) >= budget) {
    ++n;
    if (n > cap) break;
  }
  if (n > cap)
    throw term_cap_error(std::string(who) + ": term cap exceeded (Im z too small)");
  return n;
}

}  // namespace

std::complex<double> h_eval(const CoeffSequence& h, const UpperHalfPoint& z,
                            const SeriesTolerance& tol) {
  validate(tol);
  return h_eval_scaled(h, 1, z, tol);
}

std::complex<double> xi_eval(const CoeffSequence& h, const UpperHalfPoint& z,
                             const SeriesTolerance& tol) {
  validate(tol);
  const long long nstar =
      first_outer_index(h.decay_C(), z.y, 0.5 * tol.abs_tol, tol.max_terms, "xi_eval");
  const long long terms = nstar - 1;  // indices >= nstar are below the budget
  if (terms == 0) return {0.0, 0.0};
  const SeriesTolerance inner{0.5 * tol.abs_tol / static_cast<double>(terms),
                              tol.max_terms};
  std::complex<double> s{0.0, 0.0};
  for (long long n = 1; n <= terms; ++n) s += h_eval_scaled(h, n * n, z, inner);
  return s;
}

std::complex<double> xi_log_direct(const UpperHalfPoint& z, const SeriesTolerance& tol) {
  validate(tol);
  // |Log(1 - w_n)| <= |w_n| / (1 - |w_n|), so the xi_eval tail bound applies
  // with C = 1.
  const long long nstar = first_outer_index(1.0, z.y, tol.abs_tol, tol.max_terms,
                                            "xi_log_direct");
  std::complex<double> s{0.0, 0.0};
  for (long long n = 1; n < nstar; ++n) {
    const long long m = n * n;
    const std::complex<double> w =
        std::exp(-kTwoPi * static_cast<double>(m) * z.y) * e_unit(m, z.x);
    s += std::log(1.0 - w);  // Re(1 - w) > 0: principal branch is smooth here
  }
  return s;
}

std::complex<double> xi_eval_fourier(const CoeffSequence& h, const UpperHalfPoint& z,
                                     const SeriesTolerance& tol) {
  validate(tol);
  const double c = kTwoPi * z.y;
  const double C = h.decay_C();
  const double t = std::exp(-c);
  // |xi_m| <= C sqrt(m) <= C m, so sum_{m>M} m t^m bounds the tail
  long long M = static_cast<long long>(std::ceil(40.0 / c)) + 16;
  for (;;) {
    const double tail = C * std::exp(-c * static_cast<double>(M + 1)) *
                        (static_cast<double>(M + 1) * (1.0 - t) + t) /
                        ((1.0 - t) * (1.0 - t));
    if (tail < tol.abs_tol) break;
    M *= 2;
    if (M > tol.max_terms)
      throw term_cap_error("xi_eval_fourier: coefficient cap exceeded (Im z too small)");
  }
  const FourierCoeffs f = xi_coeff(h, M);
  return pairwise_map_sum(M, [&](long long i) {
    const long long m = i + 1;
    return f.values[m] * (std::exp(-c * static_cast<double>(m)) * e_unit(m, z.x));
  });
}

FourierCoeffs xi_coeff(const CoeffSequence& h, long long m_max) {
  if (m_max < 1) throw std::invalid_argument("xi_coeff: m_max >= 1");
  FourierCoeffs out;
  out.values.assign(m_max + 1, {0.0, 0.0});
  for (long long n = 1; n * n <= m_max; ++n) {
    const long long nn = n * n;
    for (long long k = 1; k * nn <= m_max; ++k) out.values[k * nn] += h.coeff(k);
  }
  return out;
}

FourierCoeffs xi_coeff_naive(const CoeffSequence& h, long long m_max) {
  if (m_max < 1) throw std::invalid_argument("xi_coeff_naive: m_max >= 1");
  FourierCoeffs out;
  out.values.assign(m_max + 1, {0.0, 0.0});
  for (long long m = 1; m <= m_max; ++m)
    for (long long n = 1; n * n <= m; ++n)
      if (m % (n * n) == 0) out.values[m] += h.coeff(m / (n * n));
  return out;
}

FourierCoeffs xiK_coeff(const CoeffSequence& h, long long K, long long m_max) {
  if (K < 1) throw std::invalid_argument("xiK_coeff: K >= 1");
  if (m_max < 0) throw std::invalid_argument("xiK_coeff: m_max >= 0");
  FourierCoeffs out;
  out.values.assign(m_max + 1, {0.0, 0.0});
  std::complex<double> h0{0.0, 0.0};
  for (long long k = 1; k <= K; ++k) h0 += h.coeff(k);
  out.values[0] = 0.5 * h0;
  for (long long k = 1; k <= K; ++k) {
    const std::complex<double> hk = h.coeff(k);
    for (long long n = 1; n * n * k <= m_max; ++n) out.values[n * n * k] += hk;
  }
  return out;
}

ApproxReport approx_error(const CoeffSequence& h, long long K, long long M) {
  if (K < 1 || M < 1) throw std::invalid_argument("approx_error: K, M >= 1");
  // difference coefficients: only k > K survive at m >= 1
  std::vector<std::complex<double>> diff(M + 1, {0.0, 0.0});
  for (long long n = 1; n * n * (K + 1) <= M; ++n) {
    const long long nn = n * n;
    for (long long k = K + 1; k * nn <= M; ++k) diff[k * nn] += h.coeff(k);
  }
  std::complex<double> h0{0.0, 0.0};
  for (long long k = 1; k <= K; ++k) h0 += h.coeff(k);
  diff[0] = -0.5 * h0;  // xi_0 = 0 minus the approximant's constant term
  const double sum =
      pairwise_map_sum(M + 1, [&](long long m) { return std::norm(diff[m]); });
  return {K, M, sum / std::sqrt(static_cast<double>(M))};
}

namespace {

// sum_{r > L} r^{-a}: a short head plus the Euler-Maclaurin remainder
double zeta_tail(double a, long long L) {
  double s = 0.0;
  const long long x0 = L + 33;
  for (long long r = L + 1; r < x0; ++r) s += std::pow(static_cast<double>(r), -a);
  const double x = static_cast<double>(x0);
  const double xa = std::pow(x, -a);
  s += x * xa / (a - 1.0);
  s += 0.5 * xa;
  s += a * xa / (12.0 * x);
  s -= a * (a + 1.0) * (a + 2.0) * xa / (720.0 * x * x * x);
  return s;
}

}  // namespace

double tail_bound(const CoeffSequence& h, long long K) {
  if (K < 1) throw std::invalid_argument("tail_bound: K >= 1");
  const double C = h.decay_C(), beta = h.decay_beta();
  const double a = 0.5 + 2.0 * beta;  // r exponent
  const double b = 1.0 + 2.0 * beta;  // p and q exponent
  const double za = zeta(a);
  // The constraints r p^2 > K and r q^2 > K fix the r range per (p, q), so
  // the r sum is a zeta tail from K / min(p,q)^2; only (p, q) is enumerated,
  // with the cap doubled until the discarded mass is below 1% of the total.
  for (long long P = 64;; P *= 2) {
    if (P > (1LL << 22)) throw term_cap_error("tail_bound: enumeration cap exceeded");
    std::vector<double> powb(P + 1, 0.0), zt(P + 1, 0.0);
    for (long long i = 1; i <= P; ++i) {
      powb[i] = std::pow(static_cast<double>(i), -b);
      zt[i] = zeta_tail(a, K / (i * i));
    }
    double total = 0.0, weighted = 0.0;
    for (long long p = 1; p <= P; ++p) {
      weighted += powb[p] * zt[p];
      for (long long q = 1; q <= P; ++q)
        if (std::gcd(p, q) == 1) total += powb[p] * powb[q] * zt[std::min(p, q)];
    }
    // p (or q) beyond the cap: the inner variable still carries its zeta tail
    const double sp = std::pow(static_cast<double>(P), 1.0 - b) / (b - 1.0);
    const double discarded =
        2.0 * sp * weighted +
        2.0 * za * std::pow(static_cast<double>(P), 2.0 - 2.0 * b) /
            ((b - 1.0) * (2.0 * b - 2.0));
    if (discarded < 0.01 * total) return C * C * total;
  }
}

}  // namespace hamf
