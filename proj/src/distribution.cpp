#include "hamf/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace hamf {

const char* sampler_name(Sampler s) {
  return s == Sampler::kIidUniform ? "iid-uniform" : "stratified-grid";
}

namespace {

double iid_x(uint64_t seed, long long j) {
  // j-th output of the splitmix64 stream seeded at seed; random access keeps
  // the draw independent of evaluation order
  const uint64_t word = splitmix64(seed + static_cast<uint64_t>(j) * 0x9e3779b97f4a7c15ULL);
  return (word >> 11) * 0x1.0p-53;
}

std::complex<double> pow_unit(const std::complex<double>& u, long long n) {
  return n >= 0 ? cpow_int(u, n) : std::conj(cpow_int(u, -n));
}

}  // namespace

EmpiricalDistribution sample_values(const CoeffSequence& h, double y, long long count,
                                    uint64_t seed, Sampler sampler, int n_threads,
                                    const SeriesTolerance& tol) {
  if (!(y > 0.0) || y > 0.1)
    throw std::invalid_argument("sample_values: need 0 < y <= 0.1");
  if (count < 1) throw std::invalid_argument("sample_values: count >= 1");
  validate(tol);

  // Fourier horizon from the certificate: |xi_m| <= C sqrt(m) <= C m
  const double c = kTwoPi * y;
  const double C = h.decay_C();
  const double t = std::exp(-c);
  long long M = static_cast<long long>(std::ceil(40.0 / c)) + 16;
  for (;;) {
    const double tail = C * std::exp(-c * static_cast<double>(M + 1)) *
                        (static_cast<double>(M + 1) * (1.0 - t) + t) /
                        ((1.0 - t) * (1.0 - t));
    if (tail < tol.abs_tol) break;
    M *= 2;
    if (M > tol.max_terms)
      throw term_cap_error("sample_values: coefficient cap exceeded (y too small)");
  }
  const FourierCoeffs f = xi_coeff(h, M);
  std::vector<std::complex<double>> weight(M + 1, {0.0, 0.0});
  for (long long m = 1; m <= M; ++m)
    weight[m] = f.values[m] * std::exp(-c * static_cast<double>(m));
  const double amp = std::pow(y, 0.25);

  EmpiricalDistribution out;
  out.samples.assign(count, {0.0, 0.0});
  out.y = y;
  out.seed = seed;
  out.sampler = sampler;

  if (sampler == Sampler::kStratifiedGrid) {
    // Fold modulo the grid size: with x_j = (j+1/2)/count and m = s*count + r,
    // e(m x_j) = (-1)^s e(r (2j+1) / (2 count)), so the grid phases are exact
    // roots of unity of order 2*count.
    std::vector<std::complex<double>> folded(count, {0.0, 0.0});
    for (long long m = 1; m <= M; ++m) {
      const long long r = m % count;
      const long long s = m / count;
      folded[r] += (s & 1) ? -weight[m] : weight[m];
    }
    const long long order = 2 * count;
    std::vector<std::complex<double>> root(order);
    for (long long r = 0; r < order; ++r)
      root[r] = {std::cos(kPi * static_cast<double>(r) / static_cast<double>(count)),
                 std::sin(kPi * static_cast<double>(r) / static_cast<double>(count))};
    const long long chunk = 512;
    const long long chunks = (count + chunk - 1) / chunk;
    parallel_chunks(n_threads, chunks, [&](long long ci) {
      const long long j0 = ci * chunk;
      const long long j1 = std::min(count, j0 + chunk);
      for (long long j = j0; j < j1; ++j) {
        const long long step = (2 * j + 1) % order;
        long long idx = 0;
        std::complex<double> acc{0.0, 0.0};
        for (long long r = 0; r < count; ++r) {
          acc += folded[r] * root[idx];
          idx += step;
          if (idx >= order) idx -= order;
        }
        out.samples[j] = amp * acc;
      }
    });
  } else {
    const long long chunk = 64;
    const long long chunks = (count + chunk - 1) / chunk;
    parallel_chunks(n_threads, chunks, [&](long long ci) {
      const long long j0 = ci * chunk;
      const long long j1 = std::min(count, j0 + chunk);
      for (long long j = j0; j < j1; ++j) {
        const double x = iid_x(seed, j);
        const std::complex<double> step = e_unit(1, x);
        std::complex<double> phase{1.0, 0.0};
        std::complex<double> acc{0.0, 0.0};
        for (long long m = 1; m <= M; ++m) {
          phase = (m & 8191) == 0 ? e_unit(m, x) : phase * step;
          acc += weight[m] * phase;
        }
        out.samples[j] = amp * acc;
      }
    });
  }
  return out;
}

double sample_x(const EmpiricalDistribution& d, long long j) {
  if (j < 0 || j >= static_cast<long long>(d.samples.size()))
    throw std::out_of_range("sample_x: index out of range");
  if (d.sampler == Sampler::kStratifiedGrid)
    return (static_cast<double>(j) + 0.5) / static_cast<double>(d.samples.size());
  return iid_x(d.seed, j);
}

std::complex<double> empirical_moment(const EmpiricalDistribution& d, int a, int b) {
  if (d.samples.empty())
    throw std::invalid_argument("empirical_moment: empty sample set");
  if (a < 0 || b < 0)
    throw std::invalid_argument("empirical_moment: exponents must be nonnegative");
  const long long n = static_cast<long long>(d.samples.size());
  const std::complex<double> s = pairwise_map_sum(n, [&](long long i) {
    const std::complex<double>& w = d.samples[i];
    return cpow_int(w, a) * cpow_int(std::conj(w), b);
  });
  return s / static_cast<double>(n);
}

RotationStat rotation_invariance_stat(const EmpiricalDistribution& d) {
  if (d.samples.empty())
    throw std::invalid_argument("rotation_invariance_stat: empty sample set");
  std::vector<std::complex<double>> v = d.samples;
  std::sort(v.begin(), v.end(),
            [](const std::complex<double>& l, const std::complex<double>& r) {
              const double nl = std::norm(l), nr = std::norm(r);
              if (nl != nr) return nl < nr;
              if (l.real() != r.real()) return l.real() < r.real();
              return l.imag() < r.imag();
            });
  const double trim = 0.01;
  const long long keep = static_cast<long long>(v.size()) -
                         static_cast<long long>(trim * static_cast<double>(v.size()));
  auto moment = [&](int a, int b) {
    return pairwise_map_sum(keep,
                            [&](long long i) {
                              return cpow_int(v[i], a) * cpow_int(std::conj(v[i]), b);
                            }) /
           static_cast<double>(keep);
  };
  const double m11 = moment(1, 1).real();
  if (!(m11 > 0.0))
    throw std::invalid_argument("rotation_invariance_stat: zero variance");
  double stat = 0.0;
  const int pairs[4][2] = {{1, 0}, {2, 0}, {3, 1}, {2, 1}};
  for (const auto& ab : pairs) {
    const double scale = std::pow(m11, 0.5 * static_cast<double>(ab[0] + ab[1]));
    stat = std::max(stat, std::abs(moment(ab[0], ab[1])) / scale);
  }
  std::vector<double> args;
  args.reserve(d.samples.size());
  for (const auto& w : d.samples)
    if (w != std::complex<double>{0.0, 0.0}) args.push_back(principal_arg(w));
  if (args.empty())
    throw std::invalid_argument("rotation_invariance_stat: no nonzero samples");
  return {stat, ks_uniform(std::move(args), -kPi, kPi), trim};
}

VarianceReport variance_A(const CoeffSequence& h, long long r_max, long long pq_cap) {
  if (r_max < 1 || pq_cap < 1)
    throw std::invalid_argument("variance_A: positive caps required");
  // Moebius unfolding of the coprimality constraint: with X_p = h_{rp^2}/p,
  //   sum_{gcd(p,q)=1} X_p conj(X_q) = sum_d mu(d) |sum_{p' <= P/d} X_{dp'}|^2,
  // an exact rearrangement of the same finite index set.
  const std::vector<int> mu = moebius_table(pq_cap);
  std::complex<double> A{0.0, 0.0};
  for (long long d = 1; d <= pq_cap; ++d) {
    if (mu[d] == 0) continue;
    const long long pd = pq_cap / d;
    const double sign = static_cast<double>(mu[d]);
    for (long long r = 1; r <= r_max; ++r) {
      std::complex<double> inner{0.0, 0.0};
      for (long long p = 1; p <= pd; ++p) {
        const long long base = d * p;
        inner += h.coeff(r * base * base) / static_cast<double>(base);
      }
      A += (sign / std::sqrt(static_cast<double>(r))) * (inner * std::conj(inner));
    }
  }
  const double C = h.decay_C(), beta = h.decay_beta();
  const double a = 0.5 + 2.0 * beta, b = 1.0 + 2.0 * beta;
  const double tail_r = std::pow(static_cast<double>(r_max), 1.0 - a) / (a - 1.0);
  const double tail_p = std::pow(static_cast<double>(pq_cap), 1.0 - b) / (b - 1.0);
  const double tail = C * C * (tail_r * zeta(b) * zeta(b) + zeta(a) * 2.0 * tail_p * zeta(b));
  return {A, r_max, pq_cap, tail};
}

double alpha_partial(const CoeffSequence& h, long long t) {
  if (t < 1) throw std::invalid_argument("alpha_partial: t >= 1");
  if (t == 1) return 0.0;  // only m = 0 contributes and xi_0 = 0
  const FourierCoeffs f = xi_coeff(h, t - 1);
  return pairwise_map_sum(static_cast<long long>(f.values.size()),
                          [&](long long m) { return std::norm(f.values[m]); });
}

double parseval_variance_limit(const CoeffSequence& h, double y) {
  if (!(y > 0.0) || y > 0.1)
    throw std::invalid_argument("parseval_variance_limit: need 0 < y <= 0.1");
  const double c = 2.0 * kTwoPi * y;  // 4 pi y
  const double C = h.decay_C();
  const double t = std::exp(-c);
  long long M = static_cast<long long>(std::ceil(40.0 / c)) + 16;
  for (;;) {
    const FourierCoeffs f = xi_coeff(h, M);
    const double partial = pairwise_map_sum(M, [&](long long i) {
      const long long m = i + 1;
      return std::norm(f.values[m]) * std::exp(-c * static_cast<double>(m));
    });
    // certificate tail: |xi_m|^2 <= C^2 m
    const double tail = C * C * std::exp(-c * static_cast<double>(M + 1)) *
                        (static_cast<double>(M + 1) * (1.0 - t) + t) /
                        ((1.0 - t) * (1.0 - t));
    if (partial == 0.0 || tail < 1e-12 * partial) return std::sqrt(y) * partial;
    if (M > (1LL << 26))
      throw term_cap_error("parseval_variance_limit: coefficient cap exceeded");
    M *= 2;
  }
}

void TrigPolynomial::set(long long n, std::complex<double> v) {
  if (n == 0)
    throw std::invalid_argument("TrigPolynomial: the mean term is excluded");
  if (v == std::complex<double>{0.0, 0.0})
    coeffs.erase(n);
  else
    coeffs[n] = v;
}

bool TrigPolynomial::is_real() const {
  for (const auto& [n, v] : coeffs) {
    const auto it = coeffs.find(-n);
    if (it == coeffs.end()) return false;
    if (std::abs(std::conj(it->second) - v) > 1e-12 * (1.0 + std::abs(v))) return false;
  }
  return true;
}

std::complex<double> TrigPolynomial::eval(double t) const {
  std::complex<double> s{0.0, 0.0};
  for (const auto& [n, v] : coeffs) s += v * e_unit(n, t);
  return s;
}

std::complex<double> error_term_R(const TrigPolynomial& psi, double x, long long M) {
  if (M < 1) throw std::invalid_argument("error_term_R: M >= 1");
  if (!(x >= 0.0 && x < 1.0))
    throw std::invalid_argument("error_term_R: x must lie in [0, 1)");
  if (psi.coeffs.empty()) return {0.0, 0.0};
  const std::vector<std::pair<long long, std::complex<double>>> terms(psi.coeffs.begin(),
                                                                      psi.coeffs.end());
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> u = e_unit(1, x);  // e(n^2 x) at n = 1
  std::complex<double> v = e_unit(3, x);  // e((2n+1) x) at n = 1
  const std::complex<double> stride = e_unit(2, x);
  for (long long n = 1; n <= M; ++n) {
    if ((n & 1023) == 0) {  // re-anchor: the second difference drifts ~ n^2 ulp
      u = e_unit(n * n, x);
      v = e_unit(2 * n + 1, x);
    }
    for (const auto& [k, coef] : terms) sum += coef * pow_unit(u, k);
    u *= v;
    v *= stride;
  }
  return sum / std::sqrt(static_cast<double>(M));
}

double ks_uniform(std::vector<double> values, double lo, double hi) {
  if (values.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  if (!(hi > lo)) throw std::invalid_argument("ks_uniform: bad interval");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = (values[i] - lo) / (hi - lo);
    d = std::max(d, std::max(u - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - u));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace hamf
