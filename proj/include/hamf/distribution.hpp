#pragma once

#include <map>

#include "hamf/almost_modular.hpp"

namespace hamf {

enum class Sampler { kIidUniform, kStratifiedGrid };

const char* sampler_name(Sampler s);

/// Seeded sample set {w_j = y^{1/4} xi(x_j + i y)} along the horocycle at
/// height y; x_j is reconstructable from (sampler, seed, j), see sample_x.
struct EmpiricalDistribution {
  std::vector<std::complex<double>> samples;
  double y = 0.0;
  uint64_t seed = 0;
  Sampler sampler = Sampler::kStratifiedGrid;
};

struct RotationStat {
  double moment_stat;   // max |E w^a conj(w)^b| / (E|w|^2)^{(a+b)/2} over
                        // (a,b) in {(1,0),(2,0),(3,1),(2,1)}
  double arg_ks;        // KS statistic of arg w against uniform on (-pi, pi]
  double trim_fraction; // top |w| fraction excluded from the moment ratios
};

/// A := sum_{r<=r_max} sum_{p,q<=pq_cap, gcd(p,q)=1} h_{rp^2} conj(h_{rq^2}) / (pq sqrt r),
/// with a decay-certificate bound on the discarded region.
struct VarianceReport {
  std::complex<double> A;
  long long r_max;
  long long pq_cap;
  double tail_estimate;
};

/// Trigonometric polynomial with no constant term (mean zero by
/// construction); real-valued iff the coefficients are conjugate-symmetric.
struct TrigPolynomial {
  std::map<long long, std::complex<double>> coeffs;
  void set(long long n, std::complex<double> v);
  bool is_real() const;
  std::complex<double> eval(double t) const;
};

/// Draws count samples w_j = y^{1/4} xi(x_j + i y). The stratified grid is
/// x_j = (j + 1/2)/count; iid points come from per-index derived seeds, so
/// the result is identical for any thread count. xi is evaluated through its
/// Fourier series with a certificate-bounded horizon. Requires 0 < y <= 0.1.
EmpiricalDistribution sample_values(const CoeffSequence& h, double y, long long count,
                                    uint64_t seed, Sampler sampler, int n_threads = 1,
                                    const SeriesTolerance& tol = {});

/// The x coordinate that produced sample j.
double sample_x(const EmpiricalDistribution& d, long long j);

/// Mean of w^a conj(w)^b over the sample set.
std::complex<double> empirical_moment(const EmpiricalDistribution& d, int a, int b);

/// Rotation-invariance observables; throws on zero variance. Moment ratios
/// are computed on a 1%-trimmed (by |w|) copy as a heavy-tail guard; the
/// angular statistic uses every nonzero sample.
RotationStat rotation_invariance_stat(const EmpiricalDistribution& d);

VarianceReport variance_A(const CoeffSequence& h, long long r_max, long long pq_cap);

/// alpha(t) = sum_{0 <= m < t} |xi_m|^2.
double alpha_partial(const CoeffSequence& h, long long t);

/// y^{1/2} sum_{m>=1} |xi_m|^2 e^{-4 pi m y}; approaches A/4 as y -> 0.
/// Requires 0 < y <= 0.1.
double parseval_variance_limit(const CoeffSequence& h, double y);

/// R(x, M) = (1/sqrt M) sum_{n<=M} psi(n^2 x) for mean-zero psi, x in [0,1).
std::complex<double> error_term_R(const TrigPolynomial& psi, double x, long long M);

/// One-sample KS statistic against the uniform law on [lo, hi].
double ks_uniform(std::vector<double> values, double lo, double hi);

/// Two-sample KS distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace hamf
