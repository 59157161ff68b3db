#include "hamf/util.hpp"

#include <atomic>
#include <thread>

namespace hamf {

std::complex<double> cpow_int(std::complex<double> w, long long n) {
  if (n < 0) return 1.0 / cpow_int(w, -n);
  std::complex<double> acc{1.0, 0.0};
  while (n > 0) {
    if (n & 1) acc *= w;
    w *= w;
    n >>= 1;
  }
  return acc;
}

double zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta: need s > 1");
  const double n = 64.0;
  double sum = 0.0;
  for (int k = 1; k < 64; ++k) sum += std::pow(static_cast<double>(k), -s);
  const double ns = std::pow(n, -s);
  sum += ns * n / (s - 1.0);
  sum += 0.5 * ns;
  sum += s * ns / (12.0 * n);
  sum -= s * (s + 1.0) * (s + 2.0) * ns / (720.0 * n * n * n);
  sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ns /
         (30240.0 * n * n * n * n * n);
  return sum;
}

std::vector<int> moebius_table(long long n) {
  if (n < 1) throw std::invalid_argument("moebius_table: n >= 1");
  std::vector<int> mu(n + 1, 0);
  std::vector<char> composite(n + 1, 0);
  std::vector<long long> primes;
  mu[1] = 1;
  for (long long i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (long long p : primes) {
      if (i * p > n) break;
      composite[i * p] = 1;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return (next() >> 11) * 0x1.0p-53; }

long long SplitMix64::next_in(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("SplitMix64::next_in: empty range");
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

void parallel_chunks(int n_threads, long long chunks,
                     const std::function<void(long long)>& fn) {
  if (chunks <= 0) return;
  if (n_threads < 1) n_threads = 1;
  const int workers = static_cast<int>(std::min<long long>(n_threads, chunks));
  if (workers == 1) {
    for (long long i = 0; i < chunks; ++i) fn(i);
    return;
  }
  std::atomic<long long> head{0};
  auto drain = [&] {
    for (;;) {
      const long long i = head.fetch_add(1, std::memory_order_relaxed);
      if (i >= chunks) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
}

}  // namespace hamf
