#include "hamf/residue_symbol.hpp"

#include <climits>
#include <stdexcept>
#include <utility>

namespace hamf {
namespace {

// Binary Jacobi reduction for odd b >= 1 and any a: quadratic reciprocity
// plus the supplementary law for 2. Returns 0 when gcd(a, b) > 1.
int jacobi_positive(long long a, long long b) {
  a %= b;
  if (a < 0) a += b;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const long long r = b & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, b);
    if ((a & 3) == 3 && (b & 3) == 3) t = -t;
    a %= b;
  }
  return b == 1 ? t : 0;
}

long long mulmod(long long x, long long y, long long m) {
  return static_cast<long long>(static_cast<__int128>(x) * y % m);
}

long long powmod(long long base, long long exp, long long m) {
  long long acc = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

bool is_odd_prime(long long p) {
  if (p < 3 || (p & 1) == 0) return false;
  for (long long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

int qr_symbol(long long a, long long b) {
  if (b == 0 || (b & 1) == 0)
    throw std::invalid_argument("qr_symbol: b must be odd and nonzero");
  if (b < 0) {
    if (b == LLONG_MIN) throw std::invalid_argument("qr_symbol: |b| out of range");
    if (a == 0) return b == -1 ? 1 : 0;  // (0|-1) = 1; otherwise gcd(0, b) > 1
    const int sign = a < 0 ? -1 : 1;     // (a|-1) = sgn a
    return sign * qr_symbol(a, -b);
  }
  if (b == 1) return 1;  // empty prime factorization
  if (a == 0) return 0;  // gcd(0, b) = b > 1
  return jacobi_positive(a, b);
}

int legendre_oracle(long long a, long long p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("legendre_oracle: p must be an odd prime");
  long long r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace hamf
