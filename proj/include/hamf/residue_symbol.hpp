#pragma once

namespace hamf {

/// Generalized quadratic residue symbol (a|b) for any integer a and odd
/// nonzero b (b may be negative, and b = +-1 is allowed):
///   (a|b) = 0 when gcd(a, b) != 1, (a|-1) = sgn a, (0|+-1) = 1,
///   multiplicative over the prime factors of positive b,
///   (a|-b) = (a|-1)(a|b).
/// Computed without factoring b (binary Jacobi reduction).
/// Throws std::invalid_argument for even or zero b.
int qr_symbol(long long a, long long b);

/// Legendre symbol by Euler's criterion a^((p-1)/2) mod p.
/// Throws std::invalid_argument unless p is an odd prime.
int legendre_oracle(long long a, long long p);

}  // namespace hamf
