#include "hamf/cover.hpp"

#include <cmath>

#include "hamf/residue_symbol.hpp"

namespace hamf {

double CoverElement::beta(const UpperHalfPoint& z) const {
  const std::complex<double> w{static_cast<double>(g.c) * z.x + static_cast<double>(g.d),
                               static_cast<double>(g.c) * z.y};
  return principal_arg(w) + kTwoPi * static_cast<double>(winding);
}

std::complex<double> j_factor(const UnimodularInt& gamma, const UpperHalfPoint& z) {
  if (!in_gamma1(gamma, 4))
    throw std::invalid_argument("j_factor: gamma must lie in Gamma_1(4)");
  return static_cast<double>(qr_symbol(gamma.c, gamma.d)) *
         principal_sqrt(epsilon(gamma, z));
}

CoverElement cover_mul(const CoverElement& u, const CoverElement& v) {
  const UnimodularInt prod = u.g * v.g;
  const UpperHalfPoint zi{0.0, 1.0};
  const double target = u.beta(moebius(v.g, zi)) + v.beta(zi);
  const double base =
      principal_arg({static_cast<double>(prod.d), static_cast<double>(prod.c)});
  const double turns = (target - base) / kTwoPi;
  const double k = std::round(turns);
  if (std::abs(target - base - kTwoPi * k) > 1e-6)
    throw std::runtime_error("cover_mul: phase mismatch is not a 2 pi multiple");
  return {prod, static_cast<long long>(k)};
}

CoverPoint cover_act(const CoverElement& u, const CoverPoint& p) {
  return {moebius(u.g, p.z), p.phi + u.beta(p.z)};
}

CoverElement delta1_lift(const UnimodularInt& gamma) {
  if (!in_gamma1(gamma, 4))
    throw std::invalid_argument("delta1_lift: gamma must lie in Gamma_1(4)");
  // exp(i beta / 2) = (-1)^winding (eps)^{1/2}, so the symbol fixes the parity
  return {gamma, qr_symbol(gamma.c, gamma.d) == 1 ? 0 : 1};
}

}  // namespace hamf
