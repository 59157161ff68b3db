#pragma once

#include "hamf/halfplane.hpp"

namespace hamf {

/// Element [g, beta] of the universal cover of SL(2,R), restricted to integer
/// matrices. The phase branch is canonicalized as
///   beta(z) = Arg(c z + d) + 2 pi winding,
/// which is continuous on H for fixed g: c z + d stays in the upper half
/// plane for c > 0, the lower for c < 0, and on a real half-line for c = 0.
struct CoverElement {
  UnimodularInt g;
  long long winding;
  double beta(const UpperHalfPoint& z) const;
  static CoverElement identity() { return {UnimodularInt::identity(), 0}; }
};

/// Point (z, phi) in cover coordinates H x R.
struct CoverPoint {
  UpperHalfPoint z;
  double phi;
};

/// Theta multiplier j = (c|d) ((cz+d)/|cz+d|)^{1/2} with the principal square
/// root. Rejects gamma outside Gamma_1(4).
std::complex<double> j_factor(const UnimodularInt& gamma, const UpperHalfPoint& z);

/// Product in the cover: matrix product, with the winding fixed so that
/// beta_{uv}(z) = beta_u(v z) + beta_v(z). The two branches differ by a
/// constant 2 pi multiple which is resolved numerically at z = i; throws
/// std::runtime_error if the mismatch is farther than 1e-6 from an integer
/// multiple of 2 pi.
CoverElement cover_mul(const CoverElement& u, const CoverElement& v);

/// Cover action (z, phi) -> (g z, phi + beta(z)).
CoverPoint cover_act(const CoverElement& u, const CoverPoint& p);

/// The canonical lift of gamma in Gamma_1(4) with exp(i beta(z)/2) =
/// j_gamma(z): winding 0 when (c|d) = +1 and winding 1 when (c|d) = -1.
CoverElement delta1_lift(const UnimodularInt& gamma);

}  // namespace hamf
