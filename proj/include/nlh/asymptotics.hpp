// Leading-order long-time profile of the reconstructed potential along rays
// x = xi t: attachment coefficients at the stationary points, the 1/lambda
// residue of the local model solution, the assembled two-term formula with its
// remainder exponent, and the scaled-jump limit check behind the matching.
#pragma once

#include <complex>

#include "nlh/deltafun.hpp"
#include "nlh/modelrh.hpp"
#include "nlh/phase.hpp"
#include "nlh/scattering.hpp"

namespace nlh::asymptotics {

using nlh::cplx;
using nlh::phase::PhaseGeometry;
using nlh::scattering::ScatteringData;

// The residue coefficient appears in two printed normalizations.  For the
// left orientation they differ by e^{-2 pi vartheta} (entry 12) and
// e^{+2 pi vartheta} (entry 21); for the right orientation they coincide.
// The product (entry 12)(entry 21) equals vartheta in either convention.
enum class M1Convention { display, normalized };

// Coefficient of 1/lambda_tilde in the large-argument expansion of the local
// model solution.  Requires 1 - r1 r2 = e^{-2 pi vartheta} (invalid_argument
// otherwise); returns 0 for vartheta = 0; a vanishing reflection sample with
// nonzero vartheta is rejected (domain_error).
cplx model_m1_12(modelrh::Orientation o, cplx vartheta, cplx r1_at, cplx r2_at,
                 M1Convention conv = M1Convention::normalized);
cplx model_m1_21(modelrh::Orientation o, cplx vartheta, cplx r1_at, cplx r2_at,
                 M1Convention conv = M1Convention::normalized);

// Remainder exponent 1/2 + max(|Im vartheta0|, |Im vartheta1|): the error
// term of the two-term formula decays like t^{-error_exponent}.
double error_exponent(cplx vartheta0, cplx vartheta1);

// Attachment coefficients of the scalar factor at the stationary points,
//   at lambda0: B0^{+i vartheta0/2} e^{2 i lambda0^2 t (4 beta lambda0 + alpha) + chi0(lambda0)}
//   at lambda1: B1^{-i vartheta1/2} e^{2 i lambda1^2 t (4 beta lambda1 + alpha) + chi1(lambda1)}
// with B0 = 32 lambda0^2 t sqrt(D) and B1 = 32 lambda1^2 t (alpha + 6 beta lambda1),
// D the discriminant.  Requires beta > 0, t > 0 and B0, B1 > 0 (domain_error).
struct Delta0Factors {
  cplx at_lambda0{1.0, 0.0};
  cplx at_lambda1{1.0, 0.0};
  double b0 = 0.0, b1 = 0.0;
};

Delta0Factors delta0_factors(const ScatteringData& sdata,
                             const PhaseGeometry& geom, double t);

// Two-term leading-order value at (x, t) = (xi t, t).
struct LeadingOrder {
  double t = 0.0;
  cplx term0, term1;     // contributions attached to lambda0 and lambda1
  cplx q;                // term0 + term1
  cplx vartheta0, vartheta1;
  double error_exponent = 0.5;
  bool extrapolated = false;  // t below the trusted range (t < 10)
};

// Assembled route: terms built from the scaled contour length s = sqrt(8 t sqrt(D)),
//   term0 = 2 sqrt(2 pi) e^{-i pi/4} (s dl)^{+2 i vartheta0} e^{-pi vartheta0/2}
//           e^{4 i lambda0^2 t (alpha + 4 beta lambda0) + 2 chi0(lambda0)}
//           / (s r1(lambda0) Gamma(+i vartheta0)),
//   term1 = 2 sqrt(2 pi) e^{+i pi/4} (s dl)^{-2 i vartheta1} e^{-pi vartheta1/2}
//           e^{4 i lambda1^2 t (alpha + 4 beta lambda1) + 2 chi1(lambda1)}
//           / (s r1(lambda1) Gamma(-i vartheta1)),
// with dl = lambda1 - lambda0.  Requires beta > 0, t > 0, and the winding
// admissibility |Im vartheta| < 1/2 (domain_error carrying the diagnostic).
LeadingOrder leading_q(const ScatteringData& sdata, const PhaseGeometry& geom,
                       double t);

// Closed-form route: the same two terms regrouped as explicit powers of t,
//   term0 = sqrt(pi) t^{-1/2 - Im vartheta0}
//           exp[4 i lambda0^2 t (4 beta lambda0 + alpha) + 2 chi0(lambda0)
//               - pi vartheta0/2 + i pi/4 + i Re(vartheta0) ln t
//               + i vartheta0 ln(8 D^{3/2} / (9 beta^2))]
//           / (sqrt(alpha + 6 beta lambda0) r1(lambda0) Gamma(+i vartheta0)),
// and the lambda1 analogue with conjugated sign pattern; the square root at
// lambda0 has negative argument and takes the upper-half-plane branch
// e^{i pi/2} sqrt(|.|) (the only branch choice in the formula).
LeadingOrder leading_q_closed_form(const ScatteringData& sdata,
                                   const PhaseGeometry& geom, double t);

// Pointwise limit of the scalar factor under the stationary-point scaling
// lambda = lambda0 + lambda_tilde / s: compares the exact rescaled factor
// against lambda_tilde^{-i vartheta0} e^{i lambda_tilde^2/4} times the finite
// factor (2 lambda0 / (lambda0 - lambda1))^{-i vartheta0}.  lambda_tilde must
// lie in the open upper half-plane.
struct ScaledJumpLimit {
  cplx scaled, limit, finite_factor;
  double deviation = 0.0;
};

ScaledJumpLimit scaled_jump_limit_check(const ScatteringData& sdata,
                                        const PhaseGeometry& geom, double t,
                                        cplx lambda_tilde);

}  // namespace nlh::asymptotics
