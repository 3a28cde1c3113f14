#include "nlh/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlh/specfun.hpp"

namespace nlh::asymptotics {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841972;
constexpr double kTrustedT = 10.0;
const cplx kI{0.0, 1.0};

using deltafun::DeltaData;
using deltafun::DeltaEvaluator;
using modelrh::Orientation;
using specfun::reciprocal_cgamma;

void check_m1_inputs(cplx vartheta, cplx r1_at, cplx r2_at) {
  cplx want = std::exp(-2.0 * kPi * vartheta);
  if (std::abs(1.0 - r1_at * r2_at - want) >
      1e-10 * std::max(1.0, std::abs(want))) {
    throw std::invalid_argument(
        "model_m1: 1 - r1 r2 differs from e^{-2 pi vartheta}");
  }
}

// shared guard for the ray assembly
void check_ray_inputs(const PhaseGeometry& geom, double t) {
  if (geom.beta <= 0.0) {
    throw std::domain_error(
        "leading-order assembly requires beta > 0 (the sign pattern of "
        "alpha + 6 beta lambda at the stationary points fixes the branch)");
  }
  if (t <= 0.0) throw std::domain_error("leading-order assembly requires t > 0");
}

struct RayContext {
  DeltaData dd;
  cplx r1_l0, r1_l1;
  double sqrt_disc = 0.0;
  double s = 0.0;   // sqrt(8 t sqrt(D))
  double dl = 0.0;  // lambda1 - lambda0
};

RayContext ray_context(const ScatteringData& sdata, const PhaseGeometry& geom,
                       double t) {
  check_ray_inputs(geom, t);
  DeltaEvaluator de(sdata, geom);
  std::string diag;
  if (!de.winding_ok(&diag)) {
    throw std::domain_error("winding admissibility violated: " + diag);
  }
  RayContext c;
  c.dd = de.data();
  c.r1_l0 = sdata.eval_r1(geom.lambda0);
  c.r1_l1 = sdata.eval_r1(geom.lambda1);
  c.sqrt_disc = std::sqrt(geom.discriminant);
  c.s = std::sqrt(8.0 * t * c.sqrt_disc);
  c.dl = geom.lambda1 - geom.lambda0;
  return c;
}

// One attached term; sign = +1 at lambda0, -1 at lambda1.
cplx ray_term(const PhaseGeometry& geom, double t, const RayContext& c,
              int which, bool closed_form) {
  double sign = (which == 0) ? 1.0 : -1.0;
  double lam = (which == 0) ? geom.lambda0 : geom.lambda1;
  cplx vt = (which == 0) ? c.dd.vartheta0 : c.dd.vartheta1;
  cplx chi = (which == 0) ? c.dd.chi0_at_l0 : c.dd.chi1_at_l1;
  cplx r1 = (which == 0) ? c.r1_l0 : c.r1_l1;

  cplx rgam = reciprocal_cgamma(sign * kI * vt);
  if (rgam == cplx(0.0)) return 0.0;  // vartheta = 0: the term drops out
  if (std::abs(r1) == 0.0) {
    throw std::domain_error(
        "leading-order term undefined: r1 vanishes at a stationary point with "
        "nonzero vartheta");
  }

  double phase_t = 4.0 * lam * lam * t * (geom.alpha + 4.0 * geom.beta * lam);
  if (!closed_form) {
    cplx expo = sign * 2.0 * kI * vt * std::log(c.s * c.dl) -
                kPi * vt / 2.0 + kI * phase_t + 2.0 * chi;
    return 2.0 * std::sqrt(2.0 * kPi) * std::exp(sign * cplx(0.0, -kPi / 4.0)) *
           std::exp(expo) * rgam / (c.s * r1);
  }
  // regrouped as explicit powers of t
  double base = 8.0 * std::pow(geom.discriminant, 1.5) /
                (9.0 * geom.beta * geom.beta);
  cplx expo = kI * phase_t + 2.0 * chi - kPi * vt / 2.0 +
              cplx(0.0, kPi / 4.0) +
              sign * kI * (vt.real() * std::log(t) + vt * std::log(base));
  // alpha + 6 beta lambda0 = -sqrt(D) (upper branch), = +sqrt(D) at lambda1
  cplx root = (which == 0) ? kI * std::sqrt(c.sqrt_disc)
                           : cplx(std::sqrt(c.sqrt_disc), 0.0);
  double tpow = std::pow(t, -0.5 - sign * vt.imag());
  return std::sqrt(kPi) * tpow * std::exp(expo) * rgam / (root * r1);
}

LeadingOrder assemble(const ScatteringData& sdata, const PhaseGeometry& geom,
                      double t, bool closed_form) {
  RayContext c = ray_context(sdata, geom, t);
  LeadingOrder out;
  out.t = t;
  out.vartheta0 = c.dd.vartheta0;
  out.vartheta1 = c.dd.vartheta1;
  out.term0 = ray_term(geom, t, c, 0, closed_form);
  out.term1 = ray_term(geom, t, c, 1, closed_form);
  out.q = out.term0 + out.term1;
  out.error_exponent = error_exponent(c.dd.vartheta0, c.dd.vartheta1);
  out.extrapolated = t < kTrustedT;
  return out;
}

}  // namespace

cplx model_m1_12(Orientation o, cplx vartheta, cplx r1_at, cplx r2_at,
                 M1Convention conv) {
  check_m1_inputs(vartheta, r1_at, r2_at);
  if (std::abs(r1_at) == 0.0) {
    if (vartheta == cplx(0.0)) return 0.0;
    throw std::domain_error("model_m1_12: r1 = 0 with nonzero vartheta");
  }
  cplx v;
  if (o == Orientation::left) {
    v = std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, -3.0 * kPi / 4.0)) *
        std::exp(3.0 * kPi * vartheta / 2.0) *
        reciprocal_cgamma(kI * vartheta) / r1_at;
    if (conv == M1Convention::display) v *= std::exp(-2.0 * kPi * vartheta);
  } else {
    v = std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, -kPi / 4.0)) *
        std::exp(-kPi * vartheta / 2.0) *
        reciprocal_cgamma(-kI * vartheta) / r1_at;
  }
  return v;
}

cplx model_m1_21(Orientation o, cplx vartheta, cplx r1_at, cplx r2_at,
                 M1Convention conv) {
  check_m1_inputs(vartheta, r1_at, r2_at);
  if (std::abs(r2_at) == 0.0) {
    if (vartheta == cplx(0.0)) return 0.0;
    throw std::domain_error("model_m1_21: r2 = 0 with nonzero vartheta");
  }
  cplx v;
  if (o == Orientation::left) {
    v = std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, 3.0 * kPi / 4.0)) *
        std::exp(-5.0 * kPi * vartheta / 2.0) *
        reciprocal_cgamma(-kI * vartheta) / r2_at;
    if (conv == M1Convention::display) v *= std::exp(2.0 * kPi * vartheta);
  } else {
    v = std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, kPi / 4.0)) *
        std::exp(-kPi * vartheta / 2.0) * reciprocal_cgamma(kI * vartheta) /
        r2_at;
  }
  return v;
}

double error_exponent(cplx vartheta0, cplx vartheta1) {
  return 0.5 + std::max(std::abs(vartheta0.imag()), std::abs(vartheta1.imag()));
}

Delta0Factors delta0_factors(const ScatteringData& sdata,
                             const PhaseGeometry& geom, double t) {
  check_ray_inputs(geom, t);
  DeltaEvaluator de(sdata, geom);
  DeltaData dd = de.data();
  double sqrt_disc = std::sqrt(geom.discriminant);
  Delta0Factors f;
  f.b0 = 32.0 * geom.lambda0 * geom.lambda0 * t * sqrt_disc;
  f.b1 = 32.0 * geom.lambda1 * geom.lambda1 * t *
         (geom.alpha + 6.0 * geom.beta * geom.lambda1);
  if (f.b0 <= 0.0 || f.b1 <= 0.0) {
    throw std::domain_error(
        "delta0_factors: non-positive scaling base (stationary point at the "
        "origin)");
  }
  double p0 = 2.0 * geom.lambda0 * geom.lambda0 * t *
              (4.0 * geom.beta * geom.lambda0 + geom.alpha);
  double p1 = 2.0 * geom.lambda1 * geom.lambda1 * t *
              (4.0 * geom.beta * geom.lambda1 + geom.alpha);
  f.at_lambda0 = std::exp(kI * dd.vartheta0 / 2.0 * std::log(f.b0) +
                          kI * p0 + dd.chi0_at_l0);
  f.at_lambda1 = std::exp(-kI * dd.vartheta1 / 2.0 * std::log(f.b1) +
                          kI * p1 + dd.chi1_at_l1);
  return f;
}

LeadingOrder leading_q(const ScatteringData& sdata, const PhaseGeometry& geom,
                       double t) {
  return assemble(sdata, geom, t, false);
}

LeadingOrder leading_q_closed_form(const ScatteringData& sdata,
                                   const PhaseGeometry& geom, double t) {
  return assemble(sdata, geom, t, true);
}

ScaledJumpLimit scaled_jump_limit_check(const ScatteringData& sdata,
                                        const PhaseGeometry& geom, double t,
                                        cplx lambda_tilde) {
  check_ray_inputs(geom, t);
  if (lambda_tilde.imag() <= 0.0) {
    throw std::domain_error(
        "scaled_jump_limit_check: lambda_tilde must lie in the open upper "
        "half-plane");
  }
  DeltaEvaluator de(sdata, geom);
  DeltaData dd = de.data();
  double l0 = geom.lambda0, l1 = geom.lambda1;
  double s = std::sqrt(8.0 * t * std::sqrt(geom.discriminant));
  cplx vt = dd.vartheta0;
  cplx lam = l0 + lambda_tilde / s;

  cplx pow_main = std::exp(-kI * vt * std::log(lambda_tilde));
  cplx pow_near =
      std::exp(-kI * vt * std::log(2.0 * l0 / (lambda_tilde / s + l0 - l1)));
  // cubic correction to the quadratic phase, vanishing like t^{-1/2}
  cplx corr = 1.0 - kI * geom.beta * lambda_tilde /
                        (std::sqrt(2.0 * t) *
                         std::pow(cplx(6.0 * geom.beta * l0 + geom.alpha), 1.5));
  cplx osc = std::exp(kI / 4.0 * lambda_tilde * lambda_tilde * corr);
  cplx chi_shift =
      std::exp(de.chi(lam, deltafun::Point::lambda0) - dd.chi0_at_l0);

  ScaledJumpLimit out;
  out.scaled = pow_main * pow_near * osc * chi_shift;
  out.finite_factor = std::exp(-kI * vt * std::log(2.0 * l0 / (l0 - l1)));
  out.limit = pow_main *
              std::exp(kI / 4.0 * lambda_tilde * lambda_tilde) *
              out.finite_factor;
  out.deviation = std::abs(out.scaled - out.limit);
  return out;
}

}  // namespace nlh::asymptotics
