// Closed-form solution of the constant-jump model problem and the sector
// transform connecting it to the four-ray problem.
#include "nlh/modelrh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlh::modelrh {
namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

using nlh::specfun::pcf_D;
using nlh::specfun::pcf_D_deriv;
using nlh::specfun::reciprocal_cgamma;

cplx polar1(double angle) { return std::polar(1.0, angle); }

// log with the cut on the positive real axis, arg in (0, 2 pi)
cplx log_cut_positive(cplx z, CutSide side) {
  if (z == 0.0) throw std::domain_error("model power: branch point");
  double a = std::arg(z);
  if (z.imag() == 0.0 && z.real() > 0.0) {
    if (side == CutSide::none)
      throw std::domain_error("model power: on-cut evaluation requires a side");
    a = (side == CutSide::above) ? 0.0 : 2.0 * kPi;
  } else if (a < 0.0) {
    a += 2.0 * kPi;
  }
  return {std::log(std::abs(z)), a};
}

// principal log, cut on the negative real axis
cplx log_cut_negative(cplx z, CutSide side) {
  if (z == 0.0) throw std::domain_error("model power: branch point");
  double a = std::arg(z);
  if (z.imag() == 0.0 && z.real() < 0.0)
  {
    if (side == CutSide::none)
      throw std::domain_error("model power: on-cut evaluation requires a side");
    a = (side == CutSide::above) ? kPi : -kPi;
  }
  return {std::log(std::abs(z)), a};
}

// orientation-dependent branch log used by all lambda_tilde powers
cplx branch_log(const ModelProblem& p, cplx lt, CutSide side) {
  return p.orientation == Orientation::left ? log_cut_positive(lt, side)
                                            : log_cut_negative(lt, side);
}

cplx gamma1_of(const ModelProblem& p) {
  return p.r1_at / (1.0 - p.r1_at * p.r2_at);
}
cplx gamma2_of(const ModelProblem& p) {
  return p.r2_at / (1.0 - p.r1_at * p.r2_at);
}

bool upper_of(cplx lt, CutSide side) {
  if (lt.imag() > 0.0) return true;
  if (lt.imag() < 0.0) return false;
  if (side == CutSide::none)
    throw std::domain_error("model solution: real lambda_tilde needs a side flag");
  return side == CutSide::above;
}

}  // namespace

ModelProblem make_model(Orientation orientation, cplx vartheta, cplx r1_at,
                        cplx r2_at) {
  cplx want = std::exp(-2.0 * kPi * vartheta);
  cplx have = 1.0 - r1_at * r2_at;
  if (std::abs(have - want) > 1e-10 * std::max(1.0, std::abs(want))) {
    std::ostringstream msg;
    msg << "make_model: 1 - r1 r2 = " << have << " does not match e^{-2 pi vartheta} = "
        << want;
    throw std::invalid_argument(msg.str());
  }
  ModelProblem p;
  p.orientation = orientation;
  p.vartheta = vartheta;
  p.r1_at = r1_at;
  p.r2_at = r2_at;
  p.degenerate = (r1_at * r2_at == 0.0);
  const double s2pi = std::sqrt(2.0 * kPi);
  const cplx th = vartheta;
  if (orientation == Orientation::left) {
    p.psi = (r1_at == 0.0) ? 0.0
                           : s2pi * polar1(-kPi / 4) * std::exp(1.5 * kPi * th) *
                                 reciprocal_cgamma(kI * th) / r1_at;
    p.phi = (r2_at == 0.0) ? 0.0
                           : s2pi * polar1(kPi / 4) * std::exp(-2.5 * kPi * th) *
                                 reciprocal_cgamma(-kI * th) / r2_at;
  } else {
    p.psi = (r1_at == 0.0) ? 0.0
                           : s2pi * polar1(-3 * kPi / 4) * std::exp(-0.5 * kPi * th) *
                                 reciprocal_cgamma(-kI * th) / r1_at;
    p.phi = (r2_at == 0.0) ? 0.0
                           : s2pi * polar1(3 * kPi / 4) * std::exp(-0.5 * kPi * th) *
                                 reciprocal_cgamma(kI * th) / r2_at;
  }
  return p;
}

std::pair<cplx, cplx> psi_phi(const ModelProblem& p) { return {p.psi, p.phi}; }

Mat2 model_jump(const ModelProblem& p) {
  return {1.0 - p.r1_at * p.r2_at, -p.r2_at, p.r1_at, 1.0};
}

Mat2 model_solution(const ModelProblem& p, cplx lt, CutSide side) {
  const bool upper = upper_of(lt, side);
  const cplx th = p.vartheta;
  // prefactor exponents (units of pi*vartheta/4) and argument rotations of the
  // two diagonal parabolic-cylinder entries
  double p11, p22, rot11, rot22;
  cplx nu11, nu22;
  if (p.orientation == Orientation::left) {
    nu11 = -kI * th;
    nu22 = kI * th;
    if (upper) {
      p11 = 1.0;  rot11 = -kPi / 4;
      p22 = -3.0; rot22 = -3 * kPi / 4;
    } else {
      p11 = 5.0;  rot11 = 3 * kPi / 4;
      p22 = -7.0; rot22 = kPi / 4;
    }
  } else {
    nu11 = kI * th;
    nu22 = -kI * th;
    if (upper) {
      p11 = -3.0; rot11 = -3 * kPi / 4;
      p22 = 1.0;  rot22 = -kPi / 4;
    } else {
      p11 = 1.0;  rot11 = kPi / 4;
      p22 = -3.0; rot22 = 3 * kPi / 4;
    }
  }
  const cplx e11 = polar1(rot11), e22 = polar1(rot22);
  const cplx c11 = std::exp(p11 * kPi * th / 4.0);
  const cplx c22 = std::exp(p22 * kPi * th / 4.0);
  const cplx m11 = c11 * pcf_D(nu11, e11 * lt);
  const cplx m22 = c22 * pcf_D(nu22, e22 * lt);
  const cplx d11 = c11 * e11 * pcf_D_deriv(nu11, e11 * lt);  // d/d lambda_tilde
  const cplx d22 = c22 * e22 * pcf_D_deriv(nu22, e22 * lt);

  cplx m21 = 0.0, m12 = 0.0;
  if (p.orientation == Orientation::left) {
    if (p.psi != 0.0) m21 = (kI * lt / 2.0 * m11 - d11) / p.psi;
    if (p.phi != 0.0) m12 = (-kI * lt / 2.0 * m22 - d22) / p.phi;
  } else {
    if (p.psi != 0.0) m21 = -(d11 + kI * lt / 2.0 * m11) / p.psi;
    if (p.phi != 0.0) m12 = (kI * lt / 2.0 * m22 - d22) / p.phi;
  }
  return {m11, m12, m21, m22};
}

double jump_product_check(const ModelProblem& p) {
  Mat2 above = model_solution(p, 0.0, CutSide::above);
  Mat2 below = model_solution(p, 0.0, CutSide::below);
  Mat2 prod = below.inverse() * above;
  return nlh::mat_dist(prod, model_jump(p));
}

Mat2 normalization(const ModelProblem& p, cplx lt, CutSide side) {
  cplx L = branch_log(p, lt, side);
  cplx quad = kI * lt * lt / 4.0;
  cplx th = p.vartheta;
  cplx d = (p.orientation == Orientation::left) ? std::exp(quad - kI * th * L)
                                                : std::exp(-quad + kI * th * L);
  return Mat2::diag(d, 1.0 / d);
}

Mat2 connector(const ModelProblem& p, int region, cplx lt, CutSide side) {
  Mat2 g0 = normalization(p, lt, side);
  switch (region) {
    case 0: return g0;
    case 1: return g0 * Mat2::ut(-gamma2_of(p));
    case 2: return g0 * Mat2::lt(p.r1_at);
    case 3: return g0 * Mat2::ut(p.r2_at);
    case 4: return g0 * Mat2::lt(-gamma1_of(p));
    default: throw std::invalid_argument("connector: region must be 0..4");
  }
}

double ray_angle(const ModelProblem& p, int ray) {
  if (ray < 1 || ray > 4) throw std::invalid_argument("ray_angle: ray must be 1..4");
  // role order: 1 = gamma2 ray, 2 = r1 ray, 3 = r2 ray, 4 = gamma1 ray
  static constexpr double left_angles[4] = {kPi / 4, 3 * kPi / 4, 5 * kPi / 4,
                                            7 * kPi / 4};
  static constexpr double right_angles[4] = {3 * kPi / 4, kPi / 4, 7 * kPi / 4,
                                             5 * kPi / 4};
  return p.orientation == Orientation::left ? left_angles[ray - 1]
                                            : right_angles[ray - 1];
}

int region_index(const ModelProblem& p, cplx lt) {
  double a = std::arg(lt);
  if (a < 0.0) a += 2.0 * kPi;
  auto in = [a](double lo, double hi) { return a > lo && a < hi; };
  if (p.orientation == Orientation::left) {
    if (in(0.0, kPi / 4)) return 1;
    if (in(3 * kPi / 4, kPi)) return 2;
    if (in(kPi, 5 * kPi / 4)) return 3;
    if (in(7 * kPi / 4, 2 * kPi)) return 4;
  } else {
    if (in(3 * kPi / 4, kPi)) return 1;
    if (in(0.0, kPi / 4)) return 2;
    if (in(7 * kPi / 4, 2 * kPi)) return 3;
    if (in(kPi, 5 * kPi / 4)) return 4;
  }
  return 0;
}

Mat2 ray_jump(const ModelProblem& p, int ray, cplx lt) {
  if (ray < 1 || ray > 4) throw std::invalid_argument("ray_jump: ray must be 1..4");
  cplx L = branch_log(p, lt, CutSide::none);
  cplx th = p.vartheta;
  // square of the normalization's diagonal entry
  cplx d2 = (p.orientation == Orientation::left)
                ? std::exp(kI * lt * lt / 2.0 - 2.0 * kI * th * L)
                : std::exp(-kI * lt * lt / 2.0 + 2.0 * kI * th * L);
  const bool left = p.orientation == Orientation::left;
  switch (ray) {
    case 1: return Mat2::ut((left ? -1.0 : 1.0) * gamma2_of(p) * d2);
    case 2: return Mat2::lt((left ? -1.0 : 1.0) * p.r1_at / d2);
    case 3: return Mat2::ut((left ? 1.0 : -1.0) * p.r2_at * d2);
    default: return Mat2::lt((left ? 1.0 : -1.0) * gamma1_of(p) / d2);
  }
}

}  // namespace nlh::modelrh
