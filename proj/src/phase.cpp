#include "nlh/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace nlh::phase {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795028841972;
constexpr double kEnvelopeFloor = 1e-16;

double fprime(double lam, const PhaseGeometry& g) {
  return g.xi + 4.0 * g.alpha * lam + 12.0 * g.beta * lam * lam;
}
}  // namespace

std::pair<double, double> stationary_points(double alpha, double beta, double xi) {
  if (beta == 0.0) {
    throw std::domain_error("stationary_points: beta = 0 collapses the phase to a single stationary point");
  }
  double disc = alpha * alpha - 3.0 * beta * xi;
  if (disc <= 0.0) {
    throw std::domain_error("stationary_points: alpha^2 - 3 beta xi <= 0, stationary points coalesce or leave the real axis");
  }
  double s = std::sqrt(disc);
  return {(-alpha - s) / (6.0 * beta), (-alpha + s) / (6.0 * beta)};
}

PhaseGeometry make_geometry(double alpha, double beta, double xi) {
  auto [l0, l1] = stationary_points(alpha, beta, xi);
  if (l0 > l1) std::swap(l0, l1);
  PhaseGeometry g;
  g.alpha = alpha;
  g.beta = beta;
  g.xi = xi;
  g.lambda0 = l0;
  g.lambda1 = l1;
  g.discriminant = alpha * alpha - 3.0 * beta * xi;
  double scale = std::abs(xi) + std::abs(4.0 * alpha * l1) +
                 std::abs(12.0 * beta * l1 * l1) + 1.0;
  if (std::abs(fprime(l0, g)) > 1e-10 * scale || std::abs(fprime(l1, g)) > 1e-10 * scale) {
    throw std::logic_error("make_geometry: stationary-point residual exceeds tolerance");
  }
  return g;
}

cplx phase_theta(double x, double t, cplx lam, double alpha, double beta) {
  return lam * (x + (2.0 * alpha * lam + 4.0 * beta * lam * lam) * t);
}

cplx phase_f(cplx lam, const PhaseGeometry& g) {
  return lam * (g.xi + 2.0 * g.alpha * lam + 4.0 * g.beta * lam * lam);
}

int sign_re_if(cplx lam, const PhaseGeometry& g) {
  if (lam.imag() == 0.0) return 0;
  double v = (cplx(0.0, 1.0) * phase_f(lam, g)).real();
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

namespace {

cplx leg_point(const ContourDescriptor& d, double rho) {
  return d.anchor + d.leg_sign * d.anchor * rho * d.direction;
}

// Endpoint (in the given direction away from rho = 0) of the connected
// component of { rho : envelope e^{-2 t |Re(i f)|} >= floor } containing 0.
// Scan first so a non-monotone envelope cannot hide a violation, then refine
// the boundary by bisection.
double truncate_rho(const ContourDescriptor& d, const PhaseGeometry& g, double t,
                    double dir, double limit) {
  auto envelope_ok = [&](double rho) {
    cplx lam = leg_point(d, rho);
    double re_if = (cplx(0.0, 1.0) * phase_f(lam, g)).real();
    return std::exp(-2.0 * t * std::abs(re_if)) >= kEnvelopeFloor;
  };
  const int scan = 400;
  double ok = 0.0;
  for (int i = 1; i <= scan; ++i) {
    double rho = dir * limit * i / scan;
    if (!envelope_ok(rho)) {
      double lo = ok, hi = rho;
      for (int j = 0; j < 60; ++j) {
        double mid = 0.5 * (lo + hi);
        if (envelope_ok(mid)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return lo;
    }
    ok = rho;
  }
  return ok;
}

ContourDescriptor build_leg(double anchor, cplx direction, double leg_sign,
                            const PhaseGeometry& g, double t, int n) {
  if (std::abs(anchor) < 1e-14 * (std::abs(g.lambda0) + std::abs(g.lambda1) + 1.0)) {
    throw std::domain_error("steepest_contours: leg parametrization degenerates when a stationary point sits at the origin");
  }
  ContourDescriptor d;
  d.anchor = anchor;
  d.direction = direction;
  d.leg_sign = leg_sign;
  d.rho_max = std::sqrt(2.0);
  // The outward tail (rho -> -inf) always decays; cap the search at a
  // generous multiple of the inter-point distance scale.
  double tail_limit = 40.0 * (1.0 + std::abs(g.lambda1 - g.lambda0)) /
                      std::max(1e-12, std::abs(anchor));
  double rho_lo = truncate_rho(d, g, t, -1.0, tail_limit);
  double rho_hi = truncate_rho(d, g, t, +1.0, d.rho_max);
  d.rhos.resize(n);
  d.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    double rho = rho_lo + (rho_hi - rho_lo) * i / (n - 1);
    if (std::abs(rho) < 0.5 * (rho_hi - rho_lo) / (n - 1)) rho = 0.0;  // pin the anchor
    d.rhos[i] = rho;
    d.nodes[i] = leg_point(d, rho);
  }
  return d;
}

}  // namespace

SteepestContours steepest_contours(const PhaseGeometry& g, double t, int nodes_per_leg) {
  if (nodes_per_leg < 3) throw std::invalid_argument("steepest_contours: need at least 3 nodes per leg");
  if (t <= 0.0) throw std::domain_error("steepest_contours: requires t > 0");
  SteepestContours sc;
  cplx e3 = std::exp(cplx(0.0, 3.0 * kPi / 4.0));
  cplx e1 = std::exp(cplx(0.0, kPi / 4.0));
  sc.L[0] = build_leg(g.lambda1, e3, +1.0, g, t, nodes_per_leg);
  sc.L[1] = build_leg(g.lambda0, e1, -1.0, g, t, nodes_per_leg);
  sc.Lstar[0] = build_leg(g.lambda1, std::conj(e3), +1.0, g, t, nodes_per_leg);
  sc.Lstar[1] = build_leg(g.lambda0, std::conj(e1), -1.0, g, t, nodes_per_leg);
  return sc;
}

}  // namespace nlh::phase
