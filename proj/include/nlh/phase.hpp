// Phase geometry of the oscillatory factor e^{2i t f(lambda)}: stationary
// points, the sign chart of Re(if), and the steepest-descent contours.
#pragma once
#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace nlh::phase {

using cplx = std::complex<double>;

// f(lambda) = lambda (xi + 2 alpha lambda + 4 beta lambda^2) together with
// its two real stationary points.
struct PhaseGeometry {
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.0;          // = x / t
  double lambda0 = 0.0;     // left stationary point (lambda0 < lambda1)
  double lambda1 = 0.0;
  double discriminant = 0.0;  // alpha^2 - 3 beta xi
};

// Stationary points ((-alpha - sqrt(D))/(6 beta), (-alpha + sqrt(D))/(6 beta)).
// Throws domain_error when beta = 0 (single-point phase, out of scope) or
// when alpha^2 - 3 beta xi <= 0 (coalescing points).
std::pair<double, double> stationary_points(double alpha, double beta, double xi);

// Validated geometry with lambda0 < lambda1.
PhaseGeometry make_geometry(double alpha, double beta, double xi);

// theta = lambda (x + (2 alpha lambda + 4 beta lambda^2) t); f = theta / t.
cplx phase_theta(double x, double t, cplx lam, double alpha, double beta);
cplx phase_f(cplx lam, const PhaseGeometry& g);

// Sign of Re(i f(lambda)): +1 / -1 off the real axis, 0 on it.  Selects the
// triangular-factorization region a point belongs to.
int sign_re_if(cplx lam, const PhaseGeometry& g);

// One straight leg lambda = anchor + leg_sign * anchor * rho * direction,
// rho in [rhos.front(), rhos.back()] subset of (-inf, sqrt(2)].
struct ContourDescriptor {
  double anchor = 0.0;
  cplx direction{0.0, 0.0};  // unit, e^{±3 pi i/4} or e^{±pi i/4}
  double leg_sign = 1.0;     // +1 on the lambda1 leg, -1 on the lambda0 leg
  double rho_max = 0.0;      // sqrt(2) per the contour parametrization
  std::vector<double> rhos;
  std::vector<cplx> nodes;
};

// The steepest-descent contour L (legs through lambda1 and lambda0) and its
// conjugate L*.  Node sampling is truncated where the locally decaying
// envelope e^{-2 t |Re(i f)|} drops below 1e-16 for the working t.
struct SteepestContours {
  std::array<ContourDescriptor, 2> L;      // [0]: lambda1 leg, [1]: lambda0 leg
  std::array<ContourDescriptor, 2> Lstar;
};

SteepestContours steepest_contours(const PhaseGeometry& g, double t,
                                   int nodes_per_leg = 65);

}  // namespace nlh::phase
