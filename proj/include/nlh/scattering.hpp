// Direct scattering transform for the nonlocal potential pair
// (q0(x), q0(-x)): Jost solutions of the gauge-transformed Lax ODE, the
// scattering matrix at the matching point, and reflection coefficients
// r1 = s21/s11, r2 = s12/s22 sampled on a spectral grid.
#pragma once
#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nlh/mat2.hpp"

namespace nlh::scattering {

using nlh::cplx;
using nlh::Mat2;

enum class ProfileKind { gaussian, sech, table };

// Rapidly decaying initial datum q0.  Analytic kinds are
//   gaussian: A exp(-((x-c)/w)^2),   sech: A sech((x-c)/w);
// the table kind interpolates supplied samples (cubic) and is zero outside
// their range.
struct Profile {
  ProfileKind kind = ProfileKind::gaussian;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  // Truncation half-width X of the working interval [-X, X]; 0 selects a
  // kind-aware default making the neglected tail mass < 1e-12 relative.
  double halfwidth = 0.0;
  std::vector<double> xs;  // table kind only, strictly increasing
  std::vector<cplx> qs;

  cplx operator()(double x) const;
  double effective_halfwidth() const;
};

Profile gaussian_profile(double amplitude, double width, double center = 0.0,
                         double halfwidth = 0.0);
Profile sech_profile(double amplitude, double width, double center = 0.0,
                     double halfwidth = 0.0);
// Two- or three-column whitespace text: x, Re q0 [, Im q0]; strictly
// increasing x required.
Profile table_profile(std::istream& in);
Profile table_profile_from_file(const std::string& path);

// Jost solutions in the gauge mu = phi e^{i lambda x sigma3}:
// mu_minus normalized to I at x = -X, mu_plus to I at x = +X, both
// transported to eval_x by the ODE
//   mu' = -i lambda [sigma3, mu] + Q(x) mu,  Q = [[0, q0(x)], [q0(-x), 0]].
struct JostSolution {
  double lambda = 0.0;
  Mat2 mu_minus, mu_plus;
  double det_defect = 0.0;  // max |det mu - 1| over the two solutions
};

JostSolution jost_solutions(const Profile& q0, double lambda, double eval_x = 0.0);

struct ScatteringMatrix {
  double lambda = 0.0;
  cplx s11, s12, s21, s22;
  double det_defect = 0.0;  // |s11 s22 - s12 s21 - 1|
  double sym_defect = 0.0;  // |s12 - s21|
};

ScatteringMatrix scattering_matrix(const Profile& q0, double lambda);

// Analytic continuation off the real axis, used by deformed-contour solvers.
// gaussian: entire in lambda; sech: restricted to |Im lambda| < 0.45/width
// (beyond it the truncated Jost integrals no longer converge to the
// continuation); table: real lambda only.
Mat2 scattering_matrix_complex(const Profile& q0, cplx lambda);

// First Picard iterate of the Jost system: s21 ~ integral q0(y) e^{2 i lambda y} dy,
// by adaptive quadrature (born_s21) or in closed form for the analytic kinds.
cplx born_s21(const Profile& q0, double lambda);
cplx born_s21_closed(const Profile& q0, cplx lambda);

struct ScatteringData {
  double alpha = 0.0, beta = 0.0;  // equation parameters carried for downstream use
  std::vector<double> lambda_grid;
  std::vector<cplx> r1, r2;
  int interpolant_order = 3;

  // Local cubic interpolation; zero outside the grid span.
  cplx eval_r1(double lam) const;
  cplx eval_r2(double lam) const;
};

// Uniform grid on [-H, H], H starting at base_halfwidth and widened until
// |r1|, |r2| < 1e-8 at the endpoints; node spacing kept at the base density.
std::vector<double> default_lambda_grid(const Profile& q0, int base_points = 2001,
                                        double base_halfwidth = 8.0);

// Samples r1 = s21/s11, r2 = s12/s22 over the grid (parallel over lambda;
// threads = 0 means hardware concurrency).  Near-vanishing |s11| or |s22|
// (< 1e-10) raises the spectral-singularity error.
ScatteringData reflection_coefficients(const Profile& q0,
                                       const std::vector<double>& grid,
                                       int threads = 0);

}  // namespace nlh::scattering
