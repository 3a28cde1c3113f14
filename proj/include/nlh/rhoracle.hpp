// Independent cross-check of the transform pipeline: collocation solution of
// the singular integral equation for the row-one density of the
// Riemann-Hilbert problem, on the real contour (moderate t) or on the
// steepest-descent legs (large t), with the potential recovered from the
// 1/lambda moment of the solution.
#pragma once

#include <complex>
#include <vector>

#include "nlh/deltafun.hpp"
#include "nlh/mat2.hpp"
#include "nlh/phase.hpp"
#include "nlh/scattering.hpp"

namespace nlh::rhoracle {

using nlh::cplx;
using nlh::Mat2;
using nlh::phase::PhaseGeometry;
using nlh::scattering::Profile;
using nlh::scattering::ScatteringData;

// Gauss-Legendre rule on [-1, 1] (Newton iteration on the recurrence).
struct PanelRule {
  std::vector<double> nodes, weights;
};
PanelRule gauss_legendre(int n);

// Panel edges on [a, b] whose lengths shrink geometrically toward the refined
// end; the two smallest panels share the smallest length.
std::vector<double> graded_edges(double a, double b, int panels, double ratio,
                                 bool refine_toward_a);

// Jump matrix of the undeformed problem at one real node,
//   J = [[1 - r1 r2, -r2 e^{-2 i theta}], [r1 e^{2 i theta}, 1]].
// Nodes outside the sampled spectral grid use r = 0 (decayed tails); the
// fallback increments *out_of_range when given, else writes one log line.
Mat2 build_jump(const ScatteringData& sdata, double x, double t, double node,
                int* out_of_range = nullptr);

struct Panel {
  int first = 0;  // index of the panel's first node in the global arrays
  int count = 0;
  cplx a, b;  // endpoints in traversal order
};

struct RHSystem {
  std::vector<cplx> nodes;    // traversal order along the oriented contour
  std::vector<cplx> weights;  // complex path weights
  std::vector<Mat2> w;        // J - I at the nodes
  std::vector<Panel> panels;
  int out_of_range = 0;  // nodes where interpolation fell back to r = 0
  double x = 0.0, t = 0.0;

  // filled by solve_rh
  bool solved = false;
  std::vector<cplx> nu11, nu12;  // solution density (row one of mu - I)
  cplx m1_11, m1_12;             // row one of the 1/lambda moment
  double residual = 0.0;         // relative residual of the discrete system
  double rcond = 0.0;            // LU-based condition estimate
};

struct DirectOptions {
  int panels = 24;
  int nodes_per_panel = 12;
  // refinement disks of radius frac*(lambda1-lambda0) around the stationary
  // points, subdivided `levels` times with ratio-1/2 grading
  double refine_radius_frac = 0.1;
  int refine_levels = 4;
};

// Undeformed contour [-L, L] with L chosen so |r| < 1e-10 outside; uniform
// composite panels, refined near the stationary points when a geometry is
// supplied and t > 0.  Usable for moderate oscillation only (t up to a few).
RHSystem build_real_system(const ScatteringData& sdata, double x, double t,
                           const PhaseGeometry* geom = nullptr,
                           const DirectOptions& opts = {});

struct DeformedOptions {
  int panels_per_leg = 5;
  int nodes_per_panel = 12;
  double envelope_cutoff = 1e-18;  // truncate where e^{-2t|Re(if)|} drops below
  double inner_cap_frac = 0.98;    // of the half-gap between stationary points
};

// Steepest-descent contour: eight rays through the stationary points, the
// lower-triangular factor (r1 outside the interval, gamma1 = r1/(1-r1 r2)
// inside) conjugated by delta^{-2} e^{2 i theta} on the descending legs and
// the upper-triangular factor (-r2 / -gamma2, delta^{+2} e^{-2 i theta}) on
// their mirror images.  Off-axis reflection values come from the Jost ODE at
// complex spectral parameter, so the profile itself is required.  Requires
// winding admissibility and x = xi t consistent with the geometry.
RHSystem build_deformed_jumps(const Profile& q0, const ScatteringData& sdata,
                              const PhaseGeometry& geom, double x, double t,
                              const DeformedOptions& opts = {});

// The discrete one-sided Cauchy operator C_- applied to scalar samples at
// every node (principal value plus the -1/2 jump term), exposed so the
// collocation operator can be validated against closed forms.
std::vector<cplx> cauchy_minus_apply(const RHSystem& sys,
                                     const std::vector<cplx>& g);

// Solves (I - C_-[. w]) nu = C_-[w] for the row-one density and fills the
// moment row.  Rejects systems with max |J - I| > 10; a residual above 1e-10
// or a singular factorization raises "collocation failed" with the condition
// estimate.
RHSystem solve_rh(RHSystem system);

// q = 2 i [M1]_{12}; requires a solved system.
cplx reconstruct_q(const RHSystem& sys);

enum class OracleMode { automatic, direct, deformed };

struct OracleResult {
  cplx q;
  OracleMode mode_used = OracleMode::direct;
  double residual = 0.0;
  double rcond = 0.0;
};

// One-call evaluation at (x, t): direct contour for t <= 2 (oscillation
// budget), deformed legs beyond.  The deformed route derives the geometry
// from xi = x/t.
OracleResult oracle_q(const Profile& q0, const ScatteringData& sdata, double x,
                      double t, OracleMode mode = OracleMode::automatic,
                      const DirectOptions& direct_opts = {},
                      const DeformedOptions& deformed_opts = {});

}  // namespace nlh::rhoracle
