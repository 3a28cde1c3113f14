// Scalar factor diagonalizing the middle term of the jump factorization on
// (lambda0, lambda1): tracked logarithm branch of 1 - r1 r2, Cauchy-integral
// exponent chi, side limits on the cut, and the winding admissibility test.
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "nlh/phase.hpp"
#include "nlh/scattering.hpp"
#include "nlh/specfun.hpp"

namespace nlh::deltafun {

using nlh::cplx;
using nlh::phase::PhaseGeometry;
using nlh::scattering::ScatteringData;
using nlh::specfun::CutSide;

// Which stationary point anchors the representation (vartheta and the
// endpoint-normalized exponent).
enum class Point { lambda0, lambda1 };

struct DeltaData {
  cplx vartheta0;      // -(1/2pi) ln(1 - r1 r2) at lambda0, tracked branch
  cplx vartheta1;      // same at lambda1
  cplx chi0_at_l0;     // endpoint-normalized Cauchy exponent at lambda0
  cplx chi1_at_l1;     // same for the lambda1 representation at lambda1
  bool im_vartheta_bound_ok = false;  // |Im vartheta| < 1/2 at both points
};

// Continuous branch of s -> ln(1 - r1(s) r2(s)) along the real axis, anchored
// to 0 argument at the far left where the reflection data vanish.  The sample
// grid is refined until all argument increments are below pi/4.
class TrackedLog {
 public:
  TrackedLog(const ScatteringData& sdata, double s_lo, double s_hi);

  // log with the tracked argument (nearest sample plus principal increment).
  cplx operator()(double s) const;
  // accumulated argument of 1 - r1 r2 from the left anchor up to s.
  double accumulated_arg(double s) const;

 private:
  const ScatteringData* sdata_;
  std::vector<double> s_;
  std::vector<cplx> w_;
  std::vector<double> acc_;
};

// Caches the tracked branch so that repeated evaluations (contour nodes,
// side-limit scans) do not re-run the refinement loop.
class DeltaEvaluator {
 public:
  DeltaEvaluator(const ScatteringData& sdata, const PhaseGeometry& geom);

  cplx vartheta(Point which) const;
  // Endpoint-normalized Cauchy integral over (lambda0, lambda1).  Real lambda
  // strictly inside the interval requires a side flag; the matching endpoint
  // itself is allowed (the normalization removes the singularity there).
  cplx chi(cplx lambda, Point which, CutSide side = CutSide::none) const;
  // delta in the representation anchored at `which`.
  cplx delta_via(cplx lambda, Point which, CutSide side = CutSide::none) const;
  // Default representation (anchored at lambda0).
  cplx delta(cplx lambda, CutSide side = CutSide::none) const;
  bool winding_ok(std::string* diagnostics = nullptr) const;
  DeltaData data() const;

  const PhaseGeometry& geometry() const { return geom_; }

 private:
  // Piecewise-polynomial representation of the tracked log over the cut,
  // letting the Cauchy integral be evaluated stably arbitrarily close to the
  // contour (exact panel moments nearby, plain quadrature far away).
  struct CutPanels;

  const ScatteringData* sdata_;
  PhaseGeometry geom_;
  TrackedLog log_;
  cplx log_at_l0_, log_at_l1_;
  std::shared_ptr<const CutPanels> cut_panels_;
};

// One-shot wrappers.
cplx vartheta(const ScatteringData& sdata, const PhaseGeometry& geom, Point which);
cplx chi(const ScatteringData& sdata, const PhaseGeometry& geom, cplx lambda,
         Point which, CutSide side = CutSide::none);
cplx delta(const ScatteringData& sdata, const PhaseGeometry& geom, cplx lambda,
           CutSide side = CutSide::none);
bool winding_check(const ScatteringData& sdata, const PhaseGeometry& geom,
                   std::string* diagnostics = nullptr);
DeltaData delta_data(const ScatteringData& sdata, const PhaseGeometry& geom);

}  // namespace nlh::deltafun
