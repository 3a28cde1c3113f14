// Constant-jump model problem on the real line solved in closed form by
// parabolic-cylinder functions: solution tables for both half-planes, the
// lambda_tilde = 0 jump product, sector connectors, and ray jumps of the
// equivalent four-ray problem.
#pragma once

#include <complex>
#include <utility>

#include "nlh/mat2.hpp"
#include "nlh/specfun.hpp"

namespace nlh::modelrh {

using nlh::Mat2;
using nlh::cplx;
using nlh::specfun::CutSide;

// left: local model at the left stationary point (normalization
// e^{+i lt^2 sigma3/4} lt^{-i vartheta sigma3}, power cut on the positive real
// axis); right: local model at the right stationary point (normalization
// e^{-i lt^2 sigma3/4} lt^{+i vartheta sigma3}, principal power branch).
enum class Orientation { left, right };

struct ModelProblem {
  Orientation orientation = Orientation::left;
  cplx vartheta;
  cplx r1_at, r2_at;     // reflection values at the stationary point
  cplx psi, phi;         // off-diagonal ODE coefficients (closed forms)
  bool degenerate = false;  // r1 r2 = 0 (reflectionless limit)
};

// Validates 1 - r1 r2 = e^{-2 pi vartheta} within 1e-10 and fills psi, phi.
ModelProblem make_model(Orientation orientation, cplx vartheta, cplx r1_at,
                        cplx r2_at);

std::pair<cplx, cplx> psi_phi(const ModelProblem& p);

// The constant jump [[1 - r1 r2, -r2], [r1, 1]].
Mat2 model_jump(const ModelProblem& p);

// Piecewise-analytic solution; real lambda_tilde requires a side flag (the
// half-planes carry different parabolic-cylinder representations).  In the
// reflectionless limit the off-diagonal entries are returned as zero.
Mat2 model_solution(const ModelProblem& p, cplx lambda_tilde,
                    CutSide side = CutSide::none);

// Max-norm residual of M_-(0)^{-1} M_+(0) against the constant jump, with the
// lambda_tilde = 0 entries taken from the D_nu(0), D_nu'(0) closed forms.
double jump_product_check(const ModelProblem& p);

// Diagonal normalization G0 (orientation-dependent power branch; on-cut
// evaluation requires a side flag).
Mat2 normalization(const ModelProblem& p, cplx lambda_tilde,
                   CutSide side = CutSide::none);

// Sector connectors: region 0 is G0 on the two wide sectors, regions 1..4 are
// G0 times a constant triangular factor on the four narrow sectors adjacent to
// the rays (1: gamma2, 2: r1, 3: r2, 4: gamma1).
Mat2 connector(const ModelProblem& p, int region, cplx lambda_tilde,
               CutSide side = CutSide::none);

// Region index (0 wide, 1..4 narrow) of an off-axis, off-ray point.
int region_index(const ModelProblem& p, cplx lambda_tilde);

// Outward angle of ray j in [0, 2 pi).
double ray_angle(const ModelProblem& p, int ray);

// Jump carried by ray j (oriented outward, + side counterclockwise) in the
// four-ray problem equivalent to the constant-jump one.
Mat2 ray_jump(const ModelProblem& p, int ray, cplx lambda_tilde);

}  // namespace nlh::modelrh
