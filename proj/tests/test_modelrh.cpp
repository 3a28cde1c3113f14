// Model-problem construction: coefficient identities, ODE residual, unit
// determinant, constant jump, sector/ray consistency.
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nlh/modelrh.hpp"

using namespace nlh::modelrh;
using nlh::Mat2;
using nlh::cplx;
using nlh::mat_dist;
using nlh::specfun::CutSide;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

// dataset with exact invariant 1 - r1 r2 = e^{-2 pi vartheta}
ModelProblem dataset(Orientation o, cplx vartheta, cplx r1) {
  cplx r2 = (1.0 - std::exp(-2.0 * kPi * vartheta)) / r1;
  return make_model(o, vartheta, r1, r2);
}

Mat2 ode_matrix(const ModelProblem& p, cplx lt) {
  cplx a = kI * lt / 2.0;
  if (p.orientation == Orientation::right) a = -a;
  return {a, -p.psi, -p.phi, -a};
}

// 8th-order first-derivative stencil
Mat2 fd_derivative(const ModelProblem& p, cplx lt, double h) {
  static const double c[9] = {1.0 / 280,  -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                              4.0 / 5,    -1.0 / 5,   4.0 / 105, -1.0 / 280};
  Mat2 sum{0.0, 0.0, 0.0, 0.0};
  for (int k = -4; k <= 4; ++k) {
    if (k == 0) continue;
    Mat2 m = model_solution(p, lt + cplx(k * h, 0.0));
    sum = sum + (c[k + 4] / h) * m;
  }
  return sum;
}

}  // namespace

TEST_SUITE_BEGIN("modelrh");

TEST_CASE("make_model: invariant validation and coefficient product") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    for (cplx th : {cplx(0.1), cplx(0.2), cplx(0.0, -1.0 / 6.0)}) {
      ModelProblem p = dataset(o, th, (th == cplx(0.2)) ? 0.5 : 0.45);
      CAPTURE(th);
      CHECK(std::abs(p.psi * p.phi - th) < 1e-12);
      CHECK_FALSE(p.degenerate);
      auto [psi, phi] = psi_phi(p);
      CHECK(psi == p.psi);
      CHECK(phi == p.phi);
    }
  }
  // regression: coefficient product for the vartheta = 0.2 dataset
  ModelProblem p02 = dataset(Orientation::left, 0.2, 0.5);
  CHECK(std::abs(p02.psi * p02.phi - 0.2) < 1e-12);

  CHECK_THROWS_AS(make_model(Orientation::left, 0.1, 0.3, 0.5),
                  std::invalid_argument);

  // reflectionless: psi collapses through 1/Gamma(0)
  ModelProblem deg = make_model(Orientation::left, 0.0, 0.5, 0.0);
  CHECK(deg.degenerate);
  CHECK(std::abs(deg.psi) == 0.0);
  CHECK(std::abs(deg.phi) == 0.0);
}

TEST_CASE("reflectionless limit: diagonal reduces to pure exponentials") {
  ModelProblem p = make_model(Orientation::left, 0.0, 0.5, 0.0);
  for (cplx lt : {cplx(1.1, 0.7), cplx(-0.4, -1.2)}) {
    Mat2 m = model_solution(p, lt);
    cplx e = std::exp(kI * lt * lt / 4.0);
    CAPTURE(lt);
    CHECK(std::abs(m.a11 - e) < 1e-13 * std::abs(e));
    CHECK(std::abs(m.a22 - 1.0 / e) < 1e-13 * std::abs(1.0 / e));
    CHECK(std::abs(m.a12) == 0.0);
    CHECK(std::abs(m.a21) == 0.0);
  }
}

TEST_CASE("columns satisfy the first-order system (finite differences)") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    ModelProblem p = dataset(o, 0.15, 0.4);
    for (cplx lt : {cplx(1.0, 1.0), cplx(-0.7, -1.2)}) {
      Mat2 md = fd_derivative(p, lt, 0.01);
      Mat2 want = ode_matrix(p, lt) * model_solution(p, lt);
      double scale = 0.0;
      for (int k = -4; k <= 4; ++k)
        scale = std::max(scale,
                         model_solution(p, lt + cplx(k * 0.01, 0.0)).max_abs());
      scale *= 1.0 + std::abs(lt) + std::abs(p.psi) + std::abs(p.phi);
      CAPTURE(lt);
      CHECK(mat_dist(md, want) < 1e-8 * scale);
    }
  }
}

TEST_CASE("unit determinant across both half-planes") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    ModelProblem p = dataset(o, cplx(0.0, -1.0 / 6.0), 0.45);
    for (cplx lt : {cplx(0.5, 0.9), cplx(-0.5, 0.9), cplx(1.5, 0.4),
                    cplx(-1.5, 0.4), cplx(2.0, 2.0), cplx(0.5, -0.9),
                    cplx(-0.5, -0.9), cplx(1.5, -0.4), cplx(-1.5, -0.4),
                    cplx(-2.0, -2.0)}) {
      CAPTURE(lt);
      CHECK(std::abs(model_solution(p, lt).det() - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("jump product at the origin equals the constant jump") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    CHECK(jump_product_check(dataset(o, 0.1, 0.3)) < 1e-9);
    CHECK(jump_product_check(dataset(o, 0.2, 0.5)) < 1e-9);
    CHECK(jump_product_check(dataset(o, cplx(0.0, -1.0 / 6.0), 0.45)) < 1e-9);
    CHECK(jump_product_check(make_model(o, 0.0, 0.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("the jump across the real line is constant in lambda_tilde") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    ModelProblem p = dataset(o, 0.2, 0.5);
    Mat2 want = model_jump(p);
    for (double x : {-2.0, -1.0, 1.0, 2.0}) {
      Mat2 above = model_solution(p, x, CutSide::above);
      Mat2 below = model_solution(p, x, CutSide::below);
      CAPTURE(x);
      CHECK(mat_dist(below.inverse() * above, want) < 1e-7);
    }
    CHECK_THROWS_AS(model_solution(p, 1.0), std::domain_error);
  }
}

TEST_CASE("sector connectors reproduce the four ray jumps") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    ModelProblem p = dataset(o, cplx(0.0, -1.0 / 6.0), 0.45);
    for (int ray = 1; ray <= 4; ++ray) {
      double phi = ray_angle(p, ray);
      for (double rho : {0.6, 1.4}) {
        cplx z = std::polar(rho, phi);
        int cw = region_index(p, std::polar(rho, phi - 0.02));
        int ccw = region_index(p, std::polar(rho, phi + 0.02));
        Mat2 pred = connector(p, cw, z) * connector(p, ccw, z).inverse();
        CAPTURE(ray);
        CAPTURE(rho);
        CHECK(mat_dist(pred, ray_jump(p, ray, z)) < 1e-10);
      }
    }
    // narrow sectors sit exactly where the connectors expect them
    double a1 = (o == Orientation::left) ? kPi / 8 : 7 * kPi / 8;
    CHECK(region_index(p, std::polar(1.0, a1)) == 1);
    CHECK(region_index(p, std::polar(1.0, kPi / 2)) == 0);
    CHECK(region_index(p, std::polar(1.0, -kPi / 2)) == 0);
  }
}

TEST_CASE("sector transform removes the real-axis jump") {
  for (Orientation o : {Orientation::left, Orientation::right}) {
    ModelProblem p = dataset(o, cplx(0.0, -1.0 / 6.0), 0.45);
    for (double x : {0.8, 1.7, -0.8, -1.7}) {
      int reg_up = region_index(p, cplx(x, 1e-9));
      int reg_dn = region_index(p, cplx(x, -1e-9));
      Mat2 n_up = model_solution(p, x, CutSide::above) *
                  connector(p, reg_up, x, CutSide::above).inverse();
      Mat2 n_dn = model_solution(p, x, CutSide::below) *
                  connector(p, reg_dn, x, CutSide::below).inverse();
      double scale = std::max(n_up.max_abs(), n_dn.max_abs());
      CAPTURE(x);
      CHECK(mat_dist(n_up, n_dn) < 1e-7 * scale);
    }
  }
}

TEST_SUITE_END();
