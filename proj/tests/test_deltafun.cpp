// Scalar jump factor: tracked branch, closed forms, cut jump, side limits,
// winding admissibility.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "nlh/deltafun.hpp"

using namespace nlh::deltafun;
using nlh::cplx;
using nlh::phase::make_geometry;
using nlh::scattering::Profile;
using nlh::scattering::ScatteringData;
using nlh::scattering::gaussian_profile;
using nlh::scattering::reflection_coefficients;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScatteringData synth(const std::function<cplx(double)>& r1f,
                     const std::function<cplx(double)>& r2f, int n = 4001,
                     double lo = -4.0, double hi = 4.0) {
  ScatteringData d;
  d.alpha = 0.0;
  d.beta = 1.0;
  d.lambda_grid.resize(n);
  d.r1.resize(n);
  d.r2.resize(n);
  for (int i = 0; i < n; ++i) {
    double s = lo + (hi - lo) * i / (n - 1);
    d.lambda_grid[i] = s;
    d.r1[i] = r1f(s);
    d.r2[i] = r2f(s);
  }
  return d;
}

// smooth plateau equal to 1 on [-2, 2] to ~1e-25, vanishing beyond +-3
double plateau(double s) {
  auto sig = [](double u) { return 0.5 * (1.0 + std::tanh(u)); };
  return sig((s + 2.0) / 0.05) * sig((2.0 - s) / 0.05);
}

cplx one(double) { return 1.0; }

}  // namespace

TEST_SUITE_BEGIN("deltafun");

TEST_CASE("zero reflection data: vartheta = 0, delta = 1, winding holds") {
  ScatteringData d = synth([](double) { return cplx(0.0); }, one, 41);
  auto g = make_geometry(0.0, 1.0, -3.0);
  DeltaEvaluator ev(d, g);
  CHECK(std::abs(ev.vartheta(Point::lambda0)) == 0.0);
  CHECK(std::abs(ev.vartheta(Point::lambda1)) == 0.0);
  CHECK(std::abs(ev.delta({2.0, 3.0}) - 1.0) == 0.0);
  CHECK(std::abs(ev.delta({-7.0, 0.0}) - 1.0) == 0.0);
  CHECK(winding_check(d, g));
}

TEST_CASE("globally constant product: closed-form power, vanishing exponent") {
  ScatteringData d = synth([](double) { return cplx(0.3); },
                           [](double) { return cplx(0.7); }, 9);
  auto g = make_geometry(0.0, 1.0, -3.0);
  DeltaEvaluator ev(d, g);
  double vt_want = -std::log(1.0 - 0.21) / (2.0 * kPi);
  CHECK(std::abs(ev.vartheta(Point::lambda0) - vt_want) < 1e-14);
  CHECK(std::abs(ev.vartheta(Point::lambda1) - vt_want) < 1e-14);
  CHECK(std::abs(ev.chi({2.0, 1.0}, Point::lambda0)) < 1e-13);
  CHECK(std::abs(ev.chi({5.0, 0.0}, Point::lambda1)) < 1e-13);
  cplx p(0.0, vt_want);
  for (cplx lam : {cplx(2.0, 1.0), cplx(-1.0, 0.7), cplx(5.0, 0.0),
                   cplx(-7.0, 0.0), cplx(0.3, -2.0)}) {
    cplx want = std::pow((lam - g.lambda1) / (lam - g.lambda0), p);
    CAPTURE(lam);
    CHECK(std::abs(ev.delta(lam) - want) < 1e-12);
  }
  DeltaData dd = ev.data();
  CHECK(std::abs(dd.chi0_at_l0) < 1e-13);
  CHECK(std::abs(dd.chi1_at_l1) < 1e-13);
  CHECK(dd.im_vartheta_bound_ok);
}

TEST_CASE("endpoint values reproduce the product through e^{-2 pi vartheta}") {
  auto g = make_geometry(0.0, 1.0, -3.0);

  // real plateau with 1 - r1 r2 = e^{-2 pi} on it
  double c = 1.0 - std::exp(-2.0 * kPi);
  ScatteringData amp = synth([&](double s) { return cplx(c * plateau(s)); }, one);
  CHECK(std::abs(vartheta(amp, g, Point::lambda0) - 1.0) < 1e-10);

  // unimodular phase path reaching arg(1 - r1 r2) = pi/3 on the plateau
  ScatteringData ph = synth(
      [&](double s) { return 1.0 - std::exp(cplx(0.0, kPi / 3.0) * plateau(s)); },
      one);
  cplx vt1 = vartheta(ph, g, Point::lambda1);
  CHECK(std::abs(vt1 - cplx(0.0, -1.0 / 6.0)) < 1e-9);

  for (const ScatteringData* d : {&amp, &ph}) {
    DeltaEvaluator ev(*d, g);
    for (Point p : {Point::lambda0, Point::lambda1}) {
      double li = (p == Point::lambda0) ? g.lambda0 : g.lambda1;
      cplx w = 1.0 - d->eval_r1(li) * d->eval_r2(li);
      CHECK(std::abs(std::exp(-2.0 * kPi * ev.vartheta(p)) - w) < 1e-10);
    }
  }
}

TEST_CASE("winding check: quarter turn passes, three-half turn fails") {
  auto g = make_geometry(0.0, 1.0, -3.0);
  auto path_data = [&](double excursion) {
    return synth(
        [&](double s) {
          return 1.0 - std::exp(cplx(0.0, excursion) * plateau(s));
        },
        one);
  };
  ScatteringData quarter = path_data(kPi / 2.0);
  CHECK(winding_check(quarter, g));
  cplx vt = vartheta(quarter, g, Point::lambda1);
  CHECK(std::abs(vt.imag() + 0.25) < 1e-8);

  ScatteringData wide = path_data(3.0 * kPi / 2.0);
  std::string diag;
  CHECK_FALSE(winding_check(wide, g, &diag));
  CHECK(!diag.empty());
  DeltaData dd = delta_data(wide, g);
  CHECK_FALSE(dd.im_vartheta_bound_ok);
}

TEST_CASE("physical data: cut jump matches 1 - r1 r2, representations agree") {
  Profile q0 = gaussian_profile(0.5, 1.0);
  ScatteringData d =
      reflection_coefficients(q0, nlh::scattering::default_lambda_grid(q0));
  auto g = make_geometry(0.0, 1.0, -3.0);
  DeltaEvaluator ev(d, g);

  // jump relation on the cut at 20 interior nodes
  for (int k = 1; k <= 20; ++k) {
    double lam = g.lambda0 + (g.lambda1 - g.lambda0) * k / 21.0;
    cplx above = ev.delta({lam, 0.0}, CutSide::above);
    cplx below = ev.delta({lam, 0.0}, CutSide::below);
    cplx w = 1.0 - d.eval_r1(lam) * d.eval_r2(lam);
    CAPTURE(lam);
    CHECK(std::abs(above / below - w) < 1e-6);
  }

  // both endpoint-normalized representations define the same function
  unsigned long long state = 88172645463325252ull;
  auto rnd = [&]() {  // xorshift in [0,1)
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 1000000ull) / 1000000.0;
  };
  for (int k = 0; k < 50; ++k) {
    double re = -3.0 + 6.0 * rnd();
    double im = 0.1 + 1.9 * rnd();
    cplx lam(re, (k % 2 == 0) ? im : -im);
    cplx d0 = ev.delta_via(lam, Point::lambda0);
    cplx d1 = ev.delta_via(lam, Point::lambda1);
    CAPTURE(lam);
    CHECK(std::abs(d0 - d1) < 1e-8);
  }

  DeltaData dd = ev.data();
  CHECK(dd.im_vartheta_bound_ok);
  for (Point p : {Point::lambda0, Point::lambda1}) {
    double li = (p == Point::lambda0) ? g.lambda0 : g.lambda1;
    cplx w = 1.0 - d.eval_r1(li) * d.eval_r2(li);
    CHECK(std::abs(std::exp(-2.0 * kPi * ev.vartheta(p)) - w) < 1e-10);
  }
}

TEST_CASE("bump exponent: frozen value, resolution stability, far-field bound") {
  auto g = make_geometry(0.0, 1.0, -3.0);
  auto bump_r1 = [](double s) { return cplx(0.5 * std::exp(-4.0 * s * s)); };
  ScatteringData coarse = synth(bump_r1, one, 4001);
  ScatteringData fine = synth(bump_r1, one, 16001);
  DeltaEvaluator ec(coarse, g), ef(fine, g);

  // frozen reference (40-digit adaptive quadrature of the analytic data)
  cplx chi0_ref(0.0, 0.1203018858153613714);
  cplx chi0 = ec.chi({g.lambda0, 0.0}, Point::lambda0);
  cplx chi1 = ec.chi({g.lambda1, 0.0}, Point::lambda1);
  CHECK(std::abs(chi0 - chi0_ref) < 1e-8);
  CHECK(std::abs(chi1 + chi0_ref) < 1e-8);

  // quadrupling the data resolution moves chi and delta below tolerance
  CHECK(std::abs(chi0 - ef.chi({g.lambda0, 0.0}, Point::lambda0)) < 1e-9);
  for (cplx lam : {cplx(0.3, 0.4), cplx(-2.0, 0.0), cplx(0.0, 1.5)}) {
    CAPTURE(lam);
    CHECK(std::abs(ec.delta(lam) - ef.delta(lam)) < 1e-8);
  }

  // far-field decay of the Cauchy integral and normalization at infinity
  double max_log = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double s = g.lambda0 + (g.lambda1 - g.lambda0) * i / 200.0;
    max_log = std::max(max_log, std::abs(std::log(1.0 - (bump_r1(s) * 1.0).real())));
  }
  double len = g.lambda1 - g.lambda0;
  CHECK(std::abs(ec.chi({1e6, 0.0}, Point::lambda0)) <= 1e-5 * len * max_log);
  CHECK(std::abs(ec.delta({1e6, 0.0}) - 1.0) < 1e-4);
}

TEST_CASE("guard rails: side flags, opposite endpoint, branch floor") {
  auto g = make_geometry(0.0, 1.0, -3.0);
  ScatteringData d = synth([](double s) { return cplx(0.3 * std::exp(-s * s)); }, one);
  DeltaEvaluator ev(d, g);
  CHECK_THROWS_AS(ev.chi({0.1, 0.0}, Point::lambda0), std::domain_error);
  CHECK_THROWS_AS(ev.chi({g.lambda1, 0.0}, Point::lambda0), std::domain_error);
  CHECK_THROWS_AS(ev.chi({g.lambda0, 0.0}, Point::lambda1), std::domain_error);
  CHECK_THROWS_AS(ev.delta({0.2, 0.0}), std::domain_error);

  // near-unit product on the plateau violates the 1e-12 floor
  ScatteringData bad =
      synth([](double s) { return cplx((1.0 - 1e-13) * plateau(s)); }, one);
  CHECK_THROWS_AS(DeltaEvaluator(bad, g), std::runtime_error);
}

TEST_SUITE_END();
