#include "nlh/scattering.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nlh::scattering {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841972;

// Local cubic (4-point Lagrange) interpolation on an ordered grid; zero
// outside the span.
cplx cubic_eval(const std::vector<double>& xs, const std::vector<cplx>& ys, double x) {
  if (xs.size() < 4 || x < xs.front() || x > xs.back()) return {0.0, 0.0};
  size_t hi = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
  size_t i = std::min(std::max<size_t>(hi, 2), xs.size() - 2) - 2;
  cplx acc = 0.0;
  for (size_t a = i; a < i + 4; ++a) {
    double w = 1.0;
    for (size_t b = i; b < i + 4; ++b) {
      if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
    }
    acc += w * ys[a];
  }
  return acc;
}

}  // namespace

cplx Profile::operator()(double x) const {
  double u = (x - center) / width;
  switch (kind) {
    case ProfileKind::gaussian:
      return amplitude * std::exp(-u * u);
    case ProfileKind::sech:
      return amplitude / std::cosh(u);
    case ProfileKind::table:
      return cubic_eval(xs, qs, x);
  }
  return {0.0, 0.0};
}

double Profile::effective_halfwidth() const {
  if (halfwidth > 0.0) return halfwidth;
  switch (kind) {
    case ProfileKind::gaussian:
      // exp(-20^2) tail; 20 widths plus the center offset
      return 20.0 * width + std::abs(center);
    case ProfileKind::sech:
      // sech decays like 2 e^{-|u|}: 32 widths keep the tail below 1e-13
      return 32.0 * width + std::abs(center);
    case ProfileKind::table:
      return std::max(std::abs(xs.front()), std::abs(xs.back()));
  }
  return 0.0;
}

Profile gaussian_profile(double amplitude, double width, double center, double halfwidth) {
  if (width <= 0.0) throw std::invalid_argument("profile width must be positive");
  Profile p;
  p.kind = ProfileKind::gaussian;
  p.amplitude = amplitude;
  p.width = width;
  p.center = center;
  p.halfwidth = halfwidth;
  return p;
}

Profile sech_profile(double amplitude, double width, double center, double halfwidth) {
  Profile p = gaussian_profile(amplitude, width, center, halfwidth);
  p.kind = ProfileKind::sech;
  return p;
}

Profile table_profile(std::istream& in) {
  Profile p;
  p.kind = ProfileKind::table;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double x, re;
    if (!(ls >> x >> re)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      throw std::runtime_error("table profile: malformed line: " + line);
    }
    double im = 0.0;
    ls >> im;
    if (!p.xs.empty() && x <= p.xs.back()) {
      throw std::runtime_error("table profile: x samples must be strictly increasing");
    }
    p.xs.push_back(x);
    p.qs.emplace_back(re, im);
  }
  if (p.xs.size() < 4) throw std::runtime_error("table profile: need at least 4 samples");
  p.amplitude = 0.0;
  for (const cplx& q : p.qs) p.amplitude = std::max(p.amplitude, std::abs(q));
  p.width = (p.xs.back() - p.xs.front()) / double(p.xs.size() - 1);
  return p;
}

Profile table_profile_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("table profile: cannot open " + path);
  return table_profile(f);
}

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<cplx, 4>;  // (mu11, mu12, mu21, mu22)

// mu' = -i lambda [sigma3, mu] + Q mu with Q12 = q0(x), Q21 = q0(-x).
template <class Lambda>
State transport(const Profile& q0, Lambda lam, double x0, double x1) {
  State y{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};
  if (x0 == x1) return y;
  auto sys = [&q0, lam](const State& u, State& du, double x) {
    cplx two_i_lam = cplx(0, 2) * cplx(lam);
    cplx qp = q0(x), qm = q0(-x);
    du[0] = qp * u[2];
    du[1] = -two_i_lam * u[1] + qp * u[3];
    du[2] = two_i_lam * u[2] + qm * u[0];
    du[3] = qm * u[1];
  };
  double dx = (x1 > x0 ? 1.0 : -1.0) * 1e-3;
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-10, 1e-10);
  ode::integrate_adaptive(stepper, sys, y, x0, x1, dx);
  return y;
}

Mat2 to_mat(const State& y) { return {y[0], y[1], y[2], y[3]}; }

template <class Lambda>
std::pair<Mat2, Mat2> jost_pair(const Profile& q0, Lambda lam, double eval_x) {
  double X = q0.effective_halfwidth();
  if (std::abs(eval_x) > X) {
    throw std::invalid_argument("jost_solutions: eval point outside the truncation window");
  }
  Mat2 mm, mp;
  try {
    mm = to_mat(transport(q0, lam, -X, eval_x));
    mp = to_mat(transport(q0, lam, +X, eval_x));
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "jost_solutions: integrator failure at lambda = " << lam << ": " << e.what();
    throw std::runtime_error(msg.str());
  }
  return {mm, mp};
}

}  // namespace

JostSolution jost_solutions(const Profile& q0, double lambda, double eval_x) {
  auto [mm, mp] = jost_pair(q0, lambda, eval_x);
  JostSolution j;
  j.lambda = lambda;
  j.mu_minus = mm;
  j.mu_plus = mp;
  j.det_defect = std::max(std::abs(mm.det() - 1.0), std::abs(mp.det() - 1.0));
  return j;
}

ScatteringMatrix scattering_matrix(const Profile& q0, double lambda) {
  auto [mm, mp] = jost_pair(q0, lambda, 0.0);
  Mat2 S = mp.inverse() * mm;  // theta vanishes at the matching point x = 0
  ScatteringMatrix s;
  s.lambda = lambda;
  s.s11 = S.a11;
  s.s12 = S.a12;
  s.s21 = S.a21;
  s.s22 = S.a22;
  s.det_defect = std::abs(S.det() - 1.0);
  s.sym_defect = std::abs(S.a12 - S.a21);
  return s;
}

Mat2 scattering_matrix_complex(const Profile& q0, cplx lambda) {
  if (q0.kind == ProfileKind::table && lambda.imag() != 0.0) {
    throw std::domain_error("scattering_matrix_complex: table profiles support real lambda only");
  }
  if (q0.kind == ProfileKind::sech && std::abs(lambda.imag()) >= 0.45 / q0.width) {
    throw std::domain_error(
        "scattering_matrix_complex: |Im lambda| too large for the sech decay strip");
  }
  auto [mm, mp] = jost_pair(q0, lambda, 0.0);
  return mp.inverse() * mm;
}

cplx born_s21(const Profile& q0, double lambda) {
  double X = q0.effective_halfwidth();
  auto f = [&](double y) { return q0(y) * std::exp(cplx(0, 2.0 * lambda) * y); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, -X, X, 12, 1e-13);
}

cplx born_s21_closed(const Profile& q0, cplx lambda) {
  cplx osc = std::exp(cplx(0, 2) * lambda * q0.center);
  switch (q0.kind) {
    case ProfileKind::gaussian:
      return q0.amplitude * q0.width * std::sqrt(kPi) * osc *
             std::exp(-lambda * lambda * q0.width * q0.width);
    case ProfileKind::sech: {
      cplx arg = kPi * lambda * q0.width;
      return q0.amplitude * kPi * q0.width * osc / std::cosh(arg);
    }
    case ProfileKind::table:
      throw std::invalid_argument("born_s21_closed: no closed form for table profiles");
  }
  return {0.0, 0.0};
}

cplx ScatteringData::eval_r1(double lam) const { return cubic_eval(lambda_grid, r1, lam); }
cplx ScatteringData::eval_r2(double lam) const { return cubic_eval(lambda_grid, r2, lam); }

std::vector<double> default_lambda_grid(const Profile& q0, int base_points,
                                        double base_halfwidth) {
  if (base_points < 5 || base_halfwidth <= 0.0) {
    throw std::invalid_argument("default_lambda_grid: bad base grid parameters");
  }
  double H = base_halfwidth;
  double density = (base_points - 1) / (2.0 * base_halfwidth);
  for (int attempt = 0; attempt < 9; ++attempt) {
    ScatteringMatrix s = scattering_matrix(q0, H);
    ScatteringMatrix sm = scattering_matrix(q0, -H);
    double edge = std::max(std::max(std::abs(s.s21 / s.s11), std::abs(s.s12 / s.s22)),
                           std::max(std::abs(sm.s21 / sm.s11), std::abs(sm.s12 / sm.s22)));
    if (edge < 1e-8) {
      int half = static_cast<int>(std::ceil(H * density));
      std::vector<double> grid(2 * half + 1);
      for (int i = -half; i <= half; ++i) grid[i + half] = H * i / double(half);
      return grid;
    }
    H *= 1.25;
  }
  throw std::runtime_error("default_lambda_grid: reflection does not decay within the widened window");
}

ScatteringData reflection_coefficients(const Profile& q0,
                                       const std::vector<double>& grid, int threads) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("reflection_coefficients: grid must be ordered");
  }
  size_t n = grid.size();
  ScatteringData d;
  d.lambda_grid = grid;
  d.r1.resize(n);
  d.r2.resize(n);

  unsigned nt = threads > 0 ? unsigned(threads) : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, n);
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        ScatteringMatrix s = scattering_matrix(q0, grid[i]);
        if (std::abs(s.s11) < 1e-10 || std::abs(s.s22) < 1e-10) {
          std::ostringstream msg;
          msg << "reflection_coefficients: spectral singularity / outside solitonless sector"
              << " (|s11| or |s22| < 1e-10 at lambda = " << grid[i] << ")";
          throw std::runtime_error(msg.str());
        }
        d.r1[i] = s.s21 / s.s11;
        d.r2[i] = s.s12 / s.s22;
        double det_consistency = std::abs((1.0 - d.r1[i] * d.r2[i]) * s.s11 * s.s22 - 1.0);
        if (det_consistency > 1e-7) {
          std::ostringstream msg;
          msg << "reflection_coefficients: determinant consistency " << det_consistency
              << " exceeds 1e-7 at lambda = " << grid[i];
          throw std::runtime_error(msg.str());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };

  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return d;
}

}  // namespace nlh::scattering
