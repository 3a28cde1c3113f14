#include "nlh/rhoracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace nlh::rhoracle {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841972;
constexpr double kTailFloor = 1e-10;  // contour truncation level for |r|
constexpr double kDirectBudgetT = 2.0;
const cplx kI{0.0, 1.0};
const cplx kInvTwoPiI = 1.0 / (2.0 * kPi * kI);

double legendre_newton(int n, int i) {
  double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
  for (int it = 0; it < 100; ++it) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    double dx = p1 / dp;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  return x;
}

// barycentric weights for a small node set
std::vector<double> bary_weights(const std::vector<double>& u) {
  int n = static_cast<int>(u.size());
  std::vector<double> lam(n, 1.0);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      if (m != k) lam[k] /= (u[k] - u[m]);
  return lam;
}

// differentiation matrix on the reference nodes
std::vector<std::vector<double>> diff_matrix(const std::vector<double>& u) {
  int n = static_cast<int>(u.size());
  std::vector<double> lam = bary_weights(u);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    double row = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      d[j][k] = (lam[k] / lam[j]) / (u[j] - u[k]);
      row += d[j][k];
    }
    d[j][j] = -row;
  }
  return d;
}

// Discrete C_- matrix: plain Cauchy quadrature off-panel, principal value
// with the interpolation-derivative diagonal on the panel, minus 1/2.
Eigen::MatrixXcd cauchy_matrix(const RHSystem& sys) {
  int n = static_cast<int>(sys.nodes.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  std::vector<int> panel_of(n, -1);
  for (int p = 0; p < static_cast<int>(sys.panels.size()); ++p)
    for (int k = 0; k < sys.panels[p].count; ++k)
      panel_of[sys.panels[p].first + k] = p;

  // reference differentiation matrices per distinct panel size
  std::vector<std::vector<std::vector<double>>> dcache;
  std::vector<int> dsizes;
  auto dmat_for = [&](int count) -> const std::vector<std::vector<double>>& {
    for (size_t i = 0; i < dsizes.size(); ++i)
      if (dsizes[i] == count) return dcache[i];
    PanelRule r = gauss_legendre(count);
    dsizes.push_back(count);
    dcache.push_back(diff_matrix(r.nodes));
    return dcache.back();
  };

  for (int j = 0; j < n; ++j) {
    const Panel& pj = sys.panels[panel_of[j]];
    cplx zj = sys.nodes[j];
    for (int k = 0; k < n; ++k) {
      if (k >= pj.first && k < pj.first + pj.count) continue;
      a(j, k) += kInvTwoPiI * sys.weights[k] / (sys.nodes[k] - zj);
    }
    const auto& d = dmat_for(pj.count);
    cplx half = 0.5 * (pj.b - pj.a);
    int jl = j - pj.first;  // local index
    cplx diag = std::log((pj.b - zj) / (zj - pj.a));
    for (int kl = 0; kl < pj.count; ++kl) {
      int k = pj.first + kl;
      if (k == j) continue;
      cplx c = sys.weights[k] / (sys.nodes[k] - zj);
      a(j, k) += kInvTwoPiI * (c + sys.weights[j] * d[jl][kl] / half);
      diag -= c;
    }
    a(j, j) += kInvTwoPiI * (diag + sys.weights[j] * d[jl][jl] / half) - 0.5;
  }
  return a;
}

struct LegSpec {
  double anchor;
  cplx dir;       // outward unit direction from the anchor
  bool outward;   // traversal runs anchor -> far (left-to-right)
  bool inner;     // lies over the interval between the stationary points
  int kind;       // 0: lower-triangular factor, 1: upper-triangular factor
  int coeff;      // 0: r1, 1: gamma1, 2: -r2, 3: -gamma2
};

double leg_ucut(const PhaseGeometry& geom, double t, double anchor, cplx dir,
                double cap, double cutoff) {
  const int k_samples = 512;
  double prev = 2.0;
  double ucut = cap;
  for (int k = 1; k <= k_samples; ++k) {
    double u = cap * k / k_samples;
    cplx z = anchor + u * dir;
    double decay =
        std::exp(-2.0 * t * std::abs((kI * nlh::phase::phase_f(z, geom)).real()));
    if (decay < cutoff || decay > prev) {
      ucut = u;
      break;
    }
    prev = decay;
  }
  return std::max(ucut, 4.0 * cap / k_samples);
}

}  // namespace

PanelRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  PanelRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = legendre_newton(n, i);
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;  // ascending order
    r.nodes[n - 1 - i] = x;
    r.weights[i] = wgt;
    r.weights[n - 1 - i] = wgt;
  }
  if (n % 2 == 1) {
    r.nodes[n / 2] = 0.0;
    double p0 = 1.0, p1 = 0.0;  // P_k(0) recurrence
    for (int k = 2; k <= n; ++k) {
      double p2 = -(k - 1.0) * p0 / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (0.0 - p0) / (-1.0);
    r.weights[n / 2] = 2.0 / (dp * dp);
  }
  return r;
}

std::vector<double> graded_edges(double a, double b, int panels, double ratio,
                                 bool refine_toward_a) {
  if (panels < 1 || !(ratio > 0.0 && ratio < 1.0) || !(b > a))
    throw std::invalid_argument("graded_edges: bad arguments");
  std::vector<double> rel(panels + 1);
  rel[0] = 0.0;
  for (int i = 1; i <= panels; ++i) rel[i] = std::pow(ratio, panels - i);
  std::vector<double> out(panels + 1);
  for (int i = 0; i <= panels; ++i) {
    double r = refine_toward_a ? rel[i] : 1.0 - rel[panels - i];
    out[i] = a + (b - a) * r;
  }
  out.front() = a;
  out.back() = b;
  return out;
}

Mat2 build_jump(const ScatteringData& sdata, double x, double t, double node,
                int* out_of_range) {
  bool oob = sdata.lambda_grid.empty() || node < sdata.lambda_grid.front() ||
             node > sdata.lambda_grid.back();
  cplx r1 = 0.0, r2 = 0.0;
  if (!oob) {
    r1 = sdata.eval_r1(node);
    r2 = sdata.eval_r2(node);
  } else if (out_of_range) {
    ++*out_of_range;
  } else {
    std::clog << "build_jump: node " << node
              << " outside the sampled spectral grid, using r = 0\n";
  }
  cplx e2 = std::exp(2.0 * kI *
                     nlh::phase::phase_theta(x, t, node, sdata.alpha, sdata.beta));
  return {1.0 - r1 * r2, -r2 / e2, r1 * e2, 1.0};
}

RHSystem build_real_system(const ScatteringData& sdata, double x, double t,
                           const PhaseGeometry* geom,
                           const DirectOptions& opts) {
  if (opts.panels < 1 || opts.nodes_per_panel < 1)
    throw std::invalid_argument("build_real_system: bad options");
  // contour span: smallest interval outside of which |r| < 1e-10
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (size_t i = 0; i < sdata.lambda_grid.size(); ++i) {
    if (std::abs(sdata.r1[i]) >= kTailFloor ||
        std::abs(sdata.r2[i]) >= kTailFloor) {
      if (!any) {
        lo = hi = sdata.lambda_grid[i];
        any = true;
      } else {
        hi = sdata.lambda_grid[i];
      }
    }
  }
  if (!any) {
    lo = -1.0;
    hi = 1.0;
  } else {
    double pad = 0.02 * (hi - lo) + 0.1;
    lo = std::max(sdata.lambda_grid.front(), lo - pad);
    hi = std::min(sdata.lambda_grid.back(), hi + pad);
  }

  std::vector<double> edges(opts.panels + 1);
  for (int i = 0; i <= opts.panels; ++i)
    edges[i] = lo + (hi - lo) * i / opts.panels;

  // refine around the stationary points where the oscillation is slowest
  if (geom && t > 0.0) {
    double eps = opts.refine_radius_frac * (geom->lambda1 - geom->lambda0);
    for (double lam : {geom->lambda0, geom->lambda1}) {
      if (lam - eps <= lo || lam + eps >= hi) continue;
      edges.erase(std::remove_if(edges.begin(), edges.end(),
                                 [&](double e) {
                                   return e > lam - eps && e < lam + eps;
                                 }),
                  edges.end());
      edges.push_back(lam);
      for (int k = 0; k <= opts.refine_levels; ++k) {
        double d = eps * std::pow(0.5, k);
        edges.push_back(lam - d);
        edges.push_back(lam + d);
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  PanelRule rule = gauss_legendre(opts.nodes_per_panel);
  RHSystem sys;
  sys.x = x;
  sys.t = t;
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    Panel panel;
    panel.first = static_cast<int>(sys.nodes.size());
    panel.count = opts.nodes_per_panel;
    panel.a = edges[p];
    panel.b = edges[p + 1];
    double mid = 0.5 * (edges[p] + edges[p + 1]);
    double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int k = 0; k < opts.nodes_per_panel; ++k) {
      double z = mid + half * rule.nodes[k];
      sys.nodes.push_back(z);
      sys.weights.push_back(half * rule.weights[k]);
      Mat2 j = build_jump(sdata, x, t, z, &sys.out_of_range);
      sys.w.push_back(j - Mat2::identity());
    }
    sys.panels.push_back(panel);
  }
  if (sys.out_of_range > 0) {
    std::clog << "build_real_system: " << sys.out_of_range
              << " nodes outside the sampled grid used r = 0\n";
  }
  return sys;
}

RHSystem build_deformed_jumps(const Profile& q0, const ScatteringData& sdata,
                              const PhaseGeometry& geom, double x, double t,
                              const DeformedOptions& opts) {
  if (t <= 0.0)
    throw std::domain_error("build_deformed_jumps: t > 0 required");
  if (std::abs(x - geom.xi * t) > 1e-9 * (1.0 + std::abs(x)))
    throw std::invalid_argument(
        "build_deformed_jumps: x inconsistent with the geometry ray xi = x/t");
  nlh::deltafun::DeltaEvaluator de(sdata, geom);
  std::string diag;
  if (!de.winding_ok(&diag))
    throw std::domain_error("winding admissibility violated: " + diag);

  double l0 = geom.lambda0, l1 = geom.lambda1;
  double dl = l1 - l0;
  const cplx ne = std::polar(1.0, kPi / 4.0), nw = std::polar(1.0, 3 * kPi / 4.0);
  const cplx sw = std::polar(1.0, 5 * kPi / 4.0), se = std::polar(1.0, 7 * kPi / 4.0);
  // coeff: 0 r1, 1 gamma1, 2 -r2, 3 -gamma2; kind: 0 lower, 1 upper
  const LegSpec legs[8] = {
      {l0, nw, false, false, 0, 0},  // descending factor, outside, above
      {l0, ne, true, true, 1, 3},    // rising factor, inside, above
      {l1, nw, false, true, 1, 3},   // rising factor, inside, above
      {l1, ne, true, false, 0, 0},   // descending factor, outside, above
      {l0, sw, false, false, 1, 2},  // rising factor, outside, below
      {l0, se, true, true, 0, 1},    // descending factor, inside, below
      {l1, sw, false, true, 0, 1},   // descending factor, inside, below
      {l1, se, true, false, 1, 2},   // rising factor, outside, below
  };

  PanelRule rule = gauss_legendre(opts.nodes_per_panel);
  RHSystem sys;
  sys.x = x;
  sys.t = t;
  for (const LegSpec& leg : legs) {
    double cap = std::sqrt(2.0) * std::abs(leg.anchor);
    if (leg.inner) cap = std::min(cap, opts.inner_cap_frac * dl / std::sqrt(2.0));
    if (!(cap > 0.0))
      throw std::domain_error(
          "build_deformed_jumps: stationary point at the origin leaves no leg");
    double ucut =
        leg_ucut(geom, t, leg.anchor, leg.dir, cap, opts.envelope_cutoff);
    std::vector<double> eu =
        graded_edges(0.0, ucut, opts.panels_per_leg, 0.5, true);
    for (int pi = 0; pi < opts.panels_per_leg; ++pi) {
      // traversal order: outward legs walk the grading as built, inward legs
      // reverse both the panel order and the endpoint order
      int p = leg.outward ? pi : opts.panels_per_leg - 1 - pi;
      cplx za = leg.anchor + leg.dir * eu[leg.outward ? p : p + 1];
      cplx zb = leg.anchor + leg.dir * eu[leg.outward ? p + 1 : p];
      Panel panel;
      panel.first = static_cast<int>(sys.nodes.size());
      panel.count = opts.nodes_per_panel;
      panel.a = za;
      panel.b = zb;
      cplx mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
      for (int k = 0; k < opts.nodes_per_panel; ++k) {
        cplx z = mid + half * rule.nodes[k];
        Mat2 s = nlh::scattering::scattering_matrix_complex(q0, z);
        cplx r1 = s.a21 / s.a11, r2 = s.a12 / s.a22;
        cplx coeff;
        switch (leg.coeff) {
          case 0: coeff = r1; break;
          case 1: coeff = r1 / (1.0 - r1 * r2); break;
          case 2: coeff = -r2; break;
          default: coeff = -r2 / (1.0 - r1 * r2); break;
        }
        cplx delta = de.delta(z);
        cplx e2 = std::exp(2.0 * kI * t * nlh::phase::phase_f(z, geom));
        cplx v = (leg.kind == 0) ? coeff * e2 / (delta * delta)
                                 : coeff * delta * delta / e2;
        sys.nodes.push_back(z);
        sys.weights.push_back(half * rule.weights[k]);
        sys.w.push_back((leg.kind == 0 ? Mat2::lt(v) : Mat2::ut(v)) -
                        Mat2::identity());
      }
      sys.panels.push_back(panel);
    }
  }
  return sys;
}

std::vector<cplx> cauchy_minus_apply(const RHSystem& sys,
                                     const std::vector<cplx>& g) {
  if (g.size() != sys.nodes.size())
    throw std::invalid_argument("cauchy_minus_apply: size mismatch");
  Eigen::MatrixXcd a = cauchy_matrix(sys);
  Eigen::VectorXcd gv(g.size());
  for (size_t i = 0; i < g.size(); ++i) gv(i) = g[i];
  Eigen::VectorXcd r = a * gv;
  return std::vector<cplx>(r.data(), r.data() + r.size());
}

RHSystem solve_rh(RHSystem sys) {
  int n = static_cast<int>(sys.nodes.size());
  double wmax = 0.0;
  for (const Mat2& m : sys.w) wmax = std::max(wmax, m.max_abs());
  if (wmax > 10.0)
    throw std::invalid_argument(
        "solve_rh: jump further than 10 from identity; diagonal dominance "
        "guard refuses the system");

  Eigen::MatrixXcd a = cauchy_matrix(sys);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Eigen::VectorXcd b(2 * n);
  for (int j = 0; j < n; ++j) {
    cplx rhs1 = 0.0, rhs2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const Mat2& wk = sys.w[k];
      m(j, k) = -a(j, k) * wk.a11;
      m(j, n + k) = -a(j, k) * wk.a21;
      m(n + j, k) = -a(j, k) * wk.a12;
      m(n + j, n + k) = -a(j, k) * wk.a22;
      rhs1 += a(j, k) * wk.a11;
      rhs2 += a(j, k) * wk.a12;
    }
    m(j, j) += 1.0;
    m(n + j, n + j) += 1.0;
    b(j) = rhs1;
    b(n + j) = rhs2;
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  Eigen::VectorXcd u = lu.solve(b);
  double dmin = 1e300, dmax = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    double d = std::abs(lu.matrixLU()(i, i));
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  sys.rcond = (dmax > 0.0) ? dmin / dmax : 0.0;
  double bnorm = b.lpNorm<Eigen::Infinity>();
  sys.residual = (m * u - b).lpNorm<Eigen::Infinity>() / std::max(bnorm, 1e-30);
  if (!std::isfinite(sys.residual) || sys.residual > 1e-10) {
    std::ostringstream os;
    os << "collocation failed: residual = " << sys.residual
       << ", condition estimate = " << sys.rcond;
    throw std::runtime_error(os.str());
  }

  sys.nu11.resize(n);
  sys.nu12.resize(n);
  cplx m11 = 0.0, m12 = 0.0;
  for (int k = 0; k < n; ++k) {
    sys.nu11[k] = u(k);
    sys.nu12[k] = u(n + k);
    const Mat2& wk = sys.w[k];
    cplx mu11 = 1.0 + sys.nu11[k], mu12 = sys.nu12[k];
    m11 += sys.weights[k] * (mu11 * wk.a11 + mu12 * wk.a21);
    m12 += sys.weights[k] * (mu11 * wk.a12 + mu12 * wk.a22);
  }
  sys.m1_11 = -kInvTwoPiI * m11;
  sys.m1_12 = -kInvTwoPiI * m12;
  sys.solved = true;
  return sys;
}

cplx reconstruct_q(const RHSystem& sys) {
  if (!sys.solved)
    throw std::logic_error("reconstruct_q: system has not been solved");
  return 2.0 * kI * sys.m1_12;
}

OracleResult oracle_q(const Profile& q0, const ScatteringData& sdata, double x,
                      double t, OracleMode mode, const DirectOptions& direct_opts,
                      const DeformedOptions& deformed_opts) {
  if (mode == OracleMode::automatic)
    mode = (t <= kDirectBudgetT) ? OracleMode::direct : OracleMode::deformed;
  RHSystem sys;
  if (mode == OracleMode::direct) {
    PhaseGeometry geom;
    const PhaseGeometry* gp = nullptr;
    if (t > 0.0) {
      try {
        geom = nlh::phase::make_geometry(sdata.alpha, sdata.beta, x / t);
        gp = &geom;
      } catch (const std::domain_error&) {
        gp = nullptr;  // no real stationary points: nothing to refine
      }
    }
    sys = build_real_system(sdata, x, t, gp, direct_opts);
  } else {
    PhaseGeometry geom = nlh::phase::make_geometry(sdata.alpha, sdata.beta, x / t);
    sys = build_deformed_jumps(q0, sdata, geom, x, t, deformed_opts);
  }
  sys = solve_rh(std::move(sys));
  OracleResult res;
  res.q = reconstruct_q(sys);
  res.mode_used = mode;
  res.residual = sys.residual;
  res.rcond = sys.rcond;
  return res;
}

}  // namespace nlh::rhoracle
