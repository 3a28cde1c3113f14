// Tracked-branch logarithm of 1 - r1 r2, endpoint-normalized Cauchy exponent,
// and the scalar jump factor with its side limits.
#include "nlh/deltafun.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace nlh::deltafun {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWFloor = 1e-12;       // admissibility floor for |1 - r1 r2|
constexpr int kInitialSamples = 513;
constexpr int kMaxSamples = (1 << 21) + 1;

cplx one_minus_product(const ScatteringData& sdata, double s) {
  return 1.0 - sdata.eval_r1(s) * sdata.eval_r2(s);
}

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

cplx integrate_checked(const std::function<cplx(double)>& f, double a, double b) {
  double err = 0.0;
  cplx val = Quad::integrate(f, a, b, 15, 1e-13, &err);
  if (!(err <= 1e-8 * std::max(1.0, std::abs(val)))) {
    std::ostringstream msg;
    msg << "chi quadrature did not converge: achieved error estimate " << err;
    throw std::runtime_error(msg.str());
  }
  return val;
}

}  // namespace

// Piecewise degree-15 Chebyshev representation of the tracked log over the
// cut.  The Cauchy integral of each panel polynomial is computed through the
// exact Chebyshev moment recurrence when the target sits near the panel
// (stable there because the characteristic growth rho^m stays small) and by
// plain Gauss quadrature otherwise (spectrally accurate once the target is
// outside the rho ~ 2.2 Bernstein ellipse).  This keeps close evaluation at
// deformed-contour nodes both fast and uniformly accurate, where adaptive
// refinement against the near-pole is neither.
struct DeltaEvaluator::CutPanels {
  static constexpr int kM = 16;      // values / coefficients per panel
  static constexpr int kCount = 24;  // uniform panels across the cut
  static constexpr double kRhoSplit = 2.2;

  struct Panel {
    double a = 0.0, b = 0.0;
    std::array<cplx, kM> gl_vals{};  // far-field quadrature samples
    std::array<cplx, kM> coef{};     // T_k coefficients, boundary terms halved
  };
  std::array<double, kM> gl_x{}, gl_w{};
  std::vector<Panel> panels;

  CutPanels(const TrackedLog& lg, double l0, double l1) {
    using G = boost::math::quadrature::gauss<double, kM>;
    for (int i = 0; i < kM / 2; ++i) {
      gl_x[i] = -G::abscissa()[kM / 2 - 1 - i];
      gl_x[kM - 1 - i] = G::abscissa()[kM / 2 - 1 - i];
      gl_w[i] = gl_w[kM - 1 - i] = G::weights()[kM / 2 - 1 - i];
    }
    constexpr int n = kM - 1;
    std::array<double, kM> cx{};
    for (int j = 0; j <= n; ++j) cx[j] = std::cos(kPi * j / n);
    panels.resize(kCount);
    for (int p = 0; p < kCount; ++p) {
      Panel& pan = panels[p];
      pan.a = l0 + (l1 - l0) * p / kCount;
      pan.b = l0 + (l1 - l0) * (p + 1) / kCount;
      double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
      for (int i = 0; i < kM; ++i) pan.gl_vals[i] = lg(mid + half * gl_x[i]);
      std::array<cplx, kM> v{};
      for (int j = 0; j <= n; ++j) v[j] = lg(mid + half * cx[j]);
      for (int k = 0; k <= n; ++k) {
        cplx s = 0.5 * (v[0] + v[n] * std::cos(kPi * k));
        for (int j = 1; j < n; ++j) s += v[j] * std::cos(kPi * j * k / n);
        pan.coef[k] = s * (2.0 / n);
        if (k == 0 || k == n) pan.coef[k] *= 0.5;
      }
    }
  }

  cplx integral(cplx lambda) const {  // int g(s)/(s - lambda) ds over the cut
    cplx total = 0.0;
    for (const Panel& pan : panels) {
      double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
      cplx w = (lambda - mid) / half;
      cplx sq = std::sqrt(w * w - 1.0);
      double rho = std::max(std::abs(w + sq), std::abs(w - sq));
      if (rho <= kRhoSplit) {
        cplx mu_prev = std::log((1.0 - w) / (-1.0 - w));
        cplx mu = 2.0 + w * mu_prev;
        cplx s = pan.coef[0] * mu_prev + pan.coef[1] * mu;
        for (int k = 2; k < kM; ++k) {
          double tau = ((k - 1) % 2 == 0) ? 2.0 / (1.0 - (k - 1.0) * (k - 1.0)) : 0.0;
          cplx mu_next = 2.0 * tau + 2.0 * w * mu - mu_prev;
          s += pan.coef[k] * mu_next;
          mu_prev = mu;
          mu = mu_next;
        }
        total += s;
      } else {
        cplx s = 0.0;
        for (int i = 0; i < kM; ++i)
          s += gl_w[i] * pan.gl_vals[i] / (cplx(mid + half * gl_x[i]) - lambda);
        total += half * s;
      }
    }
    return total;
  }
};

TrackedLog::TrackedLog(const ScatteringData& sdata, double s_lo, double s_hi)
    : sdata_(&sdata) {
  if (!(s_hi > s_lo)) throw std::invalid_argument("TrackedLog: empty tracking range");
  int n = kInitialSamples;
  for (;;) {
    s_.resize(n);
    w_.resize(n);
    for (int k = 0; k < n; ++k) {
      s_[k] = s_lo + (s_hi - s_lo) * k / (n - 1);
      w_[k] = one_minus_product(sdata, s_[k]);
      if (std::abs(w_[k]) < kWFloor) {
        std::ostringstream msg;
        msg << "branch tracking failure: |1 - r1 r2| = " << std::abs(w_[k])
            << " below " << kWFloor << " near s = " << s_[k];
        throw std::runtime_error(msg.str());
      }
    }
    double max_inc = 0.0;
    for (int k = 1; k < n; ++k)
      max_inc = std::max(max_inc, std::abs(std::arg(w_[k] / w_[k - 1])));
    if (max_inc < kPi / 4) break;
    if (n >= kMaxSamples)
      throw std::runtime_error(
          "branch tracking failed to resolve argument increments below pi/4");
    n = 2 * (n - 1) + 1;
  }
  acc_.resize(n);
  acc_[0] = std::arg(w_[0]);
  for (size_t k = 1; k < s_.size(); ++k)
    acc_[k] = acc_[k - 1] + std::arg(w_[k] / w_[k - 1]);
}

double TrackedLog::accumulated_arg(double s) const {
  size_t lo = 0, hi = s_.size() - 1;
  if (s <= s_.front()) lo = 0;
  else if (s >= s_.back()) lo = hi;
  else {
    size_t idx = static_cast<size_t>(
        std::upper_bound(s_.begin(), s_.end(), s) - s_.begin());
    lo = (s - s_[idx - 1] <= s_[idx] - s) ? idx - 1 : idx;
  }
  cplx w = one_minus_product(*sdata_, s);
  if (std::abs(w) < kWFloor)
    throw std::runtime_error("branch tracking failure: |1 - r1 r2| below floor");
  return acc_[lo] + std::arg(w / w_[lo]);
}

cplx TrackedLog::operator()(double s) const {
  cplx w = one_minus_product(*sdata_, s);
  return cplx(std::log(std::abs(w)), accumulated_arg(s));
}

DeltaEvaluator::DeltaEvaluator(const ScatteringData& sdata, const PhaseGeometry& geom)
    : sdata_(&sdata),
      geom_(geom),
      log_(sdata, std::min(sdata.lambda_grid.empty()
                               ? geom.lambda0 - 1.0
                               : sdata.lambda_grid.front(),
                           geom.lambda0 - 1.0),
           geom.lambda1) {
  log_at_l0_ = log_(geom_.lambda0);
  log_at_l1_ = log_(geom_.lambda1);
  cut_panels_ =
      std::make_shared<const CutPanels>(log_, geom_.lambda0, geom_.lambda1);
}

cplx DeltaEvaluator::vartheta(Point which) const {
  const cplx& L = (which == Point::lambda0) ? log_at_l0_ : log_at_l1_;
  return -L / (2.0 * kPi);
}

cplx DeltaEvaluator::chi(cplx lambda, Point which, CutSide side) const {
  const double l0 = geom_.lambda0, l1 = geom_.lambda1;
  const cplx Li = (which == Point::lambda0) ? log_at_l0_ : log_at_l1_;
  const double li = (which == Point::lambda0) ? l0 : l1;
  const double opposite = (which == Point::lambda0) ? l1 : l0;

  const bool on_axis = lambda.imag() == 0.0;
  const double x = lambda.real();
  if (on_axis && x == opposite)
    throw std::domain_error(
        "chi: integrand singular at the endpoint opposite to its normalization");

  auto G = [&](double s) { return log_(s) - Li; };

  const bool interior = on_axis && x > l0 && x < l1 && x != li;
  if (interior) {
    if (side == CutSide::none)
      throw std::domain_error("chi: real lambda inside (lambda0, lambda1) needs a side flag");
    // principal value with the local value subtracted, split at lambda so no
    // quadrature node coincides with the singularity
    cplx Gx = G(x);
    auto reg = [&](double s) { return (G(s) - Gx) / (s - x); };
    cplx pv = integrate_checked(reg, l0, x) + integrate_checked(reg, x, l1) +
              Gx * std::log((l1 - x) / (x - l0));
    cplx half = (side == CutSide::above) ? 0.5 * Gx : -0.5 * Gx;
    return pv / (2.0 * kPi * cplx(0.0, 1.0)) + half;
  }

  if (on_axis && x == li) {
    // at the matching endpoint the normalization already removes the kernel
    // singularity: G(li) = 0 and G(s)/(s - li) stays bounded
    auto f = [&](double s) { return G(s) / (cplx(s, 0.0) - lambda); };
    return integrate_checked(f, l0, l1) / (2.0 * kPi * cplx(0.0, 1.0));
  }

  // Off the cut (possibly very close to it, as deformed-contour nodes are) or
  // on the axis outside it: panelized close evaluation of the Cauchy integral
  // of the tracked log, minus the normalization constant integrated exactly.
  // The principal log is the correct branch for the kernel primitive because
  // the segment subtends an angle below pi at any point off it.
  cplx raw = cut_panels_->integral(lambda);
  cplx lg = std::log((cplx(l1, 0.0) - lambda) / (cplx(l0, 0.0) - lambda));
  return (raw - Li * lg) / (2.0 * kPi * cplx(0.0, 1.0));
}

cplx DeltaEvaluator::delta_via(cplx lambda, Point which, CutSide side) const {
  cplx p = cplx(0.0, 1.0) * vartheta(which);
  cplx bp = nlh::specfun::branch_power(lambda, geom_.lambda0, geom_.lambda1, p, side);
  return bp * std::exp(chi(lambda, which, side));
}

cplx DeltaEvaluator::delta(cplx lambda, CutSide side) const {
  return delta_via(lambda, Point::lambda0, side);
}

bool DeltaEvaluator::winding_ok(std::string* diagnostics) const {
  double a0 = log_.accumulated_arg(geom_.lambda0);
  double a1 = log_.accumulated_arg(geom_.lambda1);
  bool ok = std::abs(a0) < kPi && std::abs(a1) < kPi;
  if (diagnostics) {
    std::ostringstream msg;
    msg << "accumulated arg(1 - r1 r2): " << a0 << " at lambda0, " << a1
        << " at lambda1 (admissible iff both in (-pi, pi); equivalently "
           "|Im vartheta| < 1/2)";
    *diagnostics = msg.str();
  }
  return ok;
}

DeltaData DeltaEvaluator::data() const {
  DeltaData d;
  d.vartheta0 = vartheta(Point::lambda0);
  d.vartheta1 = vartheta(Point::lambda1);
  d.chi0_at_l0 = chi(cplx(geom_.lambda0, 0.0), Point::lambda0);
  d.chi1_at_l1 = chi(cplx(geom_.lambda1, 0.0), Point::lambda1);
  d.im_vartheta_bound_ok = winding_ok(nullptr);
  return d;
}

cplx vartheta(const ScatteringData& sdata, const PhaseGeometry& geom, Point which) {
  return DeltaEvaluator(sdata, geom).vartheta(which);
}

cplx chi(const ScatteringData& sdata, const PhaseGeometry& geom, cplx lambda,
         Point which, CutSide side) {
  return DeltaEvaluator(sdata, geom).chi(lambda, which, side);
}

cplx delta(const ScatteringData& sdata, const PhaseGeometry& geom, cplx lambda,
           CutSide side) {
  return DeltaEvaluator(sdata, geom).delta(lambda, side);
}

bool winding_check(const ScatteringData& sdata, const PhaseGeometry& geom,
                   std::string* diagnostics) {
  return DeltaEvaluator(sdata, geom).winding_ok(diagnostics);
}

DeltaData delta_data(const ScatteringData& sdata, const PhaseGeometry& geom) {
  return DeltaEvaluator(sdata, geom).data();
}

}  // namespace nlh::deltafun
