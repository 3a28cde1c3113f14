#include "nlh/specfun.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlh::specfun {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841972;

// Lanczos g = 7, 9 coefficients.
constexpr int kLanczosG = 7;
constexpr double kLanczosP[kLanczosG + 2] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx cgamma(cplx z) {
  if (z.real() < 0.5) {
    return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
  }
  z -= 1.0;
  cplx x = kLanczosP[0];
  for (int i = 1; i < kLanczosG + 2; ++i) {
    x += kLanczosP[i] / (z + cplx(i, 0));
  }
  cplx t = z + (kLanczosG + 0.5);
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx reciprocal_cgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return 1.0 / cgamma(z);
}

namespace detail {

namespace mp = boost::multiprecision;

// One multiprecision working regime: a complex type C, a Spouge gamma
// approximation of order A matched to the type's precision, and an
// iteration budget for the confluent series.
template <class C, int A, int Cap>
struct McpEngine {
  using R = typename C::value_type;

  // Spouge coefficients, computed once in the working precision.
  static const std::vector<R>& spouge_coeffs() {
    static const std::vector<R> c = [] {
      std::vector<R> v(A);
      v[0] = sqrt(R(2) * boost::math::constants::pi<R>());
      R fact(1);  // (k-1)! while processing index k
      for (int k = 1; k < A; ++k) {
        R ak = R(A - k);
        v[k] = exp(log(ak) * (R(k) - R(1) / R(2)) + ak) / fact;
        if (k % 2 == 0) v[k] = -v[k];
        fact *= R(k);
      }
      return v;
    }();
    return c;
  }

  static C gamma(C z) {
    if (z.real() < R(1) / R(2)) {  // reflection
      C cpi(boost::math::constants::pi<R>());
      return cpi / (sin(cpi * z) * gamma(C(1) - z));
    }
    const auto& c = spouge_coeffs();
    C zm = z - C(1);
    C acc(c[0]);
    for (int k = 1; k < A; ++k) acc += C(c[k]) / (zm + C(k));
    C t = zm + C(A);
    return exp(log(t) * (zm + C(R(1) / R(2))) - t) * acc;
  }

  // M(a, b, x) by direct summation; the working precision absorbs the
  // cancellation against the companion series.
  static C kummer(C a, R b, C x, double tail_eps) {
    C sum(1), term(1);
    double ax = abs(x).template convert_to<double>();
    double peak = 1.0;
    for (int k = 0; k < Cap; ++k) {
      term *= (a + C(k)) * x / C((b + R(k)) * R(k + 1));
      sum += term;
      double m = abs(term).template convert_to<double>();
      peak = std::max(peak, m);
      if (k > ax && m < tail_eps * peak) return sum;
    }
    throw std::runtime_error("pcf_D: series did not converge");
  }

  static cplx pcf_D(cplx nu_, cplx z_, double tail_eps) {
    C nu(nu_.real(), nu_.imag());
    C z(z_.real(), z_.imag());
    C half(R(1) / R(2));
    C x = z * z * half;
    C rg1 = rgamma(0.5 * (1.0 - nu_), (C(1) - nu) * half);
    C rg2 = rgamma(-0.5 * nu_, -nu * half);
    C bracket(0);
    if (!(rg1 == C(0))) bracket += kummer(-nu * half, R(1) / R(2), x, tail_eps) * rg1;
    if (!(rg2 == C(0))) {
      bracket -= C(sqrt(R(2))) * z * rg2 * kummer((C(1) - nu) * half, R(3) / R(2), x, tail_eps);
    }
    C pref = C(sqrt(boost::math::constants::pi<R>())) *
             exp(nu * C(boost::math::constants::ln_two<R>()) * half - x * half);
    C d = pref * bracket;
    return {d.real().template convert_to<double>(), d.imag().template convert_to<double>()};
  }

 private:
  // 1/Gamma with the pole test done on the exactly-representable double
  // argument, so the zeros stay exact.
  static C rgamma(cplx w_double, C w) {
    if (is_nonpositive_integer(w_double)) return C(0);
    return C(1) / gamma(w);
  }
};

using Tier0 = McpEngine<mp::cpp_complex_50, 66, 500>;
using C130 = mp::number<mp::complex_adaptor<mp::cpp_bin_float<130>>, mp::et_off>;
using Tier1 = McpEngine<C130, 166, 1300>;
using C250 = mp::number<mp::complex_adaptor<mp::cpp_bin_float<250>>, mp::et_off>;
using Tier2 = McpEngine<C250, 316, 2600>;

cplx pcf_D_tier(int tier, cplx nu, cplx z) {
  switch (tier) {
    case 0: return Tier0::pcf_D(nu, z, 1e-60);
    case 1: return Tier1::pcf_D(nu, z, 1e-140);
    default: return Tier2::pcf_D(nu, z, 1e-260);
  }
}

cplx pcf_D_unchecked(cplx nu, cplx z) {
  double az = std::abs(z);
  if (az > 30.000001) {
    throw std::domain_error("pcf_D: |z| exceeds the validated range |z| <= 30");
  }
  if (az == 0.0) return pcf_D_at0(nu);
  if (az <= 11.0) return pcf_D_tier(0, nu, z);
  if (az <= 21.0) return pcf_D_tier(1, nu, z);
  return pcf_D_tier(2, nu, z);
}

}  // namespace detail

cplx pcf_D(cplx nu, cplx z) {
  if (std::abs(nu) > 5.000001) {
    throw std::domain_error("pcf_D: |nu| exceeds the validated range |nu| <= 5");
  }
  return detail::pcf_D_unchecked(nu, z);
}

cplx pcf_D_deriv(cplx nu, cplx z) {
  if (std::abs(nu) > 5.000001) {
    throw std::domain_error("pcf_D_deriv: |nu| exceeds the validated range |nu| <= 5");
  }
  return 0.5 * z * detail::pcf_D_unchecked(nu, z) - detail::pcf_D_unchecked(nu + 1.0, z);
}

cplx pcf_D_at0(cplx nu) {
  return std::sqrt(kPi) * std::exp(0.5 * nu * std::log(2.0)) *
         reciprocal_cgamma(0.5 * (1.0 - nu));
}

cplx pcf_D_deriv_at0(cplx nu) {
  return -std::sqrt(kPi) * std::exp(0.5 * (nu + 1.0) * std::log(2.0)) *
         reciprocal_cgamma(-0.5 * nu);
}

cplx branch_log_ratio(cplx lam, double l0, double l1, CutSide side) {
  if (lam.imag() == 0.0) {
    double x = lam.real();
    if (x == l0 || x == l1) {
      throw std::domain_error("branch_log_ratio: evaluation at a branch point");
    }
    if (x > l0 && x < l1) {
      if (side == CutSide::none) {
        throw std::domain_error("branch_log_ratio: on-cut evaluation requires a side");
      }
      double mag = std::log((l1 - x) / (x - l0));
      return {mag, side == CutSide::above ? kPi : -kPi};
    }
  }
  // Off the segment the ratio never touches the negative real axis, so the
  // principal log realises exactly the cut [l0, l1].
  return std::log((lam - l1) / (lam - l0));
}

cplx branch_power(cplx lam, double l0, double l1, cplx p, CutSide side) {
  return std::exp(p * branch_log_ratio(lam, l0, l1, side));
}

}  // namespace nlh::specfun
