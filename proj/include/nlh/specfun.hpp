// Special functions used across the pipeline: complex gamma, parabolic
// cylinder functions of complex order/argument, and the segment-cut power.
#pragma once
#include <complex>

namespace nlh::specfun {

using cplx = std::complex<double>;

// Complex gamma function (Lanczos approximation; reflection for Re z < 1/2).
cplx cgamma(cplx z);

// 1/Gamma(z).  Returns exactly 0 at the poles z = 0, -1, -2, ...
cplx reciprocal_cgamma(cplx z);

// Parabolic cylinder function D_nu(z), complex order and argument.
// The confluent-hypergeometric series is summed in multiprecision (50 to 250
// decimal digits, escalating with |z|) so that the e^{|z|^2/2} cancellation
// between its two halves never touches double-precision noise.  Validated
// domain |nu| <= 5, |z| <= 30; outside it a domain_error is thrown.
cplx pcf_D(cplx nu, cplx z);

// Derivative dD_nu/dz via the ladder relation D'_nu = (z/2) D_nu - D_{nu+1}.
cplx pcf_D_deriv(cplx nu, cplx z);

// Values at the origin in closed form.
cplx pcf_D_at0(cplx nu);
cplx pcf_D_deriv_at0(cplx nu);

// Which side of a branch cut a real evaluation point should be read from.
enum class CutSide { none, above, below };

// log((lam - l1)/(lam - l0)) with the branch cut exactly on the real segment
// [l0, l1]; tends to 0 at infinity.  Points on the open cut require a side;
// the branch points themselves are rejected.
cplx branch_log_ratio(cplx lam, double l0, double l1, CutSide side = CutSide::none);

// ((lam - l1)/(lam - l0))^p on the same branch; tends to 1 at infinity.
cplx branch_power(cplx lam, double l0, double l1, cplx p, CutSide side = CutSide::none);

namespace detail {
// Evaluation at a forced precision tier (0: 50 digits, |z| <= 11; 1: 130
// digits, |z| <= 21; 2: 250 digits, |z| <= 30), exposed so tests can check
// that adjacent tiers agree on the dispatch boundaries.
cplx pcf_D_tier(int tier, cplx nu, cplx z);
// Like pcf_D but without the |nu| restriction (the series converges for any
// order); used internally by the derivative ladder at the domain edge.
cplx pcf_D_unchecked(cplx nu, cplx z);
}  // namespace detail

}  // namespace nlh::specfun
