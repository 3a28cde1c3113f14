#!/usr/bin/env python3
"""Regenerates the multiprecision reference values quoted in the unit tests
(tests/test_specfun.cpp and tests/test_deltafun.cpp): the complex Gamma
table, the parabolic-cylinder table with its origin values, near-pole
reciprocals, segment-cut powers, and the bump-data Cauchy exponent.

Prints C++ initializer fragments with 17 significant digits.  Run with
mpmath installed and paste the relevant block when a table changes:

    python3 tools/gen_reference_values.py
"""

import mpmath as mp

mp.mp.dps = 40


def g17(x):
    """One real component, shortest form that round-trips a double."""
    return "%.17g" % float(x)


def cpair(v):
    v = mp.mpc(v)
    return "{%s, %s}" % (g17(v.real), g17(v.imag))


def header(title):
    print()
    print("// ---- %s" % title)


# ----------------------------------------------------------------- Gamma table
header("cgamma cases {z, Gamma(z)}")
gamma_points = [
    (0.5, 3.0),
    (-2.5, 0.3),
    (5.0, -4.0),
    (1e-3, 1e-3),
    (-7.2, -2.9),
    (12.0, 9.0),
    (0.0, 0.1),
    (1.0, -20.0),
]
for re, im in gamma_points:
    z = mp.mpc(re, im)
    print("      {%s, %s}," % (cpair(z), cpair(mp.gamma(z))))

header("reciprocal_cgamma near poles {z, 1/Gamma(z)}")
for z in [mp.mpc(-3.0, mp.mpf("1e-8")), mp.mpc(mp.mpf("-0.9999999"), 0)]:
    print("      {%s, %s}," % (cpair(z), cpair(1 / mp.gamma(z))))

# ---------------------------------------------------- parabolic cylinder table
header("pcf_D cases {nu, z, D_nu(z)}")
pcf_points = [
    ((0.0, 0.0), (2.0, 0.0)),
    ((1.0, 0.0), (1.0, 0.0)),
    ((0.0, 0.3), (0.7, 0.2)),
    ((0.0, -0.25), (2.1, -1.3)),
    ((-0.25, 0.4), (3.0, 3.0)),
    ((2.5, -1.5), (-2.0, 0.5)),
    ((0.0, 4.9), (5.0, 5.0)),
    ((4.0, 3.0), (7.0, -2.0)),
    ((0.0, 0.3), (-5.5, -1.0)),
    ((0.0, -4.9), (7.9, 0.0)),
    ((1.5, 0.5), (-7.5, 2.5)),
    ((0.0, 0.5), (8.4, 8.4)),
    ((-0.25, 0.4), (-9.0, 9.0)),
    ((2.5, -1.5), (12.0, 1.0)),
    ((0.0, 0.3), (0.0, -14.0)),
    ((3.0, -4.0), (-18.0, -4.0)),
    ((0.0, 4.9), (21.0, -21.0)),
    ((1.0, 0.1), (-25.0, 0.0)),
    ((0.0, -1.0 / 6.0), (29.0, 0.0)),
    ((0.2, 0.0), (0.0, 30.0)),
]
for (nre, nim), (zre, zim) in pcf_points:
    nu = mp.mpc(nre, nim)
    z = mp.mpc(zre, zim)
    print("      {%s, %s, %s}," % (cpair(nu), cpair(z), cpair(mp.pcfd(nu, z))))

header("pcf_D value and derivative at the origin, nu = 0.2 i")
nu = mp.mpc(0, 0.2)
print("      D_nu(0)  = %s" % cpair(mp.pcfd(nu, 0)))
print("      D_nu'(0) = %s" % cpair(mp.diff(lambda w: mp.pcfd(nu, w), mp.mpc(0))))

# -------------------------------------------------------- segment-cut powers
# ((lam - l1)/(lam - l0))^p with the cut on [l0, l1] = [-1, 1]; off the cut
# the ratio avoids the negative reals, so the principal branch applies.
header("branch_power cases {lam, p, value}")
for lam, p in [(mp.mpc(0.3, 0.4), mp.mpc(0.0, 0.25)),
               (mp.mpc(-3.0, -0.2), mp.mpc(0.5, 0.0))]:
    val = mp.exp(p * mp.log((lam - 1) / (lam + 1)))
    print("      {%s, %s, %s}," % (cpair(lam), cpair(p), cpair(val)))

# ------------------------------------------------- bump-data Cauchy exponent
# chi at the matching endpoint lambda0 for r1 = 0.5 e^{-4 s^2}, r2 = 1 on the
# geometry (alpha, beta, xi) = (0, 1, -3), i.e. [lambda0, lambda1] = [-1/2, 1/2]:
#   chi0(lambda0) = (1/2 pi i) Int_{l0}^{l1} [ln w(s) - ln w(l0)]/(s - l0) ds,
# with w = 1 - r1 r2 real positive here, so the result is purely imaginary.
header("bump-data chi0 at lambda0")
l0, l1 = mp.mpf(-0.5), mp.mpf(0.5)


def logw(s):
    return mp.log(1 - mp.mpf('0.5') * mp.exp(-4 * s * s))


integral = mp.quad(lambda s: (logw(s) - logw(l0)) / (s - l0), [l0, l1])
chi0 = integral / (2 * mp.pi * mp.mpc(0, 1))
print("      chi0 = i * %s" % mp.nstr(chi0.imag, 20))
