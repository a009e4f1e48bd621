"""Singularity analysis for the tree and forest series.

The pointed system has a common square-root branch point at x = rho.  This
module locates it by Newton iteration, computes singular expansions in
X = sqrt(1 - x/rho) by residual matching, transfers the X^3 coefficient to
n^(-5/2) * rho^(-n) growth estimates, and verifies that the bounding series
for self-dual trees stays analytic up to sqrt(rho).

Polynomials in X are plain numpy coefficient arrays (index = power of X)
truncated after degree DEG.  Everything here is float arithmetic on the exact
series computed in :mod:`twolevel.gfsystem`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .powerseries import PowerSeries

DEG = 5
TAIL_EPS = 1e-20
FD_STEP = 1e-7

GAMMA_M32 = math.gamma(-1.5)  # 4*sqrt(pi)/3


@dataclass(frozen=True)
class CharSolution:
    """Branch point of the pointed system and the series values there."""

    rho: float
    a_R: float  # = a_M by symmetry
    a_U: float


@dataclass(frozen=True)
class SingularExpansion:
    """Expansions a(x), u(x) in powers of X = sqrt(1 - x/rho), degree <= DEG."""

    rho: float
    a: np.ndarray
    u: np.ndarray


@dataclass(frozen=True)
class BranchPointReport:
    """Outcome of the subcritical branch-point scan for the bounding series."""

    no_branch_point: bool
    x_max: float
    branch_x: float | None = None
    branch_s: float | None = None

    def describe(self) -> str:
        if self.no_branch_point:
            return f"no branch point in (0, {self.x_max:.8f}]"
        return (
            f"branch point at x = {self.branch_x:.8f} (s = {self.branch_s:.8f}), "
            f"inside (0, {self.x_max:.8f}]"
        )


@dataclass(frozen=True)
class AsymptoticEstimate:
    """count(n) ~ amplitude * n^poly_exponent * growth_rate^n."""

    amplitude: float
    poly_exponent: float
    growth_rate: float

    def value(self, n: int) -> float:
        return self.amplitude * n**self.poly_exponent * self.growth_rate**n


# -- numeric evaluation helpers ------------------------------------------

def tail_value(series: PowerSeries, x: float, r_min: int = 2,
               harmonic: bool = True) -> float:
    """sum_{r >= r_min} series(x^r) (/r if harmonic), to geometric cutoff."""
    if not 0 <= x < 1:
        raise ValueError("tail evaluation requires 0 <= x < 1")
    total = 0.0
    r = r_min
    xr = x**r
    while xr > TAIL_EPS:
        term = series.eval_float(xr)
        total += term / r if harmonic else term
        r += 1
        xr *= x
    return total


def _float_coeffs(series: PowerSeries) -> np.ndarray:
    return np.array([float(c) for c in series.coeffs])


# -- X-polynomial arithmetic ---------------------------------------------

def xp(*coeffs) -> np.ndarray:
    out = np.zeros(DEG + 1)
    out[: len(coeffs)] = coeffs
    return out


def xp_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = np.zeros(DEG + 1)
    for i in range(DEG + 1):
        if p[i]:
            out[i:] += p[i] * q[: DEG + 1 - i]
    return out


def xp_pow(p: np.ndarray, r: int) -> np.ndarray:
    out = xp(1.0)
    for _ in range(r):
        out = xp_mul(out, p)
    return out


def xp_exp(p: np.ndarray) -> np.ndarray:
    """exp of an X-polynomial (constant term allowed)."""
    q = p.copy()
    c0 = q[0]
    q[0] = 0.0
    out = xp(1.0)
    term = xp(1.0)
    for j in range(1, DEG + 1):
        term = xp_mul(term, q) / j
        out += term
    return math.exp(c0) * out


def series_at_xpoly(series: PowerSeries, arg: np.ndarray) -> np.ndarray:
    """Expansion of series(arg(X)) as an X-polynomial.

    The series is a plain truncated polynomial; its derivatives at the
    constant term arg[0] are exact, so the only error is the truncation of
    the series itself (negligible when |arg[0]| is well inside the radius).
    """
    x0 = arg[0]
    dx = arg.copy()
    dx[0] = 0.0
    # Taylor coefficients f^(j)(x0)/j! via repeated polynomial differentiation
    taylor = np.zeros(DEG + 1)
    work = _float_coeffs(series)
    for j in range(DEG + 1):
        v = 0.0
        for c in work[::-1]:
            v = v * x0 + c
        taylor[j] = v / math.factorial(j)
        work = work[1:] * np.arange(1, len(work)) if len(work) > 1 else np.zeros(1)
    out = xp(taylor[0])
    dpow = xp(1.0)
    for j in range(1, DEG + 1):
        dpow = xp_mul(dpow, dx)
        out += taylor[j] * dpow
    return out


def tail_xpoly(series: PowerSeries, x_of_X: np.ndarray, r_min: int = 2,
               harmonic: bool = True) -> np.ndarray:
    """Expansion of sum_{r >= r_min} series(x^r) (/r) around the branch point.

    Each term series(x(X)^r) is analytic there (|x(X)^r| <= rho^r < rho), so
    the tail is a plain X-polynomial.
    """
    rho = x_of_X[0]
    out = np.zeros(DEG + 1)
    r = r_min
    while rho**r > TAIL_EPS:
        term = series_at_xpoly(series, xp_pow(x_of_X, r))
        out += term / r if harmonic else term
        r += 1
    return out


# -- characteristic system -----------------------------------------------

def _system_values(x: float, a: float, u: float,
                   slice1: PowerSeries, slice2: PowerSeries):
    """Right-hand sides and their s-derivatives on the symmetric slice.

    slice1 = a_R + a_U + leg (argument class of the R equation),
    slice2 = 2 a_R + a_U + leg (argument class of the U equation);
    both enter only through tails at x^r, r >= 2, hence carry no (a, u)
    dependence.
    """
    s1 = a + u + x
    s2 = 2.0 * a + u + x
    t1 = tail_value(slice1, x)
    t2 = tail_value(slice2, x)
    lt = tail_value(slice2, x, harmonic=False)
    e1 = math.exp(s1 + t1)
    e2 = math.exp(s2 + t2)
    lin = s2 + lt
    f_R = e1 - 1.0 - s1
    f_U = e2 * lin + s2 - 2.0 * e2 + 2.0
    d1 = e1 - 1.0  # dF_R/ds1
    d2 = e2 * lin + e2 + 1.0 - 2.0 * e2  # dF_U/ds2
    return f_R, f_U, d1, d2


def solve_char_system(
    a_R: PowerSeries,
    a_U: PowerSeries,
    seed: tuple[float, float, float] = (0.2, 0.13, 0.07),
    tol: float = 1e-12,
    max_iter: int = 100,
) -> CharSolution:
    """Newton iteration for the branch point of the pointed system.

    Unknowns (x, a, u) with a the common R/M value.  Conditions: a and u are
    fixed by the system and the symmetric-slice Jacobian
    J = [[d1, d1], [2 d2, d2]] satisfies det(I - J) = 0.
    """
    leg = PowerSeries.x(a_R.order)
    slice1 = a_R + a_U + leg
    slice2 = a_R + a_R + a_U + leg

    def residual(v: np.ndarray) -> np.ndarray:
        x, a, u = v
        f_R, f_U, d1, d2 = _system_values(x, a, u, slice1, slice2)
        det = (1.0 - d1) * (1.0 - d2) - 2.0 * d1 * d2
        return np.array([f_R - a, f_U - u, det])

    v = np.array(seed, dtype=float)
    for _ in range(max_iter):
        g = residual(v)
        if np.max(np.abs(g)) < tol:
            return CharSolution(rho=v[0], a_R=v[1], a_U=v[2])
        jac = np.empty((3, 3))
        for j in range(3):
            vp = v.copy()
            vp[j] += FD_STEP
            jac[:, j] = (residual(vp) - g) / FD_STEP
        v = v - np.linalg.solve(jac, g)
    raise ArithmeticError("branch-point Newton iteration did not converge")


# -- singular expansions --------------------------------------------------

def _residual_xpolys(char: CharSolution, a_poly: np.ndarray, u_poly: np.ndarray,
                     slice1: PowerSeries, slice2: PowerSeries):
    rho = char.rho
    x_of_X = xp(rho, 0.0, -rho)
    s1 = a_poly + u_poly + x_of_X
    s2 = 2.0 * a_poly + u_poly + x_of_X
    t1 = tail_xpoly(slice1, x_of_X)
    t2 = tail_xpoly(slice2, x_of_X)
    lt = tail_xpoly(slice2, x_of_X, harmonic=False)
    e1 = xp_exp(s1 + t1)
    e2 = xp_exp(s2 + t2)
    lin = s2 + lt
    r_a = e1 - xp(1.0) - s1 - a_poly
    r_u = xp_mul(e2, lin) + s2 - 2.0 * e2 + xp(2.0) - u_poly
    return r_a, r_u


def singular_expansions(
    char: CharSolution,
    a_R: PowerSeries,
    a_U: PowerSeries,
    tol: float = 1e-12,
    max_iter: int = 60,
) -> SingularExpansion:
    """Match the system residuals to zero through X^5.

    The constant terms are pinned to the branch-point values; the ten
    coefficients A_1..A_5, U_1..U_5 are found by Gauss-Newton on the ten
    residual coefficients of X^1..X^5.  The linearization is rank-deficient
    by one (the top-order coefficients are only fixed at order DEG + 2), so
    the step is a least-squares solve; the reported low-order coefficients
    are unaffected.
    """
    leg = PowerSeries.x(a_R.order)
    slice1 = a_R + a_U + leg
    slice2 = a_R + a_R + a_U + leg

    def residual(v: np.ndarray) -> np.ndarray:
        a_poly = np.concatenate(([char.a_R], v[:DEG]))
        u_poly = np.concatenate(([char.a_U], v[DEG:]))
        r_a, r_u = _residual_xpolys(char, a_poly, u_poly, slice1, slice2)
        return np.concatenate((r_a[1:], r_u[1:]))

    v = np.full(2 * DEG, 0.0)
    v[0] = v[DEG] = -0.2
    for _ in range(max_iter):
        g = residual(v)
        if np.max(np.abs(g)) < tol:
            break
        jac = np.empty((2 * DEG, 2 * DEG))
        for j in range(2 * DEG):
            vp = v.copy()
            vp[j] += FD_STEP
            jac[:, j] = (residual(vp) - g) / FD_STEP
        step, *_ = np.linalg.lstsq(jac, -g, rcond=None)
        v = v + step
    else:
        raise ArithmeticError("singular-expansion matching did not converge")
    a_poly = np.concatenate(([char.a_R], v[:DEG]))
    u_poly = np.concatenate(([char.a_U], v[DEG:]))
    if a_poly[1] > 0:  # fix the branch X -> -X so the X^1 term is negative
        signs = (-1.0) ** np.arange(DEG + 1)
        a_poly *= signs
        u_poly *= signs
    return SingularExpansion(rho=char.rho, a=a_poly, u=u_poly)


def char_residual_norm(char: CharSolution, a_R: PowerSeries, a_U: PowerSeries) -> float:
    """Max-norm of the branch-point defining equations at the solution."""
    leg = PowerSeries.x(a_R.order)
    slice1 = a_R + a_U + leg
    slice2 = a_R + a_R + a_U + leg
    f_R, f_U, d1, d2 = _system_values(char.rho, char.a_R, char.a_U, slice1, slice2)
    det = (1.0 - d1) * (1.0 - d2) - 2.0 * d1 * d2
    return max(abs(f_R - char.a_R), abs(f_U - char.a_U), abs(det))


def expansion_residual_norm(char: CharSolution, exp_: SingularExpansion,
                            a_R: PowerSeries, a_U: PowerSeries) -> float:
    """Max-norm of the matched residual coefficients X^0..X^3."""
    leg = PowerSeries.x(a_R.order)
    slice1 = a_R + a_U + leg
    slice2 = a_R + a_R + a_U + leg
    r_a, r_u = _residual_xpolys(char, exp_.a, exp_.u, slice1, slice2)
    return float(max(np.max(np.abs(r_a[:4])), np.max(np.abs(r_u[:4]))))


# -- singular expansion of T and the forest series ------------------------

def _mset2_xpoly(p: np.ndarray, cls: PowerSeries, x_of_X: np.ndarray) -> np.ndarray:
    """Pair-multiset value (p(X)^2 + cls(x(X)^2)) / 2."""
    return (xp_mul(p, p) + series_at_xpoly(cls, xp_pow(x_of_X, 2))) / 2.0


def expand_T(exp_: SingularExpansion, a_R: PowerSeries, a_U: PowerSeries) -> np.ndarray:
    """Singular expansion of the unrooted series T via dissymmetry.

    Built from the pointed expansions by the same algebra used on exact
    series in :func:`twolevel.gfsystem.assemble_T`.
    """
    rho = exp_.rho
    x_of_X = xp(rho, 0.0, -rho)
    a, u = exp_.a, exp_.u
    leg = PowerSeries.x(a_R.order)
    slice1 = a_R + a_U + leg  # class at an R (or M) vertex
    slice2 = a_R + a_R + a_U + leg  # class at a U vertex
    s1 = a + u + x_of_X
    s2 = 2.0 * a + u + x_of_X
    # vertex-pointed parts
    t_R = a - _mset2_xpoly(s1, slice1, x_of_X)
    t_M = t_R
    e2 = xp_exp(s2 + tail_xpoly(slice2, x_of_X))
    mset_ge3 = e2 - xp(1.0) - s2 - _mset2_xpoly(s2, slice2, x_of_X)
    t_U = u - mset_ge3
    t_bullet = xp_mul(x_of_X, 2.0 * a + u)
    t_v = t_R + t_M + t_U + t_bullet
    # edge- and directed-edge-pointed parts
    t_e = (
        xp_mul(a, a + u + x_of_X)
        + xp_mul(a, u + x_of_X)
        + _mset2_xpoly(u, a_U, x_of_X)
        + xp_mul(x_of_X, u)
    )
    t_d = (
        2.0 * xp_mul(a, a + u + x_of_X)
        + xp_mul(u, s2)
        + xp_mul(x_of_X, 2.0 * a + u)
    )
    return t_v + t_e - t_d


def expand_forests(t_poly: np.ndarray, t_series: PowerSeries, rho: float) -> np.ndarray:
    """Singular expansion of the forest series MSet(T).

    The tail factor exp(sum_{r>=2} T(x^r)/r) is analytic at rho and enters as
    its value there; its X^2 variation is an analytic term that cannot affect
    the transferred asymptotics, so by convention it is not expanded.
    """
    return math.exp(tail_value(t_series, rho)) * xp_exp(t_poly)


def transfer(poly: np.ndarray, rho: float, tol: float = 1e-8) -> AsymptoticEstimate:
    """Growth estimate from the X^3 coefficient of a singular expansion.

    Requires a pure square-root branch point: the X^1 coefficient must vanish
    (analytic and X^2 terms contribute nothing to the asymptotics at this
    order).  [x^n](1 - x/rho)^(3/2) ~ n^(-5/2) rho^(-n) / Gamma(-3/2).
    """
    if abs(poly[1]) > tol:
        raise ArithmeticError(
            f"X^1 coefficient {poly[1]:.3e} is not negligible; "
            "not a (1 - x/rho)^(3/2)-type singularity"
        )
    return AsymptoticEstimate(
        amplitude=poly[3] / GAMMA_M32,
        poly_exponent=-2.5,
        growth_rate=1.0 / rho,
    )


# -- self-dual bounding series --------------------------------------------

def verify_selfdual_growth(
    s_bound: PowerSeries,
    pair_series: PowerSeries,
    rho: float,
    tol: float = 1e-10,
) -> BranchPointReport:
    """Scan for a branch point of the bounding-series system in
    (0, sqrt(rho)].

    The pair class lives at x^2, so its own singularity sits at
    x = sqrt(rho); if the fixed-point system for the bounding series stays
    subcritical up to that point, the dominant singularity is exactly
    sqrt(rho) and the bound grows like rho^(-n/2) up to polynomial factors.
    A 2D Newton search for (s = F, dF/ds = 1) is run from a seed grid; a
    found root is a report outcome, not an error.
    """
    leg_order = s_bound.order
    leg = PowerSeries.x(leg_order)
    core_cls = s_bound + leg

    def f_and_fs(x: float, s: float):
        c = s + x
        h = tail_value(core_cls, x)
        e_core = math.exp(c + h)
        q = core_cls.eval_float(x * x)
        # the pair class lives at x^2: MSet contributes P((x^r)^2) = P((x^2)^r)
        x2 = x * x
        p_val = pair_series.eval_float(x2) + tail_value(pair_series, x2)
        e_pair = math.exp(p_val)
        f = (e_core - 1.0 - c - (c * c + q) / 2.0) + (e_pair - 1.0) * (e_core - 1.0)
        f_s = (e_core - 1.0 - c) + (e_pair - 1.0) * e_core
        return f, f_s

    x_max = math.sqrt(rho)
    x_cap = min(1.2 * x_max, 0.999)  # past here the series evaluations diverge
    for x0 in np.linspace(0.1 * x_max, x_max, 8):
        for s0 in (0.0, 0.1, 0.3, 0.6):
            x, s = float(x0), float(s0)
            root = False
            for _ in range(80):
                try:
                    f, f_s = f_and_fs(x, s)
                    g = np.array([s - f, 1.0 - f_s])
                    if np.max(np.abs(g)) < tol:
                        root = True
                        break
                    jac = np.empty((2, 2))
                    for j, (dx, ds) in enumerate(((FD_STEP, 0.0), (0.0, FD_STEP))):
                        fp, fsp = f_and_fs(x + dx, s + ds)
                        jac[:, j] = (np.array([s + ds - fp, 1.0 - fsp]) - g) / FD_STEP
                    step = np.linalg.solve(jac, -g)
                except (OverflowError, np.linalg.LinAlgError):
                    break
                x, s = x + step[0], s + step[1]
                if not (0.0 < x < x_cap and -1.0 < s < 10.0):
                    break
            if root and 0.0 < x <= x_max + 1e-9 and s > 0.0:
                return BranchPointReport(
                    no_branch_point=False, x_max=x_max, branch_x=x, branch_s=s
                )
    return BranchPointReport(no_branch_point=True, x_max=x_max)


# -- empirical growth from coefficients ------------------------------------

def richardson_rate(series: PowerSeries) -> float:
    """Extrapolated growth rate from the last two coefficient ratios.

    For c_n ~ C n^a R^n the ratio r_n = c_n / c_(n-1) = R (1 + a/n + ...),
    so n r_n - (n - 1) r_(n-1) cancels the 1/n term.
    """
    n = series.order
    if n < 3:
        raise ValueError("need at least three coefficients")
    c = series.coeffs
    r_n = c[n] / c[n - 1]
    r_p = c[n - 1] / c[n - 2]
    return float(n * r_n - (n - 1) * r_p)
