"""Generating-function system for UMR-trees.

Solves the coupled fixed-point equations for the pointed tree series, assembles
the unrooted series T(x) by the dissymmetry identity, and derives the self-dual
and bounding series plus the forest series MSet(T).
"""
from __future__ import annotations

from dataclasses import dataclass

from .powerseries import PowerSeries, Rational, at_least, exactly, odd_at_least


@dataclass(frozen=True)
class PointedSeries:
    """Series of trees pointed at an R-, M-, U-vertex, or a leg."""

    a_R: PowerSeries
    a_M: PowerSeries
    a_U: PowerSeries
    a_leg: PowerSeries


@dataclass(frozen=True)
class UnrootedSeries:
    """T(x) together with its vertex-, edge-, and directed-edge-rooted parts."""

    t: PowerSeries
    t_v: PowerSeries
    t_e: PowerSeries
    t_d: PowerSeries


@dataclass(frozen=True)
class SelfDualSeries:
    """Self-dual pointed series (both variants) and the bounding series."""

    s_U_paper: PowerSeries
    s_U_corrected: PowerSeries
    s_bound: PowerSeries


def _schedule(order: int):
    # Growing truncation: pass k pins coefficient k (each right-hand side
    # gains at least one order of agreement).  Two full passes then a residual
    # check make the convergence assumption verifiable.
    yield from range(2, order + 1)
    yield order
    yield order


def _pointed_rhs(a_R, a_M, a_U, leg):
    order = a_R.order
    two = PowerSeries.constant(2, order)
    new_R = (a_M + a_U + leg).mset_restricted(at_least(2))
    new_M = (a_R + a_U + leg).mset_restricted(at_least(2))
    s = a_R + a_M + a_U + leg
    e = s.mset()
    lin = PowerSeries.zeros(order)
    for r in range(1, order + 1):
        lin = lin + s.substitute_power(r)
    m2 = s.mset_restricted(exactly(2))
    new_U = e * lin - s - 2 * m2 - 2 * e + two + 2 * s + 2 * m2
    return new_R, new_M, new_U


def solve_pointed(order: int) -> PointedSeries:
    """Solve the pointed-series fixed point from the zero seed."""
    if order < 2:
        raise ValueError("order must be >= 2")
    leg = PowerSeries.x(order)
    a_R = a_M = a_U = PowerSeries.zeros(order)
    for m in _schedule(order):
        r, s, u = _pointed_rhs(
            a_R.truncate(m), a_M.truncate(m), a_U.truncate(m), leg.truncate(m)
        )
        a_R, a_M, a_U = r.extended(order), s.extended(order), u.extended(order)
    r, s, u = _pointed_rhs(a_R, a_M, a_U, leg)
    if (r, s, u) != (a_R, a_M, a_U):
        raise ArithmeticError("pointed fixed point did not converge to residual 0")
    return PointedSeries(a_R, a_M, a_U, leg)


def pointed_residuals(p: PointedSeries) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    """Defining-equation residuals; all-zero for a valid fixed point."""
    r, s, u = _pointed_rhs(p.a_R, p.a_M, p.a_U, p.a_leg)
    return r - p.a_R, s - p.a_M, u - p.a_U


def assemble_T(p: PointedSeries) -> UnrootedSeries:
    """Unrooted series by the dissymmetry identity T = T_v + T_e - T_d."""
    a_R, a_M, a_U, leg = p.a_R, p.a_M, p.a_U, p.a_leg
    t_e = (
        a_M * (a_R + a_U + leg)
        + a_R * (a_U + leg)
        + a_U.mset_restricted(exactly(2))
        + leg * a_U
    )
    t_d = (
        a_M * (a_R + a_U + leg)
        + a_R * (a_M + a_U + leg)
        + a_U * (a_M + a_R + a_U + leg)
        + leg * (a_R + a_M + a_U)
    )
    t_bullet = leg * (a_R + a_M + a_U)
    t_R = a_R - (a_M + a_U + leg).mset_restricted(exactly(2))
    t_M = a_M - (a_R + a_U + leg).mset_restricted(exactly(2))
    t_U = a_U - (a_R + a_M + a_U + leg).mset_restricted(at_least(3))
    t_v = t_R + t_M + t_U + t_bullet
    t = t_v + t_e - t_d
    return UnrootedSeries(t, t_v, t_e, t_d)


def _selfdual_rhs(p: PointedSeries, s_U: PowerSeries, variant: str) -> PowerSeries:
    if variant == "paper":
        pairs = (
            p.a_R.substitute_power(2)
            + p.a_M.substitute_power(2)
            + (p.a_U - s_U).substitute_power(2)
        )
    elif variant == "corrected":
        # one contribution per unordered dual pair {t, t*}
        pairs = p.a_R.substitute_power(2) + ((p.a_U - s_U) / 2).substitute_power(2)
    else:
        raise ValueError(f"unknown self-dual variant {variant!r}")
    core = s_U + p.a_leg
    return core.mset_restricted(odd_at_least(3)) + pairs.mset_restricted(
        at_least(1)
    ) * core.mset_restricted(odd_at_least(1))


def compute_selfdual(p: PointedSeries, variant: str) -> PowerSeries:
    """Self-dual U-pointed series, "paper" or "corrected" pair counting."""
    order = p.a_U.order
    s_U = PowerSeries.zeros(order)
    for m in _schedule(order):
        pm = PointedSeries(
            p.a_R.truncate(m), p.a_M.truncate(m), p.a_U.truncate(m), p.a_leg.truncate(m)
        )
        s_U = _selfdual_rhs(pm, s_U.truncate(m), variant).extended(order)
    if _selfdual_rhs(p, s_U, variant) != s_U:
        raise ArithmeticError("self-dual fixed point did not converge to residual 0")
    return s_U


def _s_bound_rhs(p: PointedSeries, n_U: PowerSeries, s: PowerSeries) -> PowerSeries:
    pairs = (
        p.a_R.substitute_power(2)
        + p.a_M.substitute_power(2)
        + n_U.substitute_power(2)
    )
    core = s + p.a_leg
    return core.mset_restricted(at_least(3)) + pairs.mset_restricted(
        at_least(1)
    ) * core.mset_restricted(at_least(1))


def compute_s_bound(p: PointedSeries, s_U_paper: PowerSeries) -> PowerSeries:
    """Bounding series dominating the self-dual pointed series."""
    order = p.a_U.order
    n_U = p.a_U - s_U_paper
    s = PowerSeries.zeros(order)
    for m in _schedule(order):
        pm = PointedSeries(
            p.a_R.truncate(m), p.a_M.truncate(m), p.a_U.truncate(m), p.a_leg.truncate(m)
        )
        s = _s_bound_rhs(pm, n_U.truncate(m), s.truncate(m)).extended(order)
    if _s_bound_rhs(p, n_U, s) != s:
        raise ArithmeticError("bounding-series fixed point did not converge")
    return s


def solve_selfdual(p: PointedSeries) -> SelfDualSeries:
    s_paper = compute_selfdual(p, "paper")
    s_corrected = compute_selfdual(p, "corrected")
    return SelfDualSeries(s_paper, s_corrected, compute_s_bound(p, s_paper))


def compute_forests(t: PowerSeries) -> PowerSeries:
    """Multisets of UMR-trees: all (possibly disconnected) 2-level matroids."""
    if t.coeff(0):
        raise ValueError("tree series must have zero constant term")
    return t.mset()


def lower_bound_counts(t: PowerSeries, selfdual_counts) -> list[int]:
    """Counts of non-congruent base polytopes, (L2(n) + S2(n)) / 2 per size."""
    tc = t.integer_coeffs()
    out = []
    for n, s2 in enumerate(selfdual_counts):
        l2 = tc[n] if n <= t.order else 0
        if (l2 + s2) % 2:
            raise ArithmeticError(
                f"parity violation at n={n}: tree count {l2}, self-dual count {s2}"
            )
        out.append((l2 + s2) // 2)
    return out
