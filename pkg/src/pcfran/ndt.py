"""Exact delivery-time analytics.

The normalized delivery time splits into a fronthaul part R1/rho and an
edge part R2/d.  At integer cache parameter t both parts have closed
forms, and the total is

    delta = (L-t)/r * ( (r-1)/L + (1/(t+1)) * (1 + 1/rho) ).

Non-integer t is served by memory sharing, realized here as linear
interpolation of the two neighboring integer-t results.  Points are
flagged proven only where the scheme exists (r = 2, or t >= L-2 at every
corner used); the formula is still evaluated elsewhere so full-range
curves can be drawn honestly.

All arithmetic is in exact rationals.  The CSV schema is fixed:
12-significant-digit decimal columns first, exact p/q columns appended.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import IncompatiblePair, OutOfRange, UnboundedNdt
from .ia_verify import dof_per_user
from .topology import NetworkParams, _as_fraction

CSV_HEADER = [
    "H", "r", "K", "L", "N", "M", "t", "rho",
    "R1", "R2", "d", "delta_F", "delta_E", "delta",
    "proven", "interpolated",
    "M_exact", "t_exact", "rho_exact", "R1_exact", "R2_exact", "d_exact",
    "delta_F_exact", "delta_E_exact", "delta_exact",
]


@dataclass(frozen=True)
class NdtResult:
    """Delivery-time breakdown at one cache size, all values exact."""

    delta_F: Fraction
    delta_E: Fraction
    delta: Fraction
    R1: Fraction
    R2: Fraction
    d: Fraction
    t_used: Fraction
    proven: bool
    interpolated: bool

    def as_dict(self) -> dict:
        return {
            "delta_F": str(self.delta_F),
            "delta_E": str(self.delta_E),
            "delta": str(self.delta),
            "R1": str(self.R1),
            "R2": str(self.R2),
            "d": str(self.d),
            "t": str(self.t_used),
            "proven": self.proven,
            "interpolated": self.interpolated,
        }


def is_proven(r: int, t: Fraction, L: int) -> bool:
    return r == 2 or t >= L - 2


def total_ndt_formula(r: int, L: int, t: int, rho: Fraction) -> Fraction:
    """Direct evaluation of the achievable total NDT at integer t."""
    if rho == 0 and t < L:
        raise UnboundedNdt("rho=0 with nonzero fronthaul traffic")
    fronthaul = Fraction(1, t + 1) / rho if t < L else Fraction(0)
    return Fraction(L - t, r) * (Fraction(r - 1, L) + Fraction(1, t + 1) + fronthaul)


def edge_ndt_formula(r: int, L: int, t: int) -> Fraction:
    """Edge part alone: (L-t)/r * ((r-1)/L + 1/(t+1))."""
    return Fraction(L - t, r) * (Fraction(r - 1, L) + Fraction(1, t + 1))


def _integer_point(params: NetworkParams, t: int) -> NdtResult:
    r, L = params.r, params.L
    R1 = Fraction(math.comb(L, t + 1), r * math.comb(L, t))
    R2 = Fraction(L - t, L)
    if R1 > 0 and params.rho == 0:
        raise UnboundedNdt("rho=0 with nonzero fronthaul traffic")
    delta_F = R1 / params.rho if R1 else Fraction(0)
    d = dof_per_user(params.H, r, t) if is_proven(r, Fraction(t), L) else _formula_dof(L, r, t)
    delta_E = R2 / d if R2 else Fraction(0)
    return NdtResult(
        delta_F=delta_F,
        delta_E=delta_E,
        delta=delta_F + delta_E,
        R1=R1,
        R2=R2,
        d=d,
        t_used=Fraction(t),
        proven=is_proven(r, Fraction(t), L),
        interpolated=False,
    )


def _formula_dof(L: int, r: int, t: int) -> Fraction:
    # Same expression as the verified regimes; used only to draw unproven
    # full-range curves, never asserted against a census.
    if t == L:
        return Fraction(1)
    desired = r * math.comb(L - 1, t)
    return Fraction(desired, desired + math.comb(L, t + 1) - math.comb(L - 1, t))


def ndt_point(params: NetworkParams) -> NdtResult:
    """Total NDT at the params' cache size, memory-sharing if t is fractional."""
    t = params.t
    L = params.L
    if not (0 <= t <= L):
        raise OutOfRange(f"t={t} outside [0, L={L}]")
    if t.denominator == 1:
        return _integer_point(params, int(t))
    lo, hi = math.floor(t), math.ceil(t)
    lam = t - lo  # weight of the upper corner
    a, b = _integer_point(params, lo), _integer_point(params, hi)
    R1 = (1 - lam) * a.R1 + lam * b.R1
    R2 = (1 - lam) * a.R2 + lam * b.R2
    delta_F = (1 - lam) * a.delta_F + lam * b.delta_F
    delta_E = (1 - lam) * a.delta_E + lam * b.delta_E
    d = R2 / delta_E if delta_E else Fraction(1)
    return NdtResult(
        delta_F=delta_F,
        delta_E=delta_E,
        delta=delta_F + delta_E,
        R1=R1,
        R2=R2,
        d=d,
        t_used=t,
        proven=a.proven and b.proven,
        interpolated=True,
    )


def ndt_sweep(params: NetworkParams, M_grid: Sequence) -> list[tuple[NetworkParams, NdtResult]]:
    """Evaluate the NDT along a cache-size grid, one row per grid point."""
    rows = []
    for M in M_grid:
        M = _as_fraction(M)
        if not (0 <= M <= params.N):
            raise OutOfRange(f"grid point M={M} outside [0, N={params.N}]")
        p = replace(params, M=M)
        rows.append((p, ndt_point(p)))
    return rows


def corner_cache_sizes(params: NetworkParams) -> list[Fraction]:
    """Cache sizes at which t is an integer (the memory-sharing corners)."""
    return [Fraction(t * params.N, params.L) for t in range(params.L + 1)]


@dataclass(frozen=True)
class ComparisonRow:
    M: Fraction
    result_a: NdtResult
    result_b: NdtResult

    @property
    def gap(self) -> Fraction:
        return self.result_b.delta - self.result_a.delta

    @property
    def comparable(self) -> bool:
        return self.result_a.proven and self.result_b.proven


def compare_connectivity(
    H: int,
    rA: int,
    rB: int,
    N: int,
    rho,
    M_grid: Optional[Sequence] = None,
) -> list[ComparisonRow]:
    """Side-by-side NDT of two networks with rA + rB = H on a shared M grid.

    Rows where both results are proven must satisfy delta_A <= delta_B
    (higher connectivity wins); a violation raises since it would mean the
    formulas disagree with the scheme.  The default grid is the integers
    0..N plus both networks' memory-sharing corners.
    """
    if rA + rB != H:
        raise IncompatiblePair(f"need rA + rB = H, got {rA}+{rB} != {H}")
    if rA < rB:
        raise IncompatiblePair(f"need rA >= rB, got rA={rA} < rB={rB}")
    rho = _as_fraction(rho)
    pa = NetworkParams(H=H, r=rA, N=N, rho=rho)
    pb = NetworkParams(H=H, r=rB, N=N, rho=rho)
    if M_grid is None:
        grid = {Fraction(m) for m in range(N + 1)}
        grid.update(corner_cache_sizes(pa))
        grid.update(corner_cache_sizes(pb))
        M_grid = sorted(grid)
    rows = []
    for M in M_grid:
        M = _as_fraction(M)
        ra = ndt_point(replace(pa, M=M))
        rb = ndt_point(replace(pb, M=M))
        row = ComparisonRow(M=M, result_a=ra, result_b=rb)
        if row.comparable and ra.delta > rb.delta:
            raise OutOfRange(
                f"connectivity comparison violated at M={M}: "
                f"{ra.delta} > {rb.delta}"
            )
        rows.append(row)
    return rows


def format_decimal(x: Fraction) -> str:
    """Render a rational as a decimal string with 12 significant digits."""
    if x.denominator == 1:
        return str(x.numerator)
    with localcontext() as ctx:
        ctx.prec = 12
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f")


def format_exact(x: Fraction) -> str:
    return str(Fraction(x))


def csv_row(params: NetworkParams, result: NdtResult) -> list[str]:
    return [
        str(params.H),
        str(params.r),
        str(params.K),
        str(params.L),
        str(params.N),
        format_decimal(params.M),
        format_decimal(result.t_used),
        format_decimal(params.rho),
        format_decimal(result.R1),
        format_decimal(result.R2),
        format_decimal(result.d),
        format_decimal(result.delta_F),
        format_decimal(result.delta_E),
        format_decimal(result.delta),
        "true" if result.proven else "false",
        "true" if result.interpolated else "false",
        format_exact(params.M),
        format_exact(result.t_used),
        format_exact(params.rho),
        format_exact(result.R1),
        format_exact(result.R2),
        format_exact(result.d),
        format_exact(result.delta_F),
        format_exact(result.delta_E),
        format_exact(result.delta),
    ]


def write_sweep_csv(rows: Iterable[tuple[NetworkParams, NdtResult]], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for params, result in rows:
        writer.writerow(csv_row(params, result))
