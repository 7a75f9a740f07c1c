"""Symbolic verification of the real-alignment delivery.

Signals of one group are sent along the monomial direction set generated
by the group's channel-symbol basis: all products of basis symbols with
per-symbol exponents up to a degree n.  At a covered user every arriving
group signal is shifted by one of the user's own symbols, which are all in
the basis, so the shifted directions stay inside the degree-(n+1) set and
the r interfering signals of the group share one received subspace.

Verification is performed at the subspace-label level: a label is the pair
(group, sending EN) for desired signals and the group alone for
interference.  Counting distinct labels reproduces the DoF ratio without
appealing to the asymptotic rational-independence argument.  A numeric
rank spot check on random channel draws backs up the label bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .alignment import AlignmentGroup, ChannelSymbol
from .errors import NotRelevant, OutOfRange, UnsupportedRegime
from .fronthaul import MsgKey
from .interference import desired_messages, interfering_messages
from .topology import Topology, index_of

Monomial = frozenset  # of (ChannelSymbol, positive exponent) pairs

UNIT: Monomial = frozenset()


@dataclass(frozen=True)
class SubspaceLabel:
    """Identity of one received subspace at a user.

    Desired signals carry the sending EN so signals of one group arriving
    over different edges stay separated; the r aligned interference
    signals of a group share the bare group label.
    """

    kind: str
    group: object
    en: Optional[int] = None


def group_lookup(groups: Sequence[AlignmentGroup]) -> dict[MsgKey, int]:
    index: dict[MsgKey, int] = {}
    for grp in groups:
        for key in grp.signals:
            index[key] = grp.g
    return index


def received_label(
    groups: Sequence[AlignmentGroup],
    topology: Topology,
    t,
    k: int,
    message: MsgKey,
) -> SubspaceLabel:
    """Classify one message at user k and name its received subspace."""
    i, S = message
    if i not in topology.user_ens(k):
        raise NotRelevant(f"EN {i} does not reach user {k}")
    rank = index_of(topology, i, k)
    index = group_lookup(groups)
    g = index.get(message)
    if rank in S:
        if g is None:
            # No alignment needed (t = L-1): each signal rides alone.
            return SubspaceLabel(kind="desired", group=("solo", i, S), en=i)
        return SubspaceLabel(kind="desired", group=g, en=i)
    if g is None:
        raise NotRelevant(f"interfering message {message} belongs to no group")
    return SubspaceLabel(kind="interference", group=g)


def subspace_census(
    groups: Sequence[AlignmentGroup], topology: Topology, t, k: int
) -> tuple[int, int]:
    """Count distinct desired and interference subspaces at user k.

    The counts come from the labels themselves, not from the closed-form
    expressions they are tested against.
    """
    desired_labels = {
        received_label(groups, topology, t, k, m)
        for m in desired_messages(topology, t, k)
    }
    interference_labels = {
        received_label(groups, topology, t, k, m)
        for m in interfering_messages(topology, t, k)
    }
    return len(desired_labels), len(interference_labels)


def dof_per_user(H: int, r: int, t) -> Fraction:
    """Per-user degrees of freedom: desired subspaces over all subspaces."""
    if int(t) != t:
        raise OutOfRange(f"t={t} must be an integer")
    t = int(t)
    L = math.comb(H - 1, r - 1)
    if not (0 <= t <= L):
        raise OutOfRange(f"t={t} outside [0, L={L}]")
    if t == L:
        # Full caching: nothing is transmitted, the edge is trivially clean.
        return Fraction(1)
    if not (r == 2 or t >= L - 2):
        raise UnsupportedRegime(f"DoF claim unavailable for r={r}, t={t} < L-2")
    desired = r * math.comb(L - 1, t)
    return Fraction(desired, desired + math.comb(L, t + 1) - math.comb(L - 1, t))


def directions(group: AlignmentGroup, n: int) -> set[Monomial]:
    """Degree-n direction set: exponents 0..n over the group basis."""
    out: set[Monomial] = set()
    basis = group.basis
    for exps in product(range(n + 1), repeat=len(basis)):
        out.add(frozenset((s, e) for s, e in zip(basis, exps) if e))
    return out


def shift(monomial: Monomial, symbol: ChannelSymbol) -> Monomial:
    exps = dict(monomial)
    exps[symbol] = exps.get(symbol, 0) + 1
    return frozenset(exps.items())


def shifted_directions_contained(group: AlignmentGroup, symbol: ChannelSymbol, n: int) -> bool:
    """Whether symbol * (degree-n directions) lies inside the degree-(n+1) set."""
    target = directions(group, n + 1)
    return all(shift(m, symbol) in target for m in directions(group, n))


def verify_alignment_containment(
    group: AlignmentGroup, topology: Topology, k: int, n: int
) -> bool:
    """Containment over all of user k's channel symbols.

    True exactly when every edge symbol of k belongs to the group basis,
    which holds for covered users; a symbol outside the basis introduces a
    fresh variable and the check fails.
    """
    return all(
        shifted_directions_contained(group, ChannelSymbol(k, i), n)
        for i in topology.user_ens(k)
    )


def received_monomials(
    groups: Sequence[AlignmentGroup], topology: Topology, t, k: int, n: int
) -> set[Monomial]:
    """All formal monomials arriving at user k at direction degree n."""
    by_group = {grp.g: grp for grp in groups}
    index = group_lookup(groups)
    out: set[Monomial] = set()
    for message in desired_messages(topology, t, k) | interfering_messages(topology, t, k):
        i, _ = message
        symbol = ChannelSymbol(k, i)
        g = index.get(message)
        base = directions(by_group[g], n) if g is not None else {UNIT}
        out.update(shift(m, symbol) for m in base)
    return out


def evaluation_rank(
    monomials: Sequence[Monomial], gains_rows: Sequence[dict[ChannelSymbol, float]]
) -> int:
    """Numeric rank of the (draws x monomials) evaluation matrix.

    Columns are scaled to unit maximum before thresholding singular values
    at 1e-9 of the largest one.
    """
    mat = np.empty((len(gains_rows), len(monomials)))
    for row, gains in enumerate(gains_rows):
        for col, mono in enumerate(monomials):
            value = 1.0
            for symbol, exp in mono:
                value *= gains[symbol] ** exp
            mat[row, col] = value
    scale = np.abs(mat).max(axis=0)
    scale[scale == 0] = 1.0
    sv = np.linalg.svd(mat / scale, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int((sv > 1e-9 * sv[0]).sum())


@dataclass
class SpotcheckReport:
    user: int
    degree: int
    monomial_count: int
    rank: int
    full_rank: bool
    draws: int
    seed: Optional[int]

    def as_dict(self) -> dict:
        return {
            "user": self.user,
            "degree": self.degree,
            "monomial_count": self.monomial_count,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "draws": self.draws,
            "seed": self.seed,
        }


def numeric_rank_spotcheck(
    groups: Sequence[AlignmentGroup],
    topology: Topology,
    t,
    k: int,
    n: int,
    seed: int = 0,
    draws: Optional[int] = None,
    gains_rows: Optional[Sequence[dict[ChannelSymbol, float]]] = None,
) -> SpotcheckReport:
    """Evaluate all received monomials at random channel draws.

    Gains are drawn i.i.d. uniform on [1, 2] (bounded away from zero).
    For generic draws the evaluation rank equals the number of distinct
    formal monomials; a deliberate degenerate gains_rows override lets
    callers confirm that deficiency is detected.
    """
    monomials = sorted(
        received_monomials(groups, topology, t, k, n),
        key=lambda m: sorted((s.k, s.i, e) for s, e in m),
    )
    count = len(monomials)
    symbols = sorted(
        {s for m in monomials for s, _ in m} | {ChannelSymbol(k, i) for i in topology.user_ens(k)}
    )
    drew_gains = gains_rows is None
    if gains_rows is None:
        if draws is None:
            draws = count + 8
        if draws < count:
            raise OutOfRange(f"need draws >= {count} monomials, got {draws}")
        rng = np.random.default_rng(seed)
        gains_rows = [
            {s: float(v) for s, v in zip(symbols, rng.uniform(1.0, 2.0, len(symbols)))}
            for _ in range(draws)
        ]
    rank = evaluation_rank(monomials, gains_rows)
    return SpotcheckReport(
        user=k,
        degree=n,
        monomial_count=count,
        rank=rank,
        full_rank=rank == count,
        draws=len(gains_rows),
        seed=seed if drew_gains else None,
    )


def build_verification_report(
    groups: Sequence[AlignmentGroup],
    topology: Topology,
    t,
    degree: int = 1,
    seed: int = 0,
    spotcheck_users: Sequence[int] = (),
) -> dict:
    """Per-user census, containment results, and optional diagnostic ranks."""
    census = {}
    for k in range(1, topology.K + 1):
        desired, interference = subspace_census(groups, topology, t, k)
        total = desired + interference
        census[k] = {
            "desired": desired,
            "interference": interference,
            "dof": str(Fraction(desired, total)) if total else "1",
        }
    containment = {
        grp.g: all(
            verify_alignment_containment(grp, topology, k, degree)
            for k in grp.covered_users
        )
        for grp in groups
    }
    report = {
        "census": census,
        "containment_degree": degree,
        "containment": containment,
        "spotchecks": {},
    }
    for k in spotcheck_users:
        report["spotchecks"][k] = numeric_rank_spotcheck(
            groups, topology, t, k, degree, seed=seed
        ).as_dict()
    return report
