"""Alignment groups for the edge delivery phase.

A group bundles signals from pairwise-distinct ENs that are transmitted
along one shared set of directions, so that wherever all of them land as
interference they collapse into a single received subspace.  Each group g
carries three rows of data: its signals (the data row), the users covered
by it (where the collapse happens), and the channel symbols of those users
(the basis generating the shared directions).

Two constructions are implemented:

* r = 2, 1 <= t <= L-2.  For every (L-t)-subset E of ENs, take from each
  i in E the signal X_i^S whose subset S excludes exactly the ranks of the
  users {i, j}, j in E minus i.  That signal interferes precisely at those
  users, so the group covers every pair-user inside E.  The E-subsets
  partition all H*C(L, t+1) messages into C(H, t+1) groups.

* any r, t = L-2.  Each user k gets one group holding, per serving EN i,
  the single signal whose subset misses k's rank; the group covers {k}
  alone and the K groups again partition all messages.

The greedy variant walks users and their interference-matrix rows in
order, seeds a group from the first unconsumed signal, and closes it up by
intersecting actual interference sets.  It must emit the same group sets
as the closed form; it is kept as an independent cross-check.

t = L-1 needs no alignment (no interference) and yields the empty list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .errors import NonIntegerT, OutOfRange, UnsupportedRegime
from .fronthaul import MsgKey, message_keys
from .interference import (
    desired_messages,
    interfered_users,
    interference_matrix,
    interfering_count_per_en,
    interfering_messages,
)
from .topology import Topology, index_of


class ChannelSymbol(NamedTuple):
    """Formal channel gain between user k and EN i (an edge of the topology)."""

    k: int
    i: int

    def __str__(self) -> str:
        return f"h_{{{self.k},{self.i}}}"


@dataclass(frozen=True)
class AlignmentGroup:
    """One aligned bundle: data row, covered users, channel-symbol basis."""

    g: int
    signals: tuple[MsgKey, ...]
    covered_users: tuple[int, ...]
    basis: tuple[ChannelSymbol, ...]

    @property
    def signal_set(self) -> frozenset[MsgKey]:
        return frozenset(self.signals)

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "signals": [[i, list(S)] for (i, S) in self.signals],
            "covered_users": list(self.covered_users),
            "basis": [[s.k, s.i] for s in self.basis],
        }


def group_size(r: int, L: int, t: int) -> int:
    return r + L - t - 2


def _as_int_t(t) -> int:
    if int(t) != t:
        raise NonIntegerT(f"t={t} must be an integer for group construction")
    return int(t)


def _check_regime(r: int, L: int, t: int) -> None:
    if not (0 <= t <= L):
        raise OutOfRange(f"t={t} outside [0, L={L}]")
    if t >= L - 1:
        return
    if r == 2 and t >= 1:
        return
    if t == L - 2:
        return
    raise UnsupportedRegime(
        f"no alignment construction for r={r}, t={t} (need r=2 with t>=1, or t>=L-2)"
    )


def _basis_for(topology: Topology, covered: tuple[int, ...]) -> tuple[ChannelSymbol, ...]:
    return tuple(
        ChannelSymbol(k, i) for k in covered for i in topology.user_ens(k)
    )


def _group_for_en_subset(topology: Topology, t: int, E: tuple[int, ...]) -> tuple:
    """Signals and covered users of the r=2 group indexed by EN subset E."""
    L = topology.L
    full = set(range(1, L + 1))
    signals = []
    for i in E:
        ranks = {
            index_of(topology, i, topology.user_of_subset((i, j)))
            for j in E
            if j != i
        }
        signals.append((i, tuple(sorted(full - ranks))))
    covered = tuple(sorted(topology.user_of_subset(pair) for pair in combinations(E, 2)))
    return tuple(signals), covered


def _group_for_user(topology: Topology, k: int) -> tuple:
    """Signals of the t = L-2 group covering user k alone."""
    L = topology.L
    full = set(range(1, L + 1))
    signals = tuple(
        (i, tuple(sorted(full - {index_of(topology, i, k)})))
        for i in topology.user_ens(k)
    )
    return signals, (k,)


def build_groups(topology: Topology, t) -> list[AlignmentGroup]:
    """Normative construction: closed-form groups in deterministic order.

    Order is lexicographic in the EN subset E for r=2, and user id order
    for the t = L-2 construction.
    """
    t = _as_int_t(t)
    r, L, H = topology.r, topology.L, topology.H
    _check_regime(r, L, t)
    if t >= L - 1:
        return []
    groups = []
    if r == 2:
        for g, E in enumerate(combinations(range(1, H + 1), L - t), start=1):
            signals, covered = _group_for_en_subset(topology, t, E)
            groups.append(
                AlignmentGroup(
                    g=g,
                    signals=signals,
                    covered_users=covered,
                    basis=_basis_for(topology, covered),
                )
            )
    else:
        for k in range(1, topology.K + 1):
            signals, covered = _group_for_user(topology, k)
            groups.append(
                AlignmentGroup(
                    g=k,
                    signals=signals,
                    covered_users=covered,
                    basis=_basis_for(topology, covered),
                )
            )
    return groups


def build_groups_greedy(topology: Topology, t) -> list[AlignmentGroup]:
    """Cross-check variant: seed groups from interference-matrix rows.

    Users are processed in ascending order and their interference rows in
    S-ascending order.  A fresh signal seeds a group; its companions are
    found by intersecting the observed interference sets of the users the
    seed disturbs, without assuming the closed form.
    """
    t = _as_int_t(t)
    r, L = topology.r, topology.L
    _check_regime(r, L, t)
    if t >= L - 1:
        return []
    interference_at = {
        k: interfering_messages(topology, t, k) for k in range(1, topology.K + 1)
    }
    consumed: set[MsgKey] = set()
    groups: list[AlignmentGroup] = []
    for k in range(1, topology.K + 1):
        for row in interference_matrix(topology, t, k).rows():
            fresh = [key for key in row if key not in consumed]
            if not fresh:
                continue
            if t == L - 2:
                signals = tuple(sorted(row))
                covered: tuple[int, ...] = (k,)
            else:
                signals, covered = _expand_pair_group(
                    topology, t, fresh[0], interference_at
                )
            consumed.update(signals)
            groups.append(
                AlignmentGroup(
                    g=len(groups) + 1,
                    signals=signals,
                    covered_users=covered,
                    basis=_basis_for(topology, covered),
                )
            )
    return groups


def _expand_pair_group(
    topology: Topology, t: int, seed: MsgKey, interference_at: dict[int, set[MsgKey]]
) -> tuple:
    """Close up an r=2 group around one seed signal.

    The seed from EN a disturbs L-t-1 users; their partner ENs together
    with a form the EN set E.  For every other EN c in E the group member
    is the unique signal of EN c interfering at all pair-users {c, e},
    e in E minus c.
    """
    a, _ = seed
    victims = interfered_users(topology, t, seed)
    partners = []
    for v in victims:
        (partner,) = [i for i in topology.user_ens(v) if i != a]
        partners.append(partner)
    E = tuple(sorted({a, *partners}))
    signals = []
    for c in E:
        mates = [topology.user_of_subset((c, e)) for e in E if e != c]
        candidates = set.intersection(
            *({key for key in interference_at[m] if key[0] == c} for m in mates)
        )
        if len(candidates) != 1:
            raise UnsupportedRegime(
                f"group expansion ambiguous at EN {c} for seed {seed}"
            )
        signals.append(candidates.pop())
    covered = tuple(sorted(topology.user_of_subset(pair) for pair in combinations(E, 2)))
    return tuple(sorted(signals)), covered


@dataclass
class GroupCoverReport:
    """Audit of the partition and per-group/per-user alignment invariants."""

    ok: bool
    violations: list[str]
    group_count: int
    message_count: int
    per_user_cover: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": self.violations,
            "group_count": self.group_count,
            "message_count": self.message_count,
            "per_user_cover": self.per_user_cover,
        }


def verify_group_cover(groups: list[AlignmentGroup], topology: Topology, t) -> GroupCoverReport:
    """Check every AlignmentGroup invariant; violations are reported, not raised."""
    t = _as_int_t(t)
    r, L = topology.r, topology.L
    violations: list[str] = []
    all_keys = message_keys(topology, t)
    expected_size = group_size(r, L, t)
    desired_at = {k: desired_messages(topology, t, k) for k in range(1, topology.K + 1)}
    interference_at = {
        k: interfering_messages(topology, t, k) for k in range(1, topology.K + 1)
    }

    seen: dict[MsgKey, int] = {}
    for grp in groups:
        for key in grp.signals:
            if key in seen:
                violations.append(f"signal {key} in groups {seen[key]} and {grp.g}")
            seen[key] = grp.g
    for key in all_keys:
        if key not in seen and t <= L - 2:
            violations.append(f"signal {key} not covered by any group")

    for grp in groups:
        ens = [i for (i, _) in grp.signals]
        if len(set(ens)) != len(ens):
            violations.append(f"group {grp.g}: signals share an EN")
        if len(grp.signals) != expected_size:
            violations.append(
                f"group {grp.g}: size {len(grp.signals)} != {expected_size}"
            )
        sset = grp.signal_set
        computed_covered = tuple(
            sorted(
                k
                for k in range(1, topology.K + 1)
                if len(sset & interference_at[k]) == r
            )
        )
        if computed_covered != grp.covered_users:
            violations.append(
                f"group {grp.g}: covered users {grp.covered_users} != computed {computed_covered}"
            )
        if len(grp.covered_users) != math.comb(expected_size, r):
            violations.append(
                f"group {grp.g}: covered count {len(grp.covered_users)} != C({expected_size},{r})"
            )
        expected_basis = _basis_for(topology, grp.covered_users)
        if set(grp.basis) != set(expected_basis) or len(grp.basis) != len(expected_basis):
            violations.append(f"group {grp.g}: basis mismatch")
        for k in grp.covered_users:
            hit = sset & desired_at[k]
            if hit:
                violations.append(
                    f"group {grp.g}: covered user {k} desires {sorted(hit)}"
                )

    per_user_cover = {k: 0 for k in range(1, topology.K + 1)}
    for grp in groups:
        for k in grp.covered_users:
            per_user_cover[k] += 1
    expected_cover = interfering_count_per_en(L, t) if t <= L - 2 else 0
    for k, count in per_user_cover.items():
        if count != expected_cover:
            violations.append(f"user {k} covered by {count} groups, expected {expected_cover}")

    for grp in groups:
        sset = grp.signal_set
        for k in range(1, topology.K + 1):
            n_int = len(sset & interference_at[k])
            n_des = len(sset & desired_at[k])
            if n_int not in (0, r):
                violations.append(
                    f"group {grp.g}, user {k}: {n_int} interfering signals (want 0 or {r})"
                )
            if n_int and n_des:
                violations.append(
                    f"group {grp.g}, user {k}: mixes desired and interfering signals"
                )
            if r == 2 and n_des > 1:
                # Only provable for pair connectivity; wider t=L-2 groups may
                # legitimately serve several desired signals to one outsider.
                violations.append(
                    f"group {grp.g}, user {k}: {n_des} desired signals in one group"
                )

    return GroupCoverReport(
        ok=not violations,
        violations=violations,
        group_count=len(groups),
        message_count=len(all_keys),
        per_user_cover=per_user_cover,
    )
