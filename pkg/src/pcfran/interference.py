"""Per-user message classification.

Among the C(L, t+1) messages each serving EN transmits, a user wants the
ones whose subset S contains its rank at that EN; the rest land as
interference.  The interference matrix collects the interfering ids in r
columns (serving ENs, ascending) of I = C(L,t+1) - C(L-1,t) rows each
(S ascending), which is the shape the alignment construction consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import OutOfRange
from .fronthaul import MsgKey
from .topology import Topology, index_of


def interfering_count_per_en(L: int, t: int) -> int:
    return math.comb(L, t + 1) - math.comb(L - 1, t)


@dataclass(frozen=True)
class InterferenceMatrix:
    """Interfering message ids at user k: one column per serving EN."""

    k: int
    ens: tuple[int, ...]
    columns: tuple[tuple[MsgKey, ...], ...]

    @property
    def I(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def rows(self) -> list[tuple[MsgKey, ...]]:
        return [tuple(col[j] for col in self.columns) for j in range(self.I)]

    def as_dict(self) -> dict:
        return {
            "user": self.k,
            "ens": list(self.ens),
            "columns": [[[i, list(S)] for (i, S) in col] for col in self.columns],
        }


def _check_t(L: int, t) -> int:
    if int(t) != t:
        raise OutOfRange(f"t={t} must be an integer here")
    t = int(t)
    if not (0 <= t <= L - 1):
        raise OutOfRange(f"t={t} must lie in [0, L-1={L - 1}] for delivery analysis")
    return t


def desired_messages(topology: Topology, t, k: int) -> set[MsgKey]:
    """Message ids user k wants: serving EN and rank contained in S."""
    t = _check_t(topology.L, t)
    L = topology.L
    out: set[MsgKey] = set()
    for i in topology.user_ens(k):
        rank = index_of(topology, i, k)
        for S in combinations(range(1, L + 1), t + 1):
            if rank in S:
                out.add((i, S))
    return out


def interfering_messages(topology: Topology, t, k: int) -> set[MsgKey]:
    """Message ids from serving ENs whose subset misses k's rank."""
    t = _check_t(topology.L, t)
    L = topology.L
    out: set[MsgKey] = set()
    for i in topology.user_ens(k):
        rank = index_of(topology, i, k)
        for S in combinations(range(1, L + 1), t + 1):
            if rank not in S:
                out.add((i, S))
    return out


def interference_matrix(topology: Topology, t, k: int) -> InterferenceMatrix:
    t = _check_t(topology.L, t)
    L = topology.L
    ens = topology.user_ens(k)
    columns = []
    for i in ens:
        rank = index_of(topology, i, k)
        col = tuple(
            (i, S)
            for S in combinations(range(1, L + 1), t + 1)
            if rank not in S
        )
        columns.append(col)
    return InterferenceMatrix(k=k, ens=ens, columns=tuple(columns))


def interfered_users(topology: Topology, t, key: MsgKey) -> tuple[int, ...]:
    """Users served by the sending EN whose rank is outside S (ascending)."""
    i, S = key
    s_set = set(S)
    return tuple(
        k for k in topology.en_users(i) if index_of(topology, i, k) not in s_set
    )
