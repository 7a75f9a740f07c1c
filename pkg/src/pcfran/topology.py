"""Bipartite EN-user topology of a partially connected fog RAN.

Each user is wired to a distinct r-subset of the H edge nodes, which makes
the edge network a combination network with K = C(H, r) users where every
EN serves L = C(H-1, r-1) of them.  Users are numbered by the lexicographic
order of their EN subsets, and all ids (ENs, users, per-EN ranks) are
1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import InvalidConnectivity, OutOfRange


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class NetworkParams:
    """Scenario parameters.

    H is the number of edge nodes, r the receiver connectivity (ENs per
    user), N the number of library files (defaults to K so every user can
    request a distinct file), file_size_bytes the file size F, rho the
    fronthaul rate, and M the per-user cache size in file units.  The
    normalized cache capacity t = M*L/N is kept as an exact rational.
    """

    H: int
    r: int
    N: Optional[int] = None
    file_size_bytes: int = 4096
    rho: Fraction = Fraction(1)
    M: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not (1 <= self.r < self.H):
            raise InvalidConnectivity(
                f"need 1 <= r < H, got r={self.r}, H={self.H}"
            )
        object.__setattr__(self, "rho", _as_fraction(self.rho))
        object.__setattr__(self, "M", _as_fraction(self.M))
        if self.N is None:
            object.__setattr__(self, "N", self.K)
        if self.N < self.K:
            raise OutOfRange(f"library must hold N >= K files, got N={self.N}, K={self.K}")
        if self.file_size_bytes < 1:
            raise OutOfRange("file_size_bytes must be positive")
        if self.rho < 0:
            raise OutOfRange("fronthaul rate rho must be nonnegative")
        if not (0 <= self.M <= self.N):
            raise OutOfRange(f"cache size M must lie in [0, N], got M={self.M}")

    @property
    def K(self) -> int:
        return math.comb(self.H, self.r)

    @property
    def L(self) -> int:
        return math.comb(self.H - 1, self.r - 1)

    @property
    def t(self) -> Fraction:
        return self.M * self.L / self.N

    def with_cache_parameter(self, t) -> "NetworkParams":
        """Return a copy whose M realizes the given normalized capacity t."""
        t = _as_fraction(t)
        if not (0 <= t <= self.L):
            raise OutOfRange(f"t must lie in [0, L={self.L}], got {t}")
        return NetworkParams(
            H=self.H,
            r=self.r,
            N=self.N,
            file_size_bytes=self.file_size_bytes,
            rho=self.rho,
            M=t * self.N / self.L,
        )


@dataclass(frozen=True)
class Topology:
    """Immutable EN-user incidence plus the per-EN rank lookup.

    users[k-1] is the EN subset of user k (lexicographically increasing),
    served_users[i] the ordered user list of EN i, serving_ens[k] the
    ordered EN list of user k.
    """

    H: int
    r: int
    users: tuple[tuple[int, ...], ...]
    served_users: dict[int, tuple[int, ...]]
    serving_ens: dict[int, tuple[int, ...]]
    user_ids: dict[tuple[int, ...], int]
    ranks: dict[tuple[int, int], int]

    @property
    def K(self) -> int:
        return len(self.users)

    @property
    def L(self) -> int:
        return math.comb(self.H - 1, self.r - 1)

    def en_users(self, i: int) -> tuple[int, ...]:
        if i not in self.served_users:
            raise OutOfRange(f"EN id {i} not in [1, {self.H}]")
        return self.served_users[i]

    def user_ens(self, k: int) -> tuple[int, ...]:
        if k not in self.serving_ens:
            raise OutOfRange(f"user id {k} not in [1, {self.K}]")
        return self.serving_ens[k]

    def user_of_subset(self, subset) -> int:
        return self.user_ids[tuple(sorted(subset))]

    def to_json_dict(self) -> dict:
        return {
            "H": self.H,
            "r": self.r,
            "K": self.K,
            "L": self.L,
            "users": [list(u) for u in self.users],
        }


def build_topology(params: NetworkParams) -> Topology:
    """Construct the lexicographic combination-network topology."""
    H, r = params.H, params.r
    users = tuple(combinations(range(1, H + 1), r))
    user_ids = {subset: k for k, subset in enumerate(users, start=1)}
    served: dict[int, list[int]] = {i: [] for i in range(1, H + 1)}
    for k, subset in enumerate(users, start=1):
        for i in subset:
            served[i].append(k)
    served_users = {i: tuple(ks) for i, ks in served.items()}
    serving_ens = {k: subset for k, subset in enumerate(users, start=1)}
    ranks = {
        (i, k): pos
        for i, ks in served_users.items()
        for pos, k in enumerate(ks, start=1)
    }
    return Topology(
        H=H,
        r=r,
        users=users,
        served_users=served_users,
        serving_ens=serving_ens,
        user_ids=user_ids,
        ranks=ranks,
    )


def index_of(topology: Topology, i: int, k: int) -> Optional[int]:
    """1-based rank of user k among EN i's served users, or None if unserved."""
    if not (1 <= i <= topology.H):
        raise OutOfRange(f"EN id {i} not in [1, {topology.H}]")
    if not (1 <= k <= topology.K):
        raise OutOfRange(f"user id {k} not in [1, {topology.K}]")
    return topology.ranks.get((i, k))
