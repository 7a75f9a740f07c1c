"""Cloud-to-EN coded delivery.

For each (t+1)-subset S of [L], EN i receives the XOR of the t+1 pieces
(d_k, i, S minus Index(i,k)) over the served users k whose rank lies in S.
Every user can strip all but its own constituent from such a message using
its cache, which is what makes the XOR useful.  Loads and NDTs are exact
rationals; nothing here is timed or floated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .errors import CacheMismatch, OutOfRange, UnboundedNdt
from .gf256 import xor_bytes
from .placement import Placement, PieceId, _require_integer_t
from .topology import NetworkParams, Topology, index_of

MsgKey = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class DemandVector:
    """One requested file index per user; worst case is all-distinct."""

    d: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(self.d))

    def validate(self, K: int, N: int) -> "DemandVector":
        if len(self.d) != K:
            raise OutOfRange(f"demand vector must have K={K} entries, got {len(self.d)}")
        for v in self.d:
            if not (1 <= v <= N):
                raise OutOfRange(f"demand {v} outside library [1, {N}]")
        return self

    def for_user(self, k: int) -> int:
        return self.d[k - 1]


@dataclass(frozen=True)
class FronthaulMessage:
    """One coded message: EN id, the (t+1)-subset S, XOR payload, audit list."""

    i: int
    S: tuple[int, ...]
    payload: bytes
    constituents: tuple[PieceId, ...]

    @property
    def key(self) -> MsgKey:
        return (self.i, self.S)


def message_keys(topology: Topology, t: int) -> list[MsgKey]:
    """All H*C(L, t+1) message ids, EN ascending then S lexicographic."""
    L = topology.L
    return [
        (i, S)
        for i in range(1, topology.H + 1)
        for S in combinations(range(1, L + 1), t + 1)
    ]


def message_constituents(
    topology: Topology, demand: DemandVector, i: int, S: tuple[int, ...]
) -> tuple[PieceId, ...]:
    s_set = set(S)
    out = []
    for k in topology.en_users(i):
        rank = index_of(topology, i, k)
        if rank in s_set:
            T = tuple(sorted(s_set - {rank}))
            out.append(PieceId(demand.for_user(k), i, T))
    return tuple(out)


def build_fronthaul(placement: Placement, demand: DemandVector) -> list[FronthaulMessage]:
    """Generate all fronthaul messages for the demand, in deterministic order."""
    topo = placement.topology
    t = _require_integer_t(placement.t)
    demand.validate(topo.K, placement.N)
    messages = []
    for i, S in message_keys(topo, t):
        constituents = message_constituents(topo, demand, i, S)
        payload = bytes(placement.piece_size)
        for pid in constituents:
            piece = placement.pieces.get(pid)
            if piece is None or len(piece) != placement.piece_size:
                raise CacheMismatch(f"placement store lacks piece {pid}")
            payload = xor_bytes(payload, piece)
        messages.append(FronthaulMessage(i=i, S=S, payload=payload, constituents=constituents))
    return messages


def fronthaul_load(params: NetworkParams) -> Fraction:
    """Per-EN traffic normalized by file size: C(L,t+1) / (r*C(L,t))."""
    t = _require_integer_t(params.t)
    L = params.L
    if t > L:
        raise OutOfRange(f"t={t} exceeds L={L}")
    return Fraction(math.comb(L, t + 1), params.r * math.comb(L, t))


def fronthaul_ndt(params: NetworkParams) -> Fraction:
    """Fronthaul delivery time R1/rho; zero-rate links with traffic are unbounded."""
    load = fronthaul_load(params)
    if load == 0:
        return Fraction(0)
    if params.rho == 0:
        raise UnboundedNdt("rho=0 with nonzero fronthaul traffic")
    return load / params.rho


def save_fronthaul(messages: Sequence[FronthaulMessage], demand: DemandVector, out_dir) -> Path:
    """Persist messages as a JSON index plus one payload blob per message."""
    out = Path(out_dir)
    blob_dir = out / "payloads"
    blob_dir.mkdir(parents=True, exist_ok=True)
    index = []
    for m in messages:
        s_part = "-".join(str(x) for x in m.S)
        rel = f"payloads/en{m.i:03d}_S{s_part}.bin"
        (out / rel).write_bytes(m.payload)
        index.append(
            {
                "i": m.i,
                "S": list(m.S),
                "constituents": [
                    {"n": p.n, "i": p.i, "T": list(p.T)} for p in m.constituents
                ],
                "blob": rel,
            }
        )
    doc = {"demand": list(demand.d), "messages": index}
    path = out / "fronthaul.json"
    path.write_text(json.dumps(doc, indent=1) + "\n")
    return path
