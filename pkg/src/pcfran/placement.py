"""MDS-coded cache placement.

Every file is split into r subfiles, expanded into H coded chunks (one per
EN), and each chunk is subpacketized into C(L, t) pieces indexed by the
t-subsets of [L].  User k caches piece (n, i, T) exactly when EN i serves k
and k's rank at EN i lies in T; with t = M*L/N this fills the cache to M*F
bytes with equality.

Placement state is reproducible (seeded library) and can be persisted as a
JSON manifest plus raw piece blobs, so the placement phase can run long
before delivery.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from random import Random
from typing import Iterator, Optional

from .errors import CacheMismatch, NonIntegerT, OutOfRange, SizeError
from .mds import mds_encode_file
from .topology import NetworkParams, Topology, build_topology, index_of

MANIFEST_NAME = "placement.json"
BLOB_DIR = "blobs"


@dataclass(frozen=True)
class PieceId:
    """Address of one subpacketized piece: file n, chunk/EN i, t-subset T."""

    n: int
    i: int
    T: tuple[int, ...]

    def blob_name(self) -> str:
        t_part = "-".join(str(x) for x in self.T) if self.T else "0"
        return f"n{self.n:04d}_i{self.i:03d}_T{t_part}.bin"


@dataclass(frozen=True)
class PiecePayload:
    id: PieceId
    data: bytes


@dataclass
class FileLibrary:
    """N equal-length files, either seeded-pseudorandom or read from disk."""

    files: tuple[bytes, ...]
    origin: str
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        sizes = {len(f) for f in self.files}
        if len(sizes) > 1:
            raise SizeError(f"library files must share one length, got {sorted(sizes)}")

    @property
    def N(self) -> int:
        return len(self.files)

    @property
    def file_size(self) -> int:
        return len(self.files[0]) if self.files else 0

    @classmethod
    def random(cls, N: int, file_size: int, seed: int) -> "FileLibrary":
        rng = Random(seed)
        files = tuple(rng.randbytes(file_size) for _ in range(N))
        return cls(files=files, origin="seeded-pseudorandom", seed=seed)

    @classmethod
    def from_directory(cls, path, file_size: int, N: Optional[int] = None) -> "FileLibrary":
        """Ingest files (sorted by name), zero-padding each up to file_size."""
        paths = sorted(p for p in Path(path).iterdir() if p.is_file())
        if N is not None:
            paths = paths[:N]
        files = []
        for p in paths:
            data = p.read_bytes()
            if len(data) > file_size:
                raise SizeError(f"{p.name} exceeds file size {file_size}")
            files.append(data + bytes(file_size - len(data)))
        return cls(files=tuple(files), origin=str(path))


def subpacketize(chunk: bytes, L: int, t: int) -> dict[tuple[int, ...], bytes]:
    """Split a chunk into C(L, t) equal pieces keyed by t-subsets of [L].

    Subsets run in lexicographic order and their concatenation in that
    order is the chunk itself.
    """
    if not (0 <= t <= L):
        raise OutOfRange(f"t must lie in [0, {L}], got {t}")
    count = math.comb(L, t)
    if len(chunk) % count:
        raise SizeError(f"chunk length {len(chunk)} not divisible by C({L},{t})={count}")
    size = len(chunk) // count
    return {
        T: chunk[j * size : (j + 1) * size]
        for j, T in enumerate(combinations(range(1, L + 1), t))
    }


@dataclass
class Placement:
    """All coded pieces held by the cloud, plus the sizing metadata.

    pieces maps every PieceId (N*H*C(L,t) of them) to its bytes.  The
    nominal file size may have been zero-padded up to the least multiple
    of r*C(L,t); decoders truncate back to file_size_bytes.
    """

    topology: Topology
    t: int
    file_size_bytes: int
    padded_file_size: int
    piece_size: int
    N: int
    seed: Optional[int]
    origin: str
    pieces: dict[PieceId, bytes]

    @property
    def L(self) -> int:
        return self.topology.L

    def chunk_pieces(self, n: int, i: int) -> dict[tuple[int, ...], bytes]:
        L = self.L
        return {
            T: self.pieces[PieceId(n, i, T)]
            for T in combinations(range(1, L + 1), self.t)
        }


@dataclass
class CacheContents:
    """The pieces user k holds after placement (the cache Z_k)."""

    k: int
    pieces: dict[PieceId, bytes]

    @property
    def total_bytes(self) -> int:
        return sum(len(v) for v in self.pieces.values())

    def payloads(self) -> Iterator[PiecePayload]:
        for pid, data in self.pieces.items():
            yield PiecePayload(pid, data)


def padded_size(file_size: int, r: int, L: int, t: int) -> int:
    unit = r * math.comb(L, t)
    return ((file_size + unit - 1) // unit) * unit


def _require_integer_t(t) -> int:
    if int(t) != t:
        raise NonIntegerT(f"t={t} is not an integer; apply memory sharing first")
    return int(t)


def build_placement(library: FileLibrary, topology: Topology, t) -> Placement:
    """Encode and subpacketize the whole library for the given integer t."""
    t = _require_integer_t(t)
    L = topology.L
    if not (0 <= t <= L):
        raise OutOfRange(f"t must lie in [0, L={L}], got {t}")
    H, r = topology.H, topology.r
    padded = padded_size(library.file_size, r, L, t)
    piece_size = padded // (r * math.comb(L, t))
    pieces: dict[PieceId, bytes] = {}
    for n, data in enumerate(library.files, start=1):
        chunks = mds_encode_file(data + bytes(padded - len(data)), H, r)
        for i, chunk in enumerate(chunks, start=1):
            for T, piece in subpacketize(chunk, L, t).items():
                pieces[PieceId(n, i, T)] = piece
    return Placement(
        topology=topology,
        t=t,
        file_size_bytes=library.file_size,
        padded_file_size=padded,
        piece_size=piece_size,
        N=library.N,
        seed=library.seed,
        origin=library.origin,
        pieces=pieces,
    )


def cache_contents(placement: Placement, k: int) -> CacheContents:
    """Fill user k's cache by the rank rule: keep (n, i, T) iff Index(i,k) in T."""
    topo = placement.topology
    held: dict[PieceId, bytes] = {}
    for i in topo.user_ens(k):
        rank = index_of(topo, i, k)
        for T in combinations(range(1, placement.L + 1), placement.t):
            if rank not in T:
                continue
            for n in range(1, placement.N + 1):
                pid = PieceId(n, i, T)
                data = placement.pieces.get(pid)
                if data is None or len(data) != placement.piece_size:
                    raise CacheMismatch(f"placement store lacks piece {pid}")
                held[pid] = data
    return CacheContents(k=k, pieces=held)


def place_caches(library: FileLibrary, topology: Topology, t) -> dict[int, CacheContents]:
    """Run placement and return every user's cache contents."""
    placement = build_placement(library, topology, t)
    return {k: cache_contents(placement, k) for k in range(1, topology.K + 1)}


def expected_pieces_per_user(N: int, r: int, L: int, t: int) -> int:
    return N * r * math.comb(L - 1, t - 1) if t >= 1 else 0


def save_placement(placement: Placement, out_dir) -> Path:
    """Persist the placement as placement.json plus raw blobs."""
    out = Path(out_dir)
    blob_dir = out / BLOB_DIR
    blob_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for pid in sorted(placement.pieces, key=lambda p: (p.n, p.i, p.T)):
        rel = f"{BLOB_DIR}/{pid.blob_name()}"
        (out / rel).write_bytes(placement.pieces[pid])
        entries.append({"n": pid.n, "i": pid.i, "T": list(pid.T), "blob": rel})
    manifest = {
        "params": {
            "H": placement.topology.H,
            "r": placement.topology.r,
            "N": placement.N,
            "file_size_bytes": placement.file_size_bytes,
        },
        "t": placement.t,
        "seed": placement.seed,
        "origin": placement.origin,
        "padded_file_size": placement.padded_file_size,
        "piece_size": placement.piece_size,
        "pieces": entries,
    }
    path = out / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=1) + "\n")
    return path


def load_placement(in_dir) -> Placement:
    """Load a persisted placement; missing manifest entries surface later
    as CacheMismatch, missing blob files as I/O errors."""
    root = Path(in_dir)
    manifest = json.loads((root / MANIFEST_NAME).read_text())
    params = manifest["params"]
    topo = build_topology(NetworkParams(H=params["H"], r=params["r"], N=params["N"]))
    pieces = {}
    for entry in manifest["pieces"]:
        pid = PieceId(entry["n"], entry["i"], tuple(entry["T"]))
        pieces[pid] = (root / entry["blob"]).read_bytes()
    return Placement(
        topology=topo,
        t=manifest["t"],
        file_size_bytes=params["file_size_bytes"],
        padded_file_size=manifest["padded_file_size"],
        piece_size=manifest["piece_size"],
        N=params["N"],
        seed=manifest.get("seed"),
        origin=manifest.get("origin", "unknown"),
        pieces=pieces,
    )
