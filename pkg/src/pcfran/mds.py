"""Systematic (H, r) erasure code over GF(256).

A file is split into r equal subfiles and expanded into H coded chunks so
that any r of them reconstruct the file bit-exactly.  The generator is a
Vandermonde matrix normalized to systematic form: chunks 1..r are the plain
subfiles, and every r-row submatrix stays invertible because it is the
product of a Vandermonde submatrix (distinct evaluation points) with a
fixed invertible matrix.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .errors import IndexOutOfRange, InsufficientChunks, SizeError
from .gf256 import gf_mul, gf_pow, mat_inv, mat_vec_bytes

MAX_CHUNKS = 255


@lru_cache(maxsize=None)
def generator_matrix(H: int, r: int) -> tuple[tuple[int, ...], ...]:
    """H x r systematic generator; row i yields coded chunk i+1."""
    if not (1 <= r <= H <= MAX_CHUNKS):
        raise SizeError(f"need 1 <= r <= H <= {MAX_CHUNKS}, got H={H}, r={r}")
    vander = [[gf_pow(x, j) for j in range(r)] for x in range(H)]
    top_inv = mat_inv([row[:] for row in vander[:r]])
    rows = []
    for i in range(H):
        row = []
        for j in range(r):
            acc = 0
            for m in range(r):
                a, b = vander[i][m], top_inv[m][j]
                if a and b:
                    acc ^= gf_mul(a, b)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mds_encode_file(data: bytes, H: int, r: int) -> list[bytes]:
    """Encode one file into H coded chunks of len(data)/r bytes each.

    Chunks are returned in id order 1..H; the first r are the subfiles
    themselves (systematic form).  The input length must divide by r.
    """
    if len(data) % r:
        raise SizeError(f"file length {len(data)} not divisible by r={r}")
    gen = generator_matrix(H, r)
    size = len(data) // r
    subfiles = [data[j * size : (j + 1) * size] for j in range(r)]
    chunks = list(subfiles)
    for i in range(r, H):
        chunks.append(mat_vec_bytes([list(gen[i])], subfiles)[0])
    return chunks


def mds_decode(chunks: Mapping[int, bytes], H: int, r: int) -> bytes:
    """Rebuild the file from exactly r distinct chunks keyed by 1-based id."""
    ids = sorted(chunks)
    if len(ids) != r:
        raise InsufficientChunks(f"need exactly {r} distinct chunks, got {len(ids)}")
    for i in ids:
        if not (1 <= i <= H):
            raise IndexOutOfRange(f"chunk id {i} not in [1, {H}]")
    if ids == list(range(1, r + 1)):
        return b"".join(chunks[i] for i in ids)
    gen = generator_matrix(H, r)
    sub = [list(gen[i - 1]) for i in ids]
    inv = mat_inv(sub)
    subfiles = mat_vec_bytes(inv, [chunks[i] for i in ids])
    return b"".join(subfiles)
