"""Byte-oriented arithmetic over GF(256).

Log/antilog tables for the 0x11d primitive polynomial, plus the byte-string
helpers the erasure code is built on.  Scalar-times-bytestring goes through
a per-coefficient 256-entry translation table so the hot loops run in C.
"""

from __future__ import annotations

from functools import lru_cache

_PRIM = 0x11D

EXP = [0] * 512
LOG = [0] * 256
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= _PRIM
for _i in range(255, 512):
    EXP[_i] = EXP[_i - 255]
del _x, _i


def gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a] + LOG[b]]


def gf_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 in GF(256)")
    return EXP[255 - LOG[a]]


def gf_div(a: int, b: int) -> int:
    return gf_mul(a, gf_inv(b))


def gf_pow(a: int, e: int) -> int:
    if a == 0:
        return 0 if e else 1
    return EXP[(LOG[a] * e) % 255]


@lru_cache(maxsize=None)
def _mul_table(c: int) -> bytes:
    return bytes(gf_mul(c, b) for b in range(256))


def mul_bytes(c: int, data: bytes) -> bytes:
    """Scalar multiplication of a byte string by the field element c."""
    if c == 0:
        return bytes(len(data))
    if c == 1:
        return data
    return data.translate(_mul_table(c))


def xor_bytes(a: bytes, b: bytes) -> bytes:
    """Bytewise XOR of two equal-length strings (field addition)."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    n = len(a)
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(n, "big")


def mat_inv(matrix: list[list[int]]) -> list[list[int]]:
    """Invert a square matrix over GF(256) by Gauss-Jordan elimination."""
    n = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular over GF(256)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = gf_inv(aug[col][col])
        aug[col] = [gf_mul(inv_p, v) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v ^ gf_mul(factor, p) for v, p in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_vec_bytes(matrix: list[list[int]], vecs: list[bytes]) -> list[bytes]:
    """Apply a GF(256) matrix to a vector of equal-length byte strings."""
    out = []
    for row in matrix:
        acc = bytes(len(vecs[0]))
        for coeff, v in zip(row, vecs):
            if coeff:
                acc = xor_bytes(acc, mul_bytes(coeff, v))
        out.append(acc)
    return out
