import math
from fractions import Fraction
from itertools import combinations

import pytest

from pcfran import reference_tables as ref
from pcfran.errors import NonIntegerT, OutOfRange, UnboundedNdt
from pcfran.fronthaul import (
    DemandVector,
    build_fronthaul,
    fronthaul_load,
    fronthaul_ndt,
    save_fronthaul,
)
from pcfran.gf256 import xor_bytes
from pcfran.placement import FileLibrary, PieceId, build_placement, cache_contents
from pcfran.topology import NetworkParams, build_topology, index_of

IDENTITY_DEMAND = DemandVector(tuple(range(1, 11)))


@pytest.fixture(scope="module")
def example_placement(example_topology):
    library = FileLibrary.random(10, 1024, seed=21)
    return build_placement(library, example_topology, 1)


@pytest.fixture(scope="module")
def example_messages(example_placement):
    return build_fronthaul(example_placement, IDENTITY_DEMAND)


def test_message_count_and_order(example_messages):
    assert len(example_messages) == 5 * math.comb(4, 2)
    keys = [m.key for m in example_messages]
    assert keys == sorted(keys)
    for m in example_messages:
        assert len(m.constituents) == 2  # t + 1


def test_en1_first_message_payload(example_placement, example_messages):
    # X_1^{1,2} = piece (1,1,{2}) xor piece (2,1,{1})
    msg = example_messages[0]
    assert msg.key == (1, (1, 2))
    assert msg.constituents == (PieceId(1, 1, (2,)), PieceId(2, 1, (1,)))
    expect = xor_bytes(
        example_placement.pieces[PieceId(1, 1, (2,))],
        example_placement.pieces[PieceId(2, 1, (1,))],
    )
    assert msg.payload == expect


def test_en4_message_follows_rule_not_printed_typo(example_messages):
    # Generation rule forces chunk superscript 4 at EN 4; the printed table
    # shows 1 there (documented erratum).
    by_key = {m.key: m for m in example_messages}
    msg = by_key[(4, (2, 3))]
    assert msg.constituents == (PieceId(6, 4, (3,)), PieceId(8, 4, (2,)))


def test_full_table_matches_reference_modulo_errata(example_messages):
    by_key = {m.key: tuple((p.n, p.i, p.T) for p in m.constituents) for m in example_messages}
    errata_keys = {e["key"]: e for e in ref.FRONTHAUL_ERRATA}
    mismatches = []
    for key, printed in ref.PRINTED_FRONTHAUL_TABLE.items():
        if by_key[key] != printed:
            mismatches.append(key)
            erratum = errata_keys.get(key)
            assert erratum is not None, f"undocumented mismatch at {key}"
            corrected = list(printed)
            corrected[erratum["position"]] = erratum["corrected"]
            assert by_key[key] == tuple(corrected)
    assert sorted(mismatches) == sorted(errata_keys)


def test_one_message_per_en_at_t_Lminus1(example_topology):
    library = FileLibrary.random(10, 1024, seed=22)
    placement = build_placement(library, example_topology, 3)
    messages = build_fronthaul(placement, IDENTITY_DEMAND)
    assert len(messages) == 5  # C(L, L) = 1 subset per EN
    assert [m.key for m in messages] == [(i, (1, 2, 3, 4)) for i in range(1, 6)]


def test_load_example_value(example_params):
    assert fronthaul_load(example_params.with_cache_parameter(1)) == Fraction(3, 4)


def test_load_closed_form_grid():
    # Binomial-ratio definition must simplify to (L-t)/(r (t+1)).
    for H, r in [(4, 2), (5, 2), (7, 2), (5, 3), (5, 4)]:
        params = NetworkParams(H=H, r=r)
        L = params.L
        for t in range(L + 1):
            p = params.with_cache_parameter(t)
            assert fronthaul_load(p) == Fraction(L - t, r * (t + 1))


def test_load_full_cache_is_zero():
    p = NetworkParams(H=5, r=2, N=10).with_cache_parameter(4)
    assert fronthaul_load(p) == 0
    assert fronthaul_ndt(p) == 0


def test_load_counted_from_generated_bytes():
    # Oracle: R1 must equal actual bytes sent per EN over file size.
    params = NetworkParams(H=7, r=2, N=21, file_size_bytes=2 * math.comb(6, 2) * 4)
    topo = build_topology(params)
    library = FileLibrary.random(21, params.file_size_bytes, seed=3)
    placement = build_placement(library, topo, 2)
    messages = build_fronthaul(placement, DemandVector(tuple(range(1, 22))))
    per_en = {}
    for m in messages:
        per_en[m.i] = per_en.get(m.i, 0) + len(m.payload)
    assert len(set(per_en.values())) == 1
    counted = Fraction(per_en[1], placement.padded_file_size)
    assert counted == Fraction(2, 3)
    assert counted == fronthaul_load(params.with_cache_parameter(2))


def test_ndt_requires_positive_rate(example_params):
    p = NetworkParams(H=5, r=2, N=10, rho=0, M=example_params.M)
    with pytest.raises(UnboundedNdt):
        fronthaul_ndt(p)


def test_ndt_example_values():
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
        p = NetworkParams(H=5, r=2, N=10, rho=rho).with_cache_parameter(1)
        assert fronthaul_ndt(p) == Fraction(3, 4) / rho


def test_noninteger_t_rejected():
    p = NetworkParams(H=5, r=2, N=10, M=Fraction(1, 3))
    with pytest.raises(NonIntegerT):
        fronthaul_load(p)


def test_each_uncached_piece_in_exactly_one_message(example_topology, example_placement, example_messages):
    # Piece (d_k, i, T) with Index(i,k) outside T appears exactly once among
    # EN i's messages, namely at S = T + {Index(i,k)}.
    topo = example_topology
    appearances = {}
    for m in example_messages:
        for pid in m.constituents:
            appearances.setdefault(pid, []).append(m.key)
    for k in range(1, 11):
        n = IDENTITY_DEMAND.for_user(k)
        for i in topo.user_ens(k):
            rank = index_of(topo, i, k)
            for T in combinations(range(1, 5), 1):
                if rank in T:
                    continue
                pid = PieceId(n, i, T)
                assert appearances[pid] == [(i, tuple(sorted({*T, rank})))]


def test_cache_cancellation_closure(example_topology, example_placement, example_messages):
    # Every constituent except user k's own is cached at k.
    topo = example_topology
    for k in range(1, 11):
        cache = cache_contents(example_placement, k)
        rank_by_en = {i: index_of(topo, i, k) for i in topo.user_ens(k)}
        for m in example_messages:
            if m.i not in rank_by_en or rank_by_en[m.i] not in m.S:
                continue
            own = PieceId(IDENTITY_DEMAND.for_user(k), m.i,
                          tuple(sorted(set(m.S) - {rank_by_en[m.i]})))
            for pid in m.constituents:
                if pid != own:
                    assert pid in cache.pieces


def test_demand_validation():
    with pytest.raises(OutOfRange):
        DemandVector((1, 2)).validate(K=10, N=10)
    with pytest.raises(OutOfRange):
        DemandVector(tuple([11] * 10)).validate(K=10, N=10)


def test_dump_roundtrip(tmp_path, example_messages):
    path = save_fronthaul(example_messages, IDENTITY_DEMAND, tmp_path)
    import json

    doc = json.loads(path.read_text())
    assert len(doc["messages"]) == 30
    first = doc["messages"][0]
    assert (tmp_path / first["blob"]).read_bytes() == example_messages[0].payload
