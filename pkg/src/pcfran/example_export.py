"""Regeneration of the 5x10 reference scenario tables.

Rebuilds the cache-placement table, the fronthaul table (demand 1..10),
the per-user interference matrices, and the three alignment matrices from
the implementation, then diffs them against the printed reference data and
annotates each deviation.  The matrices are emitted in the printed row
order (the greedy builder's emission order) so the comparison reads row by
row.
"""

from __future__ import annotations

from itertools import combinations

from . import reference_tables as ref
from .alignment import build_groups_greedy
from .fronthaul import DemandVector, message_constituents, message_keys
from .interference import interference_matrix
from .topology import NetworkParams, Topology, build_topology, index_of

SCENARIO = NetworkParams(H=5, r=2, N=10)
SCENARIO_T = 1


def _fmt_subset(T) -> str:
    return "{" + ",".join(str(x) for x in T) + "}" if T else "{}"


def _fmt_piece(n, i, T) -> str:
    return f"f^{i}_{{{n},{_fmt_subset(T)}}}"


def _fmt_msg(i, S) -> str:
    return f"X_{i}^{_fmt_subset(S)}"


def _fmt_symbol(k, i) -> str:
    return f"h_{{{k},{i}}}"


def regenerate_cache_table(topology: Topology, t: int) -> dict[int, tuple]:
    """Per-user cached (chunk, T) pairs with the file index symbolic."""
    out = {}
    for k in range(1, topology.K + 1):
        pairs = []
        for i in topology.user_ens(k):
            rank = index_of(topology, i, k)
            for T in combinations(range(1, topology.L + 1), t):
                if rank in T:
                    pairs.append((i, T))
        out[k] = tuple(pairs)
    return out


def regenerate_fronthaul_table(topology: Topology, t: int) -> dict:
    demand = DemandVector(tuple(range(1, topology.K + 1)))
    table = {}
    for i, S in message_keys(topology, t):
        constituents = message_constituents(topology, demand, i, S)
        table[(i, S)] = tuple((p.n, p.i, p.T) for p in constituents)
    return table


def regenerate_interference_table(topology: Topology, t: int) -> dict:
    return {
        k: interference_matrix(topology, t, k).columns
        for k in range(1, topology.K + 1)
    }


def build_scenario_export() -> dict:
    """Everything the export command emits, as plain data."""
    topo = build_topology(SCENARIO)
    t = SCENARIO_T
    cache = regenerate_cache_table(topo, t)
    fronthaul = regenerate_fronthaul_table(topo, t)
    interference = regenerate_interference_table(topo, t)
    groups = build_groups_greedy(topo, t)

    errata = []
    for e in ref.FRONTHAUL_ERRATA:
        i, S = e["key"]
        errata.append(
            f"fronthaul {_fmt_msg(i, S)}: printed constituent "
            f"{_fmt_piece(*e['printed'])} should be {_fmt_piece(*e['corrected'])}"
        )
    for e in ref.INTERFERENCE_ERRATA:
        errata.append(
            f"interference matrix of user {e['user']}, column {e['column'] + 1}, "
            f"row {e['row'] + 1}: printed {_fmt_msg(*e['printed'])} should be "
            f"{_fmt_msg(*e['corrected'])}"
        )
    for e in ref.A_MATRIX_ERRATA:
        errata.append(
            f"basis matrix row {e['row'] + 1}: printed {_fmt_symbol(*e['printed'])} "
            f"is a duplicate; the missing symbol is {_fmt_symbol(*e['corrected'])}"
        )
    errata.extend(ref.ORDERING_NOTES)

    return {
        "H": SCENARIO.H,
        "r": SCENARIO.r,
        "N": SCENARIO.N,
        "t": t,
        "cache_table": cache,
        "fronthaul_table": fronthaul,
        "interference_table": interference,
        "groups": [g.as_dict() for g in groups],
        "errata": errata,
    }


def render_text(export: dict) -> str:
    """Aligned text rendering of all regenerated tables plus errata notes."""
    lines = []
    lines.append(f"Reference scenario: H={export['H']}, r={export['r']}, "
                 f"N={export['N']}, t={export['t']}")
    lines.append("")
    lines.append("Cache contents (all file indices n):")
    for k, pairs in export["cache_table"].items():
        cells = ", ".join(_fmt_piece("n", i, T) for i, T in pairs)
        lines.append(f"  u_{k:<3} {cells}")
    lines.append("")
    lines.append("Fronthaul messages (demand d = (1..N)):")
    current_en = None
    for (i, S), constituents in export["fronthaul_table"].items():
        if i != current_en:
            lines.append(f"  EN_{i}:")
            current_en = i
        rhs = " + ".join(_fmt_piece(*c) for c in constituents)
        lines.append(f"    {_fmt_msg(i, S)} = {rhs}")
    lines.append("")
    lines.append("Interference matrices:")
    for k, columns in export["interference_table"].items():
        rows = len(columns[0]) if columns else 0
        lines.append(f"  u_{k}:")
        for j in range(rows):
            cells = "  ".join(_fmt_msg(*col[j]) for col in columns)
            lines.append(f"    {cells}")
    lines.append("")
    lines.append("Alignment matrices (printed row order; signals EN-ascending):")
    lines.append("  g   data row (B)                          users (C)      basis (A)")
    for g in export["groups"]:
        signals = " ".join(_fmt_msg(i, tuple(S)) for i, S in g["signals"])
        users = ",".join(f"u_{k}" for k in g["covered_users"])
        basis = " ".join(_fmt_symbol(k, i) for k, i in g["basis"])
        lines.append(f"  {g['g']:<3} {signals:<38} {users:<14} {basis}")
    lines.append("")
    lines.append("Errata versus the printed rendering:")
    for note in export["errata"]:
        lines.append(f"  - {note}")
    return "\n".join(lines) + "\n"


def as_json_dict(export: dict) -> dict:
    """JSON-friendly copy (tuple keys flattened)."""
    return {
        "H": export["H"],
        "r": export["r"],
        "N": export["N"],
        "t": export["t"],
        "cache_table": {
            str(k): [[i, list(T)] for i, T in pairs]
            for k, pairs in export["cache_table"].items()
        },
        "fronthaul_table": [
            {
                "i": i,
                "S": list(S),
                "constituents": [[n, ci, list(T)] for n, ci, T in constituents],
            }
            for (i, S), constituents in export["fronthaul_table"].items()
        ],
        "interference_table": {
            str(k): [[[i, list(S)] for i, S in col] for col in columns]
            for k, columns in export["interference_table"].items()
        },
        "groups": export["groups"],
        "errata": export["errata"],
    }
