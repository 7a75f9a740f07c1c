"""Printed reference tables for the canonical 5x10 scenario (H=5, r=2, t=1).

These constants transcribe the published rendering of the worked scenario:
per-user cache contents, the 30 fronthaul messages under the all-distinct
demand (1..10), the per-user interference matrices, and the three
alignment matrices (data, users, channel-symbol basis).  The printed
rendering contains a handful of typos; they are kept verbatim here and
catalogued in the ERRATA records so regeneration can be compared cell by
cell, with each deviation accounted for.

Conventions: pieces are (n, i, T) with T a tuple, message ids are
(i, S), channel symbols are (k, i) pairs.
"""

from __future__ import annotations

# Cache contents: user -> ((chunk i, T), (chunk i, T)); n runs over all files.
PRINTED_CACHE_TABLE = {
    1: ((1, (1,)), (2, (1,))),
    2: ((1, (2,)), (3, (1,))),
    3: ((1, (3,)), (4, (1,))),
    4: ((1, (4,)), (5, (1,))),
    5: ((2, (2,)), (3, (2,))),
    6: ((2, (3,)), (4, (2,))),
    7: ((2, (4,)), (5, (2,))),
    8: ((3, (3,)), (4, (3,))),
    9: ((3, (4,)), (5, (3,))),
    10: ((4, (4,)), (5, (4,))),
}

# Fronthaul: (EN, S) -> constituents ((n, i, T), ...) exactly as printed.
PRINTED_FRONTHAUL_TABLE = {
    (1, (1, 2)): ((1, 1, (2,)), (2, 1, (1,))),
    (1, (1, 3)): ((1, 1, (3,)), (3, 1, (1,))),
    (1, (1, 4)): ((1, 1, (4,)), (4, 1, (1,))),
    (1, (2, 3)): ((2, 1, (3,)), (3, 1, (2,))),
    (1, (2, 4)): ((2, 1, (4,)), (4, 1, (2,))),
    (1, (3, 4)): ((3, 1, (4,)), (4, 1, (3,))),
    (2, (1, 2)): ((1, 2, (2,)), (5, 2, (1,))),
    (2, (1, 3)): ((1, 2, (3,)), (6, 2, (1,))),
    (2, (1, 4)): ((1, 2, (4,)), (7, 2, (1,))),
    (2, (2, 3)): ((5, 2, (3,)), (6, 2, (2,))),
    (2, (2, 4)): ((5, 2, (4,)), (7, 2, (2,))),
    (2, (3, 4)): ((6, 2, (4,)), (7, 2, (3,))),
    (3, (1, 2)): ((2, 3, (2,)), (5, 3, (1,))),
    (3, (1, 3)): ((2, 3, (3,)), (8, 3, (1,))),
    (3, (1, 4)): ((2, 3, (4,)), (9, 3, (1,))),
    (3, (2, 3)): ((5, 3, (3,)), (8, 3, (2,))),
    (3, (2, 4)): ((5, 3, (4,)), (9, 3, (2,))),
    (3, (3, 4)): ((8, 3, (4,)), (9, 3, (3,))),
    (4, (1, 2)): ((3, 4, (2,)), (6, 4, (1,))),
    (4, (1, 3)): ((3, 4, (3,)), (8, 4, (1,))),
    (4, (1, 4)): ((3, 4, (4,)), (10, 4, (1,))),
    (4, (2, 3)): ((6, 1, (3,)), (8, 4, (2,))),
    (4, (2, 4)): ((6, 1, (4,)), (10, 4, (2,))),
    (4, (3, 4)): ((8, 1, (4,)), (10, 4, (3,))),
    (5, (1, 2)): ((4, 5, (2,)), (7, 5, (1,))),
    (5, (1, 3)): ((4, 5, (3,)), (9, 5, (1,))),
    (5, (1, 4)): ((4, 5, (4,)), (10, 5, (1,))),
    (5, (2, 3)): ((7, 5, (3,)), (9, 5, (2,))),
    (5, (2, 4)): ((7, 5, (4,)), (10, 5, (2,))),
    (5, (3, 4)): ((9, 5, (4,)), (10, 5, (3,))),
}

# Printed chunk superscripts that contradict the generation rule: in the
# EN_4 column three constituents carry superscript 1 where the rule forces
# the sending EN's own chunk index 4.
FRONTHAUL_ERRATA = (
    {"key": (4, (2, 3)), "position": 0, "printed": (6, 1, (3,)), "corrected": (6, 4, (3,))},
    {"key": (4, (2, 4)), "position": 0, "printed": (6, 1, (4,)), "corrected": (6, 4, (4,))},
    {"key": (4, (3, 4)), "position": 0, "printed": (8, 1, (4,)), "corrected": (8, 4, (4,))},
)

# Interference matrices: user -> (column per serving EN, ascending), each
# column a tuple of (i, S) ids exactly as printed.
PRINTED_INTERFERENCE_TABLE = {
    1: (((1, (2, 3)), (1, (2, 4)), (1, (3, 4))), ((2, (2, 3)), (2, (2, 4)), (2, (3, 4)))),
    2: (((1, (1, 3)), (1, (1, 4)), (1, (2, 4))), ((3, (2, 3)), (3, (2, 4)), (3, (3, 4)))),
    3: (((1, (1, 2)), (1, (1, 4)), (1, (3, 4))), ((4, (2, 3)), (4, (2, 4)), (4, (3, 4)))),
    4: (((1, (1, 2)), (1, (1, 3)), (1, (2, 3))), ((5, (2, 3)), (5, (2, 4)), (5, (3, 4)))),
    5: (((2, (1, 3)), (2, (1, 4)), (2, (3, 4))), ((3, (1, 3)), (3, (1, 4)), (3, (3, 4)))),
    6: (((2, (1, 2)), (2, (1, 4)), (2, (2, 4))), ((4, (1, 3)), (4, (1, 4)), (4, (3, 4)))),
    7: (((2, (1, 2)), (2, (1, 3)), (2, (2, 3))), ((5, (1, 3)), (5, (1, 4)), (5, (3, 4)))),
    8: (((3, (1, 2)), (3, (1, 4)), (3, (2, 4))), ((4, (1, 2)), (4, (1, 4)), (4, (2, 4)))),
    9: (((3, (1, 2)), (3, (1, 3)), (3, (2, 3))), ((5, (1, 4)), (5, (1, 4)), (5, (2, 4)))),
    10: (((4, (1, 2)), (4, (1, 3)), (4, (2, 3))), ((5, (1, 2)), (5, (1, 3)), (5, (2, 3)))),
}

# Printed interference cells that contradict the membership rule.
INTERFERENCE_ERRATA = (
    {"user": 2, "column": 0, "row": 2, "printed": (1, (2, 4)), "corrected": (1, (3, 4))},
    {"user": 3, "column": 0, "row": 2, "printed": (1, (3, 4)), "corrected": (1, (2, 4))},
    {"user": 9, "column": 1, "row": 0, "printed": (5, (1, 4)), "corrected": (5, (1, 2))},
)

# Alignment matrices as printed, row by row.
PRINTED_B_MATRIX = (
    ((1, (2, 3)), (2, (2, 3)), (5, (3, 4))),
    ((1, (2, 4)), (2, (2, 4)), (4, (3, 4))),
    ((1, (3, 4)), (2, (3, 4)), (3, (3, 4))),
    ((1, (1, 3)), (3, (2, 3)), (5, (2, 4))),
    ((1, (1, 4)), (3, (2, 4)), (4, (2, 4))),
    ((1, (1, 2)), (4, (2, 3)), (5, (2, 3))),
    ((2, (1, 3)), (3, (1, 3)), (5, (1, 4))),
    ((2, (1, 4)), (3, (1, 4)), (4, (1, 4))),
    ((2, (1, 2)), (4, (1, 3)), (5, (1, 3))),
    ((4, (1, 2)), (3, (1, 2)), (5, (1, 2))),  # out of EN order as printed
)

PRINTED_C_MATRIX = (
    (1, 4, 7),
    (1, 3, 6),
    (1, 2, 5),
    (2, 4, 9),
    (2, 3, 8),
    (3, 4, 10),
    (5, 7, 9),
    (5, 6, 8),
    (6, 7, 10),
    (8, 10, 9),  # out of ascending order as printed
)

PRINTED_A_MATRIX = (
    ((1, 1), (1, 2), (4, 1), (4, 5), (7, 2), (7, 5)),
    ((1, 1), (1, 2), (3, 1), (3, 4), (6, 2), (6, 4)),
    ((1, 1), (1, 2), (2, 1), (2, 3), (5, 2), (5, 3)),
    ((2, 1), (2, 3), (4, 1), (4, 5), (9, 3), (9, 5)),
    ((2, 1), (2, 3), (3, 1), (3, 4), (8, 3), (8, 4)),
    ((3, 1), (3, 4), (4, 1), (4, 5), (10, 4), (10, 5)),
    ((5, 2), (5, 3), (7, 2), (7, 5), (9, 3), (9, 5)),
    ((5, 2), (5, 3), (6, 2), (6, 4), (8, 3), (8, 4)),
    ((6, 2), (6, 4), (7, 2), (7, 5), (10, 4), (10, 4)),  # duplicate as printed
    ((8, 3), (8, 4), (10, 4), (10, 5), (9, 3), (9, 5)),
)

# Row 9's second symbol of user 10 is printed as (10, 4) twice; the basis
# rule forces (10, 5) for the missing edge.
A_MATRIX_ERRATA = (
    {"row": 8, "printed": (10, 4), "corrected": (10, 5)},
)

ORDERING_NOTES = (
    "data-matrix row 10 lists its signals out of EN order (4, 3, 5); row "
    "comparisons are set-based",
    "user-matrix row 10 lists users out of ascending order (8, 10, 9)",
)
