"""Reference preimage tables for four walk maps.

Each grid lists rows of the table; entry ``j`` of a row is the vertex placed
in the column of w_j (``None`` for an empty cell).  The grids are
entered by hand and serve as fixed data for reproduction tests.
"""
from __future__ import annotations

_ = None

EXAMPLE_TABLES: dict[str, dict] = {
    "walk_22_9": {
        "p": 22,
        "q": 9,
        "k": 2,
        "S": (14, 1, 11, 20, 7, 17, 4, 13),
        "f1": 21,
        "grid": [
            [0, 9, 18, 5, _],
            [_, 1, 14, _, _],
            [_, _, 10, 19, 6],
            [15, 2, _, _, _],
            [11, _, _, _, _],
            [_, _, _, 7, 20],
            [_, _, _, _, 16],
            [3, 12, 21, 8, _],
            [13, 4, 17, _, _],
        ],
    },
    "solbeta_3_5": {
        "p": 33,
        "q": 14,
        "k": 3,
        "S": (29, 10, 24, 5, 19, 0),
        "grid": [
            [0, 14, 28, 9, 23, 4, 18],
            [32, 13, 27, 8, 22, 3, 17],
            [31, 12, 26, 7, 21, 2, 16],
            [30, 11, 25, 6, 20, 1, 15],
            [_, 19, 5, 24, 10, 29, _],
        ],
    },
    "splitend_3_5": {
        "p": 31,
        "q": 13,
        "k": 3,
        "S": (10, 23, 5, 18, 0),
        "grid": [
            [0, 13, 26, 8, 21, 3, 16],
            [29, 11, 24, 6, 19, 1, 14],
            [27, 9, 22, 4, 17, 30, 12],
            [25, 7, 20, 2, 15, 28, _],
            [_, 18, 5, 23, 10, _, _],
        ],
    },
    "splitmiddle_3_5": {
        "p": 31,
        "q": 13,
        "k": 3,
        "S": (14, 27, 9, 22, 4, 17, 28, 10, 23, 5, 18, 0),
        "grid": [
            [0, 13, 26, 8, 21, 3, 16],
            [29, 11, 24, 6, 19, 1, _],
            [4, 22, 9, 27, 14, _, _],
            [_, _, _, _, _, _, 17],
            [30, 12, 25, 7, 20, 2, 15],
            [_, 18, 5, 23, 10, 28, _],
        ],
    },
}
