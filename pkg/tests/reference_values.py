"""Published reference counts used by the tests and the acceptance report."""

from __future__ import annotations

_FEASIBLE_ROWS = {
    (1, 3): "1/1 2/2 2/3 0/1 0/3 0/4 0/5 0/9",
    (1, 4): "- 1/1 3/3 6/6 8/13 19/30 36/57 61/119",
    (1, 5): "- - 1/1 5/5 21/27 117/127 570/689 3359/3620",
    (2, 3): "1/1 3/3 6/8 8/12 16/28 30/55 44/99 67/165",
    (2, 4): "- 1/1 5/5 17/17 59/74 261/291 1034/1128 3940/4235",
    (2, 5): "- - 1/1 9/9 79/93 900/910 9267/9908 106859/107947",
    (3, 3): "1/1 4/4 11/14 32/37 84/99 224/252 547/609 1315/1409",
    (3, 4): "- 1/1 7/7 35/35 195/221 1246/1296 7243/7341 38781/39486",
    (3, 5): "- - 1/1 13/13 179/199 2933/2951 46160/48150 790491/793171",
}


def _feasible_table() -> dict[tuple[int, int, int], tuple[int, int]]:
    out = {}
    for (lam, t), line in _FEASIBLE_ROWS.items():
        for v, cell in zip(range(3, 11), line.split()):
            if cell != "-":
                r, s = cell.split("/")
                out[(v, t, lam)] = (int(r), int(s))
    return out


# (v, t, lambda) -> (survivors, feasible)
FEASIBLE = _feasible_table()

# (t, lambda, v) -> (isomorphism classes, classes that are groups)
CLASSES = {
    (3, 1, 3): (1, 1), (3, 1, 4): (1, 0), (3, 1, 5): (0, 0),
    (3, 2, 3): (1, 1), (3, 2, 4): (12, 1), (3, 2, 5): (314, 0), (3, 2, 6): (1957, 5),
    (3, 2, 7): (146, 0), (3, 2, 8): (0, 0),
    (3, 3, 3): (1, 1), (3, 3, 4): (37, 0), (3, 3, 5): (260664, 0),
    (4, 1, 4): (1, 1), (4, 1, 5): (4, 0), (4, 1, 6): (2, 1), (4, 1, 7): (0, 0),
    (4, 2, 4): (1, 1), (4, 2, 5): (12351, 0), (4, 2, 6): (32507, 2), (4, 2, 7): (1826, 0),
    (4, 2, 8): (0, 0),
    (5, 1, 5): (1, 1), (5, 1, 6): (3461, 0), (5, 1, 7): (0, 0),
}

# Cells small enough for the default test run.
DESK_CLASSES = [
    (3, 1, 3), (3, 1, 4), (3, 1, 5),
    (3, 2, 4), (3, 2, 5), (3, 2, 6), (3, 2, 7), (3, 2, 8),
    (4, 1, 5), (4, 1, 6), (4, 1, 7),
    (3, 3, 4),
]
HEAVY_CLASSES = [(4, 2, 5), (5, 1, 6), (3, 3, 5)]

# (v, t, lambda) -> (realised, compatible)
REALISED = {
    (3, 3, 1): (1, 1), (4, 3, 1): (2, 2),
    (3, 3, 2): (1, 1), (4, 3, 2): (3, 3), (5, 3, 2): (6, 6), (6, 3, 2): (4, 8), (7, 3, 2): (2, 16),
    (3, 3, 3): (1, 1), (4, 3, 3): (4, 4), (5, 3, 3): (11, 11), (6, 3, 3): (26, 32),
    (4, 4, 1): (1, 1), (5, 4, 1): (3, 3), (6, 4, 1): (1, 6),
    (4, 4, 2): (1, 1), (5, 4, 2): (5, 5), (6, 4, 2): (10, 17), (7, 4, 2): (16, 59),
    (5, 5, 1): (1, 1), (6, 5, 1): (5, 5),
}
DESK_REALISED = [(4, 3, 1), (4, 3, 2), (5, 3, 2), (6, 3, 2), (7, 3, 2), (4, 3, 3), (5, 4, 1), (6, 4, 1)]
HEAVY_REALISED = [(5, 3, 3), (5, 4, 2), (6, 4, 2), (7, 4, 2), (6, 5, 1)]

# Feasible (6,3,3) vectors no catalogued PSCA realises, listed up to reversal.
UNREALISED_6_3_3 = [(0, 9, 1, 3, 0, 5), (2, 6, 0, 4, 3, 3), (3, 1, 8, 0, 2, 4)]
