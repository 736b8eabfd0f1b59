"""Balanced star arrays for n=5, v=162, transcribed from a hand-built table.

``T1[i]`` / ``T2[i]`` are the rows for residue class ``i``; ``None`` marks an
empty cell of the partial mixed-star row.
"""

_ = None

T1 = {
    0: [(37, 32, 21, 16, 11), (49, 50, 51, 52, 53), (67, 80, _, _, _)],
    1: [(37, 32, 21, 16, 5), (1, 56, 3, 4, 47), (67, 80, _, _, _)],
    2: [(37, 32, 21, 10, 5), (67, 80, _, _, _)],
    3: [(37, 32, 15, 10, 5), (67, 80, _, _, _)],
    4: [(37, 26, 15, 10, 5), (55, 56, 51, 52, 53), (67, 74, _, _, _)],
    5: [(31, 26, 15, 10, 5), (61, 74, _, _, _)],
}

_TAIL = [(61, 62, 63, 64, 65), (73, 68, 69, 70, 71), (79, 74, 75, 76, 77)]

T2 = {
    0: [(1, 2, 3, 4, 5), (7, 8, 9, 10, 17), (13, 14, 15, 22, 23), (19, 20, 27, 28, 29),
        (25, 26, 33, 34, 35), (31, 38, 39, 40, 41), (43, 44, 45, 46, 47),
        (55, 56, 57, 58, 59)] + _TAIL,
    1: [(7, 2, 9, 10, 11), (13, 8, 15, 22, 17), (19, 14, 27, 28, 23), (25, 20, 33, 34, 29),
        (31, 26, 39, 40, 35), (43, 38, 45, 46, 41), (49, 44, 51, 52, 53),
        (55, 50, 57, 58, 59)] + _TAIL,
    2: [(1, 2, 3, 4, 11), (7, 8, 9, 16, 17), (13, 14, 15, 22, 23), (19, 20, 27, 28, 29),
        (25, 26, 33, 34, 35), (31, 38, 39, 40, 41), (43, 44, 45, 46, 47),
        (49, 50, 51, 52, 53), (55, 56, 57, 58, 59)] + _TAIL,
    3: [(1, 2, 3, 4, 11), (7, 8, 9, 16, 17), (13, 14, 21, 22, 23), (19, 20, 27, 28, 29),
        (25, 26, 33, 34, 35), (31, 38, 39, 40, 41), (43, 44, 45, 46, 47),
        (49, 50, 51, 52, 53), (55, 56, 57, 58, 59)] + _TAIL,
    4: [(1, 2, 3, 4, 11), (7, 8, 9, 16, 17), (13, 14, 21, 22, 23), (19, 20, 27, 28, 29),
        (25, 32, 33, 34, 35), (31, 38, 39, 40, 41), (43, 44, 45, 46, 47),
        (49, 50, 57, 58, 59), (61, 62, 63, 64, 65), (73, 68, 69, 70, 71),
        (79, 80, 75, 76, 77)],
    5: [(1, 2, 3, 4, 11), (7, 8, 9, 16, 17), (13, 14, 21, 22, 23), (19, 20, 27, 28, 29),
        (25, 32, 33, 34, 35), (37, 38, 39, 40, 41), (43, 44, 45, 46, 47),
        (49, 50, 51, 52, 53), (55, 56, 57, 58, 59), (67, 62, 63, 64, 65),
        (73, 68, 69, 70, 71), (79, 80, 75, 76, 77)],
}
