"""Worked-example block lists, transcribed verbatim (``"inf"`` stands for the point at infinity)."""

INF = "inf"

QR_LOG_11 = [
    {0, 1, 3, 4, 8}, {1, 3, 4, 6, 7}, {2, 4, 5, 7, 8}, {0, 2, 3, 7, 9}, {3, 5, 6, 8, 9},
    {0, 1, 5, 7, 8}, {1, 2, 4, 5, 9}, {0, 2, 3, 5, 6}, {0, 4, 6, 7, 9}, {1, 2, 6, 8, 9},
    {2, 5, 6, 7, INF}, {0, 1, 6, 9, INF}, {3, 6, 7, 8, INF}, {1, 4, 5, 6, INF}, {0, 1, 2, 7, INF},
    {1, 2, 3, 8, INF}, {2, 3, 4, 9, INF}, {4, 7, 8, 9, INF}, {0, 5, 8, 9, INF}, {0, 3, 4, 5, INF},
]

QR_RESTRICT_13 = [
    {4, 10, INF}, {3, 4, 10}, {1, 3, 12}, {4, 9, 12},
    {4, 12, INF}, {10, 12, INF}, {1, 3, INF}, {4, 9, INF},
    {1, 4, 9}, {1, 10, 12}, {3, 9, 10}, {3, 9, INF},
]

QR_RESTRICT_COMPLEMENT_13 = [
    {1, 3, 9, 12}, {4, 9, 10, INF}, {1, 3, 9, 10}, {4, 9, 10, 12},
    {3, 9, 10, INF}, {1, 4, 12, INF}, {1, 9, 12, INF}, {1, 3, 10, INF},
    {1, 3, 4, 9}, {3, 4, 10, 12}, {3, 4, 9, INF}, {1, 4, 10, 12},
]

QR_3ADESIGN_11 = [
    {1, 3, 4, 5, 9}, {2, 4, 5, 6, 10}, {0, 3, 5, 6, 7}, {1, 4, 6, 7, 8}, {2, 5, 7, 8, 9}, {0, 4, 5, 6, 8},
    {3, 6, 8, 9, 10}, {0, 4, 7, 9, 10}, {0, 1, 5, 8, 10}, {0, 1, 2, 6, 9}, {1, 2, 3, 7, 10}, {1, 5, 6, 7, 9},
    {0, 2, 3, 4, 8}, {2, 6, 7, 8, 10}, {0, 3, 7, 8, 9}, {1, 4, 8, 9, 10}, {0, 2, 5, 9, 10},
    {0, 1, 3, 6, 10}, {0, 1, 2, 4, 7}, {1, 2, 3, 5, 8}, {2, 3, 4, 6, 9}, {3, 4, 5, 7, 10},
]

CONTRACTION_11_AT_1 = [
    {3, 4, 5, 9}, {4, 6, 7, 8}, {0, 5, 8, 10}, {0, 2, 6, 9}, {2, 3, 7, 10},
    {4, 8, 9, 10}, {0, 3, 6, 10}, {0, 2, 4, 7}, {2, 3, 5, 8}, {5, 6, 7, 9},
]

# points written 1..7; read mod 7
PAIR_UNION_7 = [
    {1, 7, 2, 6}, {1, 7, 3, 5}, {2, 6, 3, 5}, {7, 6, 1, 5}, {7, 6, 2, 4}, {1, 5, 2, 4}, {1, 4, 2, 3},
    {1, 3, 7, 4}, {1, 3, 6, 5}, {7, 4, 6, 5}, {7, 2, 6, 3}, {7, 2, 5, 4}, {6, 3, 5, 4}, {1, 2, 7, 3},
    {1, 6, 2, 5}, {1, 6, 3, 4}, {2, 5, 3, 4}, {7, 5, 1, 4}, {7, 5, 2, 3}, {7, 3, 6, 4}, {1, 2, 6, 4},
]


def as_label_sets(blocks):
    return sorted(sorted(str(x) for x in B) for B in blocks)


def structure_label_sets(S):
    return sorted(sorted(b) for b in S.labelled_blocks())
