"""Pure-Python inner loops. ``_ckernels.pyx`` mirrors these signatures exactly."""

from __future__ import annotations

from typing import Sequence


def max_matching(n_right: int, adjacency: Sequence[Sequence[int]]) -> list[int]:
    """Maximum-cardinality bipartite matching by augmenting paths (Kuhn).

    ``adjacency[u]`` lists the right vertices compatible with left vertex ``u``.
    Returns, for every left vertex, its matched right vertex or -1. Left
    vertices and their neighbours are visited in the given order, so the
    matching itself (not only its size) is deterministic.
    """
    match_left = [-1] * len(adjacency)
    match_right = [-1] * n_right
    parent = [-1] * n_right
    for root, neighbours in enumerate(adjacency):
        if not neighbours:
            continue
        seen = [False] * n_right
        stack = [(root, 0)]
        free = -1
        while stack:
            u, i = stack[-1]
            if i == len(adjacency[u]):
                stack.pop()
                continue
            stack[-1] = (u, i + 1)
            v = adjacency[u][i]
            if seen[v]:
                continue
            seen[v] = True
            parent[v] = u
            if match_right[v] == -1:
                free = v
                break
            stack.append((match_right[v], 0))
        v = free
        while v != -1:
            u = parent[v]
            previous = match_left[u]
            match_left[u] = v
            match_right[v] = u
            v = previous
    return match_left


def lcs_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the longest common subsequence of two integer sequences."""
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, 1):
            if x == y:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = cur[j - 1] if cur[j - 1] > prev[j] else prev[j]
        prev = cur
    return prev[-1]


def kendall_counts(x: Sequence[float], y: Sequence[float]) -> tuple[int, int, int, int]:
    """Pair counts ``(concordant, discordant, tied_x, tied_y)`` over all i < j.

    A pair tied in both series is counted in ``tied_x`` and ``tied_y``.
    """
    n = len(x)
    concordant = discordant = tied_x = tied_y = 0
    for i in range(n - 1):
        xi = x[i]
        yi = y[i]
        for j in range(i + 1, n):
            dx = x[j] - xi
            dy = y[j] - yi
            if dx == 0:
                tied_x += 1
                if dy == 0:
                    tied_y += 1
            elif dy == 0:
                tied_y += 1
            elif (dx > 0) == (dy > 0):
                concordant += 1
            else:
                discordant += 1
    return concordant, discordant, tied_x, tied_y
