# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the inner loops in ``_pykernels``."""

from libc.stdlib cimport malloc, free


def max_matching(int n_right, adjacency):
    cdef int n_left = len(adjacency)
    cdef int total = 0
    cdef int u, v, i, k, root, top, found, previous
    for neighbours in adjacency:
        total += len(neighbours)

    cdef int *indptr = <int *> malloc((n_left + 1) * sizeof(int))
    cdef int *indices = <int *> malloc((total + 1) * sizeof(int))
    cdef int *match_left = <int *> malloc((n_left + 1) * sizeof(int))
    cdef int *match_right = <int *> malloc((n_right + 1) * sizeof(int))
    cdef int *parent = <int *> malloc((n_right + 1) * sizeof(int))
    cdef char *seen = <char *> malloc((n_right + 1) * sizeof(char))
    cdef int *stack_u = <int *> malloc((n_left + 1) * sizeof(int))
    cdef int *stack_i = <int *> malloc((n_left + 1) * sizeof(int))
    if not (indptr and indices and match_left and match_right and parent
            and seen and stack_u and stack_i):
        free(indptr); free(indices); free(match_left); free(match_right)
        free(parent); free(seen); free(stack_u); free(stack_i)
        raise MemoryError()
    try:
        k = 0
        for u in range(n_left):
            indptr[u] = k
            for v in adjacency[u]:
                if v < 0 or v >= n_right:
                    raise IndexError(f"right vertex {v} out of range")
                indices[k] = v
                k += 1
            match_left[u] = -1
        indptr[n_left] = k
        for v in range(n_right):
            match_right[v] = -1
            parent[v] = -1

        for root in range(n_left):
            if indptr[root] == indptr[root + 1]:
                continue
            for v in range(n_right):
                seen[v] = 0
            top = 0
            stack_u[0] = root
            stack_i[0] = indptr[root]
            found = -1
            while top >= 0:
                u = stack_u[top]
                i = stack_i[top]
                if i == indptr[u + 1]:
                    top -= 1
                    continue
                stack_i[top] = i + 1
                v = indices[i]
                if seen[v]:
                    continue
                seen[v] = 1
                parent[v] = u
                if match_right[v] == -1:
                    found = v
                    break
                top += 1
                stack_u[top] = match_right[v]
                stack_i[top] = indptr[match_right[v]]
            v = found
            while v != -1:
                u = parent[v]
                previous = match_left[u]
                match_left[u] = v
                match_right[v] = u
                v = previous
        return [match_left[u] for u in range(n_left)]
    finally:
        free(indptr); free(indices); free(match_left); free(match_right)
        free(parent); free(seen); free(stack_u); free(stack_i)


def lcs_length(a, b):
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    cdef long *bb = <long *> malloc((m + 1) * sizeof(long))
    cdef long *prev = <long *> malloc((m + 1) * sizeof(long))
    cdef long *cur = <long *> malloc((m + 1) * sizeof(long))
    cdef long *tmp
    cdef long x
    if not (bb and prev and cur):
        free(bb); free(prev); free(cur)
        raise MemoryError()
    try:
        for j in range(m):
            bb[j] = b[j]
        for j in range(m + 1):
            prev[j] = 0
        cur[0] = 0
        for i in range(n):
            x = a[i]
            for j in range(1, m + 1):
                if x == bb[j - 1]:
                    cur[j] = prev[j - 1] + 1
                elif cur[j - 1] > prev[j]:
                    cur[j] = cur[j - 1]
                else:
                    cur[j] = prev[j]
            tmp = prev
            prev = cur
            cur = tmp
        return int(prev[m])
    finally:
        free(bb); free(prev); free(cur)


def kendall_counts(x, y):
    cdef Py_ssize_t n = len(x), i, j
    if len(y) != n:
        raise ValueError("series lengths differ")
    cdef double *xs = <double *> malloc((n + 1) * sizeof(double))
    cdef double *ys = <double *> malloc((n + 1) * sizeof(double))
    cdef double dx, dy
    cdef long long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0
    if not (xs and ys):
        free(xs); free(ys)
        raise MemoryError()
    try:
        for i in range(n):
            xs[i] = x[i]
            ys[i] = y[i]
        for i in range(n - 1):
            for j in range(i + 1, n):
                dx = xs[j] - xs[i]
                dy = ys[j] - ys[i]
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
        return int(concordant), int(discordant), int(tied_x), int(tied_y)
    finally:
        free(xs); free(ys)
