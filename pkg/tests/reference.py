"""Independent brute-force reference implementations.

Everything here enumerates all 2^(n*m) bipartite graphs in plain Python with
exact Fraction weights. No generating functions, no sieve, no numpy: these
are the oracles the library is checked against, so they must stay dumb.
"""

import math
from fractions import Fraction


def all_graphs(n, m):
    """Yield every adjacency table as a tuple of n row bitmasks over m objects."""
    for code in range(1 << (n * m)):
        yield tuple((code >> (i * m)) & ((1 << m) - 1) for i in range(n))


def graph_weight(rows, n, m, p):
    edges = sum(bin(r).count("1") for r in rows)
    return p**edges * (1 - p) ** (n * m - edges)


def columns(rows, n, m):
    return [sum(((rows[i] >> j) & 1) << i for i in range(n)) for j in range(m)]


def active_deg(rows, v):
    return sum(1 for i in range(len(rows)) if i != v and rows[i] & rows[v])


def passive_deg(rows, n, m, w):
    cols = columns(rows, n, m)
    return sum(1 for j in range(m) if j != w and cols[j] & cols[w])


def joint_law(n, m, p, vertex=0, obj=0):
    """Exact joint degree law as a dict {(x, y): Fraction}."""
    pmf = {}
    for rows in all_graphs(n, m):
        key = (active_deg(rows, vertex), passive_deg(rows, n, m, obj))
        pmf[key] = pmf.get(key, Fraction(0)) + graph_weight(rows, n, m, p)
    return pmf


def marginal_law(n, m, p, active=True):
    law = {}
    for (x, y), w in joint_law(n, m, p).items():
        key = x if active else y
        law[key] = law.get(key, Fraction(0)) + w
    return law


def cond_nonadjacency(n, m, p, k, l, edge):
    """P(vertex 0 avoids vertices 1..k and object 0 avoids objects 1..l,
    conditioned on the (vertex 0, object 0) edge being present/absent)."""
    hit = Fraction(0)
    mass = Fraction(0)
    for rows in all_graphs(n, m):
        if bool(rows[0] & 1) != edge:
            continue
        w = graph_weight(rows, n, m, p)
        mass += w
        cols = columns(rows, n, m)
        avoids_vertices = all(not (rows[0] & rows[i]) for i in range(1, k + 1))
        avoids_objects = all(not (cols[0] & cols[j]) for j in range(1, l + 1))
        if avoids_vertices and avoids_objects:
            hit += w
    return hit / mass


def falling_moment(n, m, p, k, l):
    """E[C(Y1,k) C(Y2,l)] where Y1, Y2 count non-adjacent others."""
    total = Fraction(0)
    for rows in all_graphs(n, m):
        y1 = (n - 1) - active_deg(rows, 0)
        y2 = (m - 1) - passive_deg(rows, n, m, 0)
        total += graph_weight(rows, n, m, p) * math.comb(y1, k) * math.comb(y2, l)
    return total


def law_as_table(law, n, m):
    """Dict law -> dense tuple-of-tuples table matching the library layout."""
    return tuple(tuple(law.get((a, b), Fraction(0)) for b in range(m)) for a in range(n))
