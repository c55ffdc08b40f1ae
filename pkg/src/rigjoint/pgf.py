"""Joint degree law of the two one-mode projections of a random bipartite graph.

The model: a vertex set of size n, an object set of size m, and each of the
n*m cross edges present independently with probability p. Projecting onto the
vertex side links two vertices when they share at least one object (the
"active" graph); projecting onto the object side links two objects when they
share at least one vertex (the "passive" graph). X is the degree of a tracked
vertex in the active graph and Y the degree of a tracked object in the
passive graph; this module computes the exact joint law of (X, Y).

The route goes through the non-neighbor counts Y1 = n-1-X and Y2 = m-1-Y.
Their binomial falling moments

    N[k][l] = E[ C(Y1, k) * C(Y2, l) ]

equal a sum over k marked vertices and l marked objects of the probability
that the tracked pair avoids all of them, and that probability splits on
whether the tracked vertex-object edge is present (``*_given_edge`` /
``*_given_nonedge`` below). The split collapses into a closed product form
(``moment_entry``), and the pmf of (Y1, Y2) is recovered from the table by a
signed double binomial transform, i.e. inclusion-exclusion (``sieve_invert``);
reversing indices gives the law of (X, Y). The joint and marginal probability
generating functions have matching closed forms evaluated by ``eval_joint_pgf``
and ``eval_marginal_pgf``.

pmf extraction always runs in exact rational arithmetic: the signed transform
cancels catastrophically in floating point. Float mode is supported for PGF
point evaluation and for moments.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import Mode, Scalar, SizeCapError, as_scalar, binom, zero


class Side(Enum):
    """Which one-mode projection a marginal quantity refers to."""

    ACTIVE = "active"
    PASSIVE = "passive"


class SieveCancellationError(ArithmeticError):
    """Float-mode inversion produced a negative probability beyond roundoff."""


# Float-mode inversion: entries below -CLAMP_TOL are treated as genuine
# cancellation failure, larger (tiny negative) values are clamped to zero.
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Parameters (n, m, p) of the random bipartite graph."""

    n: int
    m: int
    p: Fraction

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"n and m must be at least 1, got n={self.n}, m={self.m}")
        if isinstance(self.p, float):
            raise TypeError("p must be exact; pass a Fraction, int, or string like '1/3'")
        object.__setattr__(self, "p", Fraction(self.p))
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class MomentTable:
    """Dense table of falling moments; ``entries[k][l]`` = N[k][l]."""

    params: ModelParams
    mode: Mode
    entries: tuple

    def __post_init__(self):
        n, m = self.params.n, self.params.m
        if len(self.entries) != n or any(len(row) != m for row in self.entries):
            raise ValueError("moment table dimensions do not match params")
        if any(e < 0 for row in self.entries for e in row):
            raise ValueError("moment entries must be nonnegative")
        head = self.entries[0][0]
        ok = head == 1 if self.mode is Mode.EXACT else abs(head - 1.0) < 1e-12
        if not ok:
            raise ValueError(f"entry (0,0) must equal 1, got {head}")

    def entry(self, k: int, l: int) -> Scalar:
        return self.entries[k][l]


@dataclass(frozen=True)
class JointDegreeDistribution:
    """Joint pmf of the degree pair; ``pmf[a][b]`` = P(X=a, Y=b)."""

    params: ModelParams
    mode: Mode
    pmf: tuple

    def __post_init__(self):
        n, m = self.params.n, self.params.m
        if len(self.pmf) != n or any(len(row) != m for row in self.pmf):
            raise ValueError("pmf dimensions do not match params")
        if any(v < 0 for row in self.pmf for v in row):
            raise ValueError("pmf entries must be nonnegative")
        total = sum(v for row in self.pmf for v in row)
        if self.mode is Mode.EXACT:
            if total != 1:
                raise ValueError(f"pmf must sum to exactly 1, got {total}")
        elif abs(total - 1.0) > 1e-6:
            raise ValueError(f"pmf sums to {total}, too far from 1")

    def prob(self, a: int, b: int) -> Scalar:
        return self.pmf[a][b]

    def marginal(self, side: Side) -> tuple:
        """Row sums (active side) or column sums (passive side) of the pmf."""
        if side is Side.ACTIVE:
            return tuple(sum(row) for row in self.pmf)
        return tuple(sum(row[b] for row in self.pmf) for b in range(self.params.m))


@dataclass(frozen=True)
class MarginalDistribution:
    """One-dimensional degree law on one side of the projection pair."""

    side: Side
    mode: Mode
    pmf: tuple

    def __post_init__(self):
        if any(v < 0 for v in self.pmf):
            raise ValueError("pmf entries must be nonnegative")
        total = sum(self.pmf)
        if self.mode is Mode.EXACT:
            if total != 1:
                raise ValueError(f"pmf must sum to exactly 1, got {total}")
        elif abs(total - 1.0) > 1e-6:
            raise ValueError(f"pmf sums to {total}, too far from 1")


def _coerced_p(params: ModelParams, mode: Mode):
    return params.p if mode is Mode.EXACT else float(params.p)


def _check_orders(params: ModelParams, k: int, l: int) -> None:
    if not 0 <= k <= params.n - 1:
        raise ValueError(f"k must lie in [0, {params.n - 1}], got {k}")
    if not 0 <= l <= params.m - 1:
        raise ValueError(f"l must lie in [0, {params.m - 1}], got {l}")


def cond_nonadjacency_given_edge(
    params: ModelParams, k: int, l: int, mode: Mode = Mode.EXACT
) -> Scalar:
    """P(tracked pair avoids k marked vertices and l marked objects | edge).

    Conditioned on the tracked vertex-object edge being present. The index i
    runs over the number of vertices attached to the tracked object, j over
    the number of objects attached to the tracked vertex; marked vertices and
    objects must avoid everything attached to the opposite anchor.
    """
    _check_orders(params, k, l)
    n, m = params.n, params.m
    p = _coerced_p(params, mode)
    q = 1 - p
    total = zero(mode)
    for i in range(1, n - k + 1):
        for j in range(1, m - l + 1):
            total += (
                binom(m - 1 - l, j - 1)
                * binom(n - 1 - k, i - 1)
                * p ** (j - 1)
                * q ** (m - j)
                * q ** ((j - 1) * k)
                * p ** (i - 1)
                * q ** (n - i)
                * q ** ((i - 1) * l)
            )
    return total


def cond_nonadjacency_given_nonedge(
    params: ModelParams, k: int, l: int, mode: Mode = Mode.EXACT
) -> Scalar:
    """P(tracked pair avoids k marked vertices and l marked objects | no edge).

    Conditioned on the tracked vertex-object edge being absent, marked
    vertices may now attach to the tracked object (and marked objects to the
    tracked vertex), so attachment counts split into an outside part (i_o,
    j_o) and a marked part (i_s, j_s). Avoidance constraints between the two
    attached sets overlap on i_s*j_s cross pairs, hence the correction in the
    last exponent.
    """
    _check_orders(params, k, l)
    n, m = params.n, params.m
    p = _coerced_p(params, mode)
    q = 1 - p
    total = zero(mode)
    for i_s in range(k + 1):
        for i_o in range(n - k):
            for j_s in range(l + 1):
                for j_o in range(m - l):
                    total += (
                        binom(m - 1 - l, j_o)
                        * binom(l, j_s)
                        * binom(n - 1 - k, i_o)
                        * binom(k, i_s)
                        * p ** (j_o + j_s)
                        * q ** (m - 1 - j_o - j_s)
                        * p ** (i_o + i_s)
                        * q ** (n - 1 - i_o - i_s)
                        * q ** ((j_o + j_s) * k + (i_o + i_s) * l - i_s * j_s)
                    )
    return total


def _moment_entry_from_powers(n, m, p, q, qpow, ppow, k, l):
    """Closed product form of N[k][l], given precomputed powers of p and q."""
    inner = qpow[0] - qpow[0]  # zero of the carrier type
    for i in range(l + 1):
        inner += binom(l, i) * ppow[i] * qpow[l - i] * (qpow[i + 1] + p * qpow[l]) ** k
    bracket = qpow[k + l] * p + q * inner
    per_object = 1 - p + p * qpow[k]  # one object misses all k marked vertices
    per_vertex = 1 - p + p * qpow[l]
    return (
        binom(n - 1, k)
        * binom(m - 1, l)
        * per_object ** (m - 1 - l)
        * per_vertex ** (n - 1 - k)
        * bracket
    )


def _power_tables(p, highest: int):
    one = p**0  # carrier-typed multiplicative identity
    q = 1 - p
    qpow, ppow = [one], [one]
    for _ in range(highest):
        qpow.append(qpow[-1] * q)
        ppow.append(ppow[-1] * p)
    return qpow, ppow


def moment_entry(params: ModelParams, k: int, l: int, mode: Mode = Mode.EXACT) -> Scalar:
    """Falling moment N[k][l] = E[C(Y1,k) C(Y2,l)] of the non-neighbor counts."""
    _check_orders(params, k, l)
    p = _coerced_p(params, mode)
    qpow, ppow = _power_tables(p, k + l + 2)
    return _moment_entry_from_powers(params.n, params.m, p, 1 - p, qpow, ppow, k, l)


def moment_table(
    params: ModelParams, mode: Mode = Mode.EXACT, max_cells: Optional[int] = None
) -> MomentTable:
    """Dense table of all falling moments N[k][l], 0 <= k < n, 0 <= l < m.

    ``max_cells`` caps n*m in exact mode, where each entry is a big rational;
    exceeding it raises SizeCapError.
    """
    n, m = params.n, params.m
    if mode is Mode.EXACT and max_cells is not None and n * m > max_cells:
        raise SizeCapError(f"exact moment table needs n*m <= {max_cells}, got {n * m}")
    p = _coerced_p(params, mode)
    qpow, ppow = _power_tables(p, n + m)
    entries = tuple(
        tuple(_moment_entry_from_powers(n, m, p, 1 - p, qpow, ppow, k, l) for l in range(m))
        for k in range(n)
    )
    return MomentTable(params, mode, entries)


def _signed_transform(entries, n, m):
    """counts[k][l] = sum over k'>=k, l'>=l of (-1)^((k'-k)+(l'-l)) C(k',k) C(l',l) N[k'][l'].

    Computed one axis at a time; exact when fed exact entries.
    """
    half = [
        [
            sum((-1) ** (lp - l) * binom(lp, l) * entries[kp][lp] for lp in range(l, m))
            for l in range(m)
        ]
        for kp in range(n)
    ]
    return [
        [
            sum((-1) ** (kp - k) * binom(kp, k) * half[kp][l] for kp in range(k, n))
            for l in range(m)
        ]
        for k in range(n)
    ]


def _scaled_integer(value: Fraction, scale: int) -> int:
    if scale % value.denominator:
        raise ValueError("entry denominator incompatible with the model's edge probability")
    return value.numerator * (scale // value.denominator)


def sieve_invert(table: MomentTable) -> JointDegreeDistribution:
    """Recover the joint pmf of (X, Y) from the falling-moment table.

    The signed double binomial transform of the table gives the pmf of the
    non-neighbor pair (Y1, Y2); reversing both indices gives (X, Y). In exact
    mode the transform runs over integers on the common denominator
    den(p)^(n*m), so the result is exact and provably nonnegative for tables
    that came from a genuine model. In float mode, entries in (-1e-9, 0) are
    clamped to zero and anything more negative raises SieveCancellationError.
    """
    params, mode = table.params, table.mode
    n, m = params.n, params.m
    if mode is Mode.EXACT:
        scale = params.p.denominator ** (n * m)
        scaled = [[_scaled_integer(table.entries[k][l], scale) for l in range(m)] for k in range(n)]
        counts = _signed_transform(scaled, n, m)
        if any(c < 0 for row in counts for c in row):
            raise ValueError("table is not a valid falling-moment table (negative pmf)")
        pmf = tuple(
            tuple(Fraction(counts[n - 1 - a][m - 1 - b], scale) for b in range(m))
            for a in range(n)
        )
    else:
        counts = _signed_transform([[float(e) for e in row] for row in table.entries], n, m)
        low = min(c for row in counts for c in row)
        if low < -CLAMP_TOL:
            raise SieveCancellationError(
                f"negative probability {low} beyond clamp tolerance; use exact mode"
            )
        pmf = tuple(
            tuple(max(counts[n - 1 - a][m - 1 - b], 0.0) for b in range(m)) for a in range(n)
        )
    return JointDegreeDistribution(params, mode, pmf)


def joint_pmf(
    params: ModelParams, mode: Mode = Mode.EXACT, max_cells: Optional[int] = None
) -> JointDegreeDistribution:
    """Exact joint pmf of (X, Y): moment table followed by sieve inversion."""
    return sieve_invert(moment_table(params, mode, max_cells))


def eval_joint_pgf(params: ModelParams, x: Scalar, y: Scalar, mode: Mode = Mode.EXACT) -> Scalar:
    """Evaluate the joint PGF F(x, y) = E[x^X y^Y] at one point.

    Exact mode evaluates the closed-form triple sum literally, term by term.
    Float mode computes the same sum vectorized (see _eval_joint_float).
    """
    x = as_scalar(x, mode)
    y = as_scalar(y, mode)
    if mode is Mode.FLOAT:
        return _eval_joint_float(params, x, y)
    n, m = params.n, params.m
    p = params.p
    q = 1 - p
    qpow, ppow = _power_tables(p, n + m)
    xpow = [x ** (n - 1 - k) * (1 - x) ** k for k in range(n)]
    ypow = [y ** (m - 1 - l) * (1 - y) ** l for l in range(m)]
    per_object = [1 - p + p * qpow[k] for k in range(n)]
    per_vertex = [1 - p + p * qpow[l] for l in range(m)]
    total = zero(mode)
    for k in range(n):
        for l in range(m):
            inner = zero(mode)
            for i in range(l + 1):
                inner += binom(l, i) * ppow[i] * qpow[l - i] * (qpow[i + 1] + p * qpow[l]) ** k
            total += (
                binom(n - 1, k)
                * binom(m - 1, l)
                * xpow[k]
                * ypow[l]
                * per_object[k] ** (m - 1 - l)
                * per_vertex[l] ** (n - 1 - k)
                * (qpow[k + l] * p + q * inner)
            )
    return total


def _eval_joint_float(params: ModelParams, x: float, y: float) -> float:
    """Float-mode joint PGF: same triple sum, inner powers built by cumprod."""
    n, m = params.n, params.m
    p = float(params.p)
    q = 1.0 - p
    ks = np.arange(n)
    qpow = np.power(q, np.arange(n + m + 1))
    choose_n = np.array([binom(n - 1, k) for k in range(n)], dtype=float)
    xpow = np.power(x, n - 1 - ks) * np.power(1.0 - x, ks)
    per_object = 1.0 - p + p * qpow[:n]
    per_vertex = 1.0 - p + p * qpow[:m]
    total = 0.0
    for l in range(m):
        i = np.arange(l + 1)
        weights = (
            np.array([binom(l, int(v)) for v in i], dtype=float)
            * np.power(p, i)
            * qpow[l - i]
        )
        bases = qpow[i + 1] + p * qpow[l]
        powers = np.ones((n, l + 1))
        if n > 1:
            powers[1:] = np.cumprod(np.broadcast_to(bases, (n - 1, l + 1)), axis=0)
        inner = powers @ weights
        bracket = p * qpow[:n] * qpow[l] + q * inner
        row = (
            choose_n
            * xpow
            * np.power(per_object, m - 1 - l)
            * np.power(per_vertex[l], n - 1 - ks)
            * bracket
        )
        total += (
            binom(m - 1, l)
            * y ** (m - 1 - l)
            * (1.0 - y) ** l
            * float(np.sum(row))
        )
    return float(total)


def eval_marginal_pgf(
    params: ModelParams, side: Side, t: Scalar, mode: Mode = Mode.EXACT
) -> Scalar:
    """Evaluate the marginal PGF E[t^X] (active) or E[t^Y] (passive)."""
    t = as_scalar(t, mode)
    n, m = params.n, params.m
    size, other = (n, m) if side is Side.ACTIVE else (m, n)
    p = _coerced_p(params, mode)
    qpow, _ = _power_tables(p, size)
    total = zero(mode)
    for k in range(size):
        total += (
            binom(size - 1, k)
            * t ** (size - 1 - k)
            * (1 - t) ** k
            * (1 - p + p * qpow[k]) ** other
        )
    return total


def _marginal_moments(params: ModelParams, side: Side, mode: Mode):
    size, other = (params.n, params.m) if side is Side.ACTIVE else (params.m, params.n)
    p = _coerced_p(params, mode)
    qpow, _ = _power_tables(p, size)
    return size, [binom(size - 1, k) * (1 - p + p * qpow[k]) ** other for k in range(size)]


def marginal_pmf(params: ModelParams, side: Side, mode: Mode = Mode.EXACT) -> MarginalDistribution:
    """Degree law on one side, by one-dimensional sieve inversion.

    Equals the corresponding row or column sums of ``joint_pmf`` exactly.
    """
    size, moms = _marginal_moments(params, side, mode)
    if mode is Mode.EXACT:
        scale = params.p.denominator ** (params.n * params.m)
        scaled = [_scaled_integer(v, scale) for v in moms]
        counts = [
            sum((-1) ** (kp - k) * binom(kp, k) * scaled[kp] for kp in range(k, size))
            for k in range(size)
        ]
        if any(c < 0 for c in counts):
            raise ValueError("marginal inversion produced a negative probability")
        pmf = tuple(Fraction(counts[size - 1 - a], scale) for a in range(size))
    else:
        counts = [
            sum((-1) ** (kp - k) * binom(kp, k) * moms[kp] for kp in range(k, size))
            for k in range(size)
        ]
        low = min(counts)
        if low < -CLAMP_TOL:
            raise SieveCancellationError(
                f"negative probability {low} beyond clamp tolerance; use exact mode"
            )
        pmf = tuple(max(counts[size - 1 - a], 0.0) for a in range(size))
    return MarginalDistribution(side, mode, pmf)


def recombination_check(params: ModelParams, k: int, l: int, mode: Mode = Mode.EXACT):
    """Rebuild N[k][l] from the edge/non-edge conditionals; return (lhs, rhs).

    lhs multiplies the subset count C(n-1,k) C(m-1,l) into the edge-split
    mixture p * P(avoid | edge) + (1-p) * P(avoid | no edge); rhs is the
    closed form. Callers assert lhs == rhs.
    """
    _check_orders(params, k, l)
    p = _coerced_p(params, mode)
    lhs = (
        binom(params.n - 1, k)
        * binom(params.m - 1, l)
        * (
            p * cond_nonadjacency_given_edge(params, k, l, mode)
            + (1 - p) * cond_nonadjacency_given_nonedge(params, k, l, mode)
        )
    )
    return lhs, moment_entry(params, k, l, mode)
