"""Multigradings in which the kernel of a ring map is homogeneous.

For phi: K[x_1..x_n] -> K[t_1..t_m], each generator x_i - phi(x_i) of the
elimination ideal is forced to be homogeneous. Every monomial t^alpha of
phi(x_i) therefore imposes one linear constraint

    w_{x_i} - sum_j alpha_j * w_{t_j} = 0

on weight vectors w in Z^{n+m} (domain coordinates first). An integer basis
of the constraint nullspace, projected onto the domain coordinates, yields a
grading matrix A under which every kernel element is homogeneous. A strictly
positive integer vector in the row span of A drives degree-by-degree
enumeration; without one the engine refuses to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .polyring import Monomial, RingMap


class NoPositiveWeightError(RuntimeError):
    """The grading row span contains no strictly positive vector."""


@dataclass
class HomogeneityBasis:
    """Primitive integer basis of the homogeneity space of the elimination ideal."""

    full_vectors: list[list[int]]
    constraint_rank: int
    n: int
    m: int

    @property
    def dimension(self) -> int:
        return len(self.full_vectors)


@dataclass
class GradingMatrix:
    """Maximal-rank integer grading on the domain.

    `A` is r x n with independent rows; `A_full` keeps the un-projected
    (n+m)-vectors the surviving rows came from. `positive_weight`, when
    present, is an integer vector in rowspan(A) with every entry >= 1.
    """

    A: list[list[int]]
    n: int
    A_full: list[list[int]] | None = None
    positive_weight: list[int] | None = None

    @property
    def rank(self) -> int:
        return len(self.A)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.A) for j in range(self.n)]


class Multidegree(NamedTuple):
    beta: tuple[int, ...]
    weighted_degree: int | None


def build_constraints(phi: RingMap) -> list[list[int]]:
    """One integer row per (variable, image monomial) pair.

    Variables with zero image contribute no rows and stay unconstrained; an
    image with a constant term pins w_{x_i} to 0 through the empty monomial.
    """
    n, m = phi.n, phi.m
    rows = []
    for i, image in enumerate(phi.images):
        for mono, _ in image.sorted_terms():
            row = [0] * (n + m)
            row[i] = 1
            for j, e in mono.exps:
                row[n + j] = -e
            rows.append(row)
    return rows


def homogeneity_space(phi: RingMap) -> HomogeneityBasis:
    """Primitive integer basis of the nullspace of the homogeneity constraints."""
    rows = build_constraints(phi)
    dim = phi.n + phi.m
    vectors = linalg.nullspace_primitive(rows, dim)
    return HomogeneityBasis(
        full_vectors=vectors,
        constraint_rank=dim - len(vectors),
        n=phi.n,
        m=phi.m,
    )


def domain_grading(basis: HomogeneityBasis) -> GradingMatrix:
    """Project the basis onto the domain and keep a maximal independent subset.

    Candidates are ordered by (max absolute entry, lexicographic) before the
    greedy rank selection so the result is deterministic; surviving rows stay
    aligned with their un-projected counterparts in A_full.
    """
    n = basis.n
    ordered = sorted(
        basis.full_vectors, key=lambda v: (max(map(abs, v), default=0), tuple(v))
    )
    kept_full: list[list[int]] = []
    kept_proj: list[list[int]] = []
    reducer: list[linalg.SparseRow] = []
    for vec in ordered:
        proj = vec[:n]
        row = {j: Fraction(v) for j, v in enumerate(proj) if v}
        if not row:
            continue
        for pivot in reducer:
            c = min(pivot)
            v = row.get(c)
            if not v:
                continue
            for j, pj in pivot.items():
                s = row.get(j, 0) - v * pj
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        if not row:
            continue
        c = min(row)
        pv = row[c]
        reducer.append({j: v / pv for j, v in row.items()})
        reducer.sort(key=min)
        kept_full.append(list(vec))
        kept_proj.append(list(proj))
    return GradingMatrix(A=kept_proj, n=n, A_full=kept_full)


def _feasible_point(stages: list[list[tuple[Fraction, ...]]], r: int) -> list[Fraction]:
    """Back-substitute through Fourier-Motzkin stages; stages[k] constrains u_0..u_k."""
    u: list[Fraction] = []
    for k in range(r):
        lower = None
        upper = None
        for ineq in stages[k]:
            ck = ineq[k]
            if not ck:
                continue
            rest = sum((ineq[j] * u[j] for j in range(k)), Fraction(0))
            bound = -rest / ck
            if ck > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        if lower is None and upper is None:
            u.append(Fraction(0))
        elif upper is None:
            u.append(lower + 1)
        elif lower is None:
            u.append(upper - 1)
        else:
            u.append((lower + upper) / 2)
    return u


def _positive_combination(columns: list[tuple[int, ...]], r: int) -> list[Fraction] | None:
    """Exact Fourier-Motzkin: find u in Q^r with u . c > 0 for every column."""

    def canonical(vec: tuple[Fraction, ...]) -> tuple[Fraction, ...] | None:
        # Positive scaling only: strict inequalities are orientation-sensitive.
        den = 1
        for v in vec:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        content = 0
        for v in ints:
            content = math.gcd(content, abs(v))
        if content == 0:
            return None
        return tuple(Fraction(v // content) for v in ints)

    system = []
    for col in columns:
        vec = canonical(tuple(Fraction(c) for c in col))
        if vec is None:
            return None  # 0 > 0 demanded by an all-zero column
        system.append(vec)
    system = sorted(set(system))

    stages: list[list[tuple[Fraction, ...]]] = [[] for _ in range(r)]
    current = system
    for v in range(r - 1, -1, -1):
        stages[v] = current
        zeros, lowers, uppers = [], [], []
        for ineq in current:
            cv = ineq[v]
            if cv > 0:
                lowers.append(ineq)
            elif cv < 0:
                uppers.append(ineq)
            else:
                zeros.append(ineq)
        combined = set(zeros)
        for lo in lowers:
            for up in uppers:
                new = tuple(
                    lo[j] * (-up[v]) + up[j] * lo[v] for j in range(r)
                )
                cn = canonical(new)
                if cn is None:
                    return None
                combined.add(cn)
        current = sorted(combined)
    if current:
        return None
    return _feasible_point(stages, r)


def find_positive_weight(grading: GradingMatrix) -> list[int] | None:
    """A strictly positive primitive integer vector in rowspan(A), if any.

    The all-ones vector is preferred whenever the row span contains it, so
    degree-by-degree enumeration coincides with total degree; otherwise an
    exact Fourier-Motzkin search over the row-coefficient space decides
    feasibility. Returns None when no positive vector exists.
    """
    r, n = grading.rank, grading.n
    if r == 0:
        return None
    transpose = [[grading.A[k][j] for k in range(r)] for j in range(n)]
    if linalg.solve_exact(transpose, [1] * n) is not None:
        return [1] * n
    u = _positive_combination([tuple(col) for col in transpose], r)
    if u is None:
        return None
    weight = [sum(u[k] * grading.A[k][j] for k in range(r)) for j in range(n)]
    primitive = linalg.normalize_primitive(weight)
    if any(w < 1 for w in primitive):
        raise AssertionError("positive weight search produced a non-positive vector")
    return primitive


def grading_for_map(phi: RingMap) -> GradingMatrix:
    """Homogeneity space, domain projection, and positive weight in one step."""
    grading = domain_grading(homogeneity_space(phi))
    grading.positive_weight = find_positive_weight(grading) if grading.rank else None
    return grading


def multidegree_of(grading: GradingMatrix, mono: Monomial) -> Multidegree:
    """beta = A alpha, plus the weighted degree when a positive weight exists."""
    beta = tuple(
        sum(row[i] * e for i, e in mono.exps) for row in grading.A
    )
    weighted = None
    if grading.positive_weight is not None:
        weighted = mono.weighted_degree(grading.positive_weight)
    return Multidegree(beta, weighted)
