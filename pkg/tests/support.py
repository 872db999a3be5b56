"""Shared test helpers: golden data, independent oracles, random generators.

Independent oracles deliberately avoid the package's own elimination code:
sympy provides exact nullspaces and symbolic Jacobian ranks, and
`dense_rank_oracle` is a plain first-pivot Fraction elimination with a
different pivot policy than the package's sparse path.
"""

from __future__ import annotations

import math
import os
import random
import subprocess
import sys
from fractions import Fraction

from implicitize import (
    GradingMatrix,
    HomogeneityBasis,
    Monomial,
    Polynomial,
    RingMap,
    domain_grading,
)
from implicitize.polyring import random_polynomial

# Homogeneity basis of the Pluecker Gr(2,4) map, columns ordered like
# gen_grassmannian(4): p12 p13 p23 p14 p24 p34 | x11 x12 x13 x14 x21 x22 x23 x24.
GR24_HOMOGENEITY = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0],
    [-1, -1, -1, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1],
]
GR24_DOMAIN_PART = [row[:6] for row in GR24_HOMOGENEITY]

# The 6x3 degree-2 component system of the Gr(2,4) map: columns
# p12*p34, p13*p24, p23*p14; the kernel is spanned by (1, -1, 1).
GR24_QUADRIC_COMPONENT = [
    [0, 1, 1],
    [1, 0, -1],
    [-1, -1, 0],
    [-1, -1, 0],
    [1, 0, -1],
    [0, 1, 1],
]

# The cubic component containing p12*p34^2 (transposed: 10 rows, columns
# p12*p34^2, p13*p24*p34, p23*p14*p34); kernel (1, -1, 1), and with the
# first column removed the kernel is trivial.
_GR24_CUBIC_COMPONENT_T = [
    [0, -1, 1, 0, 2, -2, 0, -1, 1, 0],
    [-1, 0, 1, 1, 1, -1, -1, -1, 0, 1],
    [-1, 1, 0, 1, -1, 1, -1, 0, -1, 1],
]
GR24_CUBIC_COMPONENT = [list(row) for row in zip(*_GR24_CUBIC_COMPONENT_T)]


def reference_beta(mono: Monomial) -> tuple[int, ...]:
    """Multidegree of a Gr(2,4) domain monomial in the golden basis above."""
    return tuple(sum(row[i] * e for i, e in mono.exps) for row in GR24_DOMAIN_PART)


def mono_by_names(phi: RingMap, exps: dict[str, int]) -> Monomial:
    index = {name: i for i, name in enumerate(phi.domain_names)}
    return Monomial((index[name], e) for name, e in exps.items())


def poly_by_names(phi: RingMap, terms: dict[str, int | Fraction]) -> Polynomial:
    """Build a domain polynomial from {"p12*p34": coeff, ...} strings."""
    index = {name: i for i, name in enumerate(phi.domain_names)}
    built = []
    for expr, coeff in terms.items():
        pairs: dict[int, int] = {}
        if expr not in ("", "1"):
            for factor in expr.split("*"):
                if "^" in factor:
                    name, exp = factor.split("^")
                else:
                    name, exp = factor, 1
                pairs[index[name]] = pairs.get(index[name], 0) + int(exp)
        built.append((Monomial(pairs.items()), coeff))
    return Polynomial(phi.n, built)


# --- independent oracles ------------------------------------------------------


def sympy_nullspace(rows) -> list[list[Fraction]]:
    import sympy

    mat = sympy.Matrix(rows)
    return [
        [Fraction(int(v.p), int(v.q)) for v in vec]
        for vec in mat.nullspace()
    ]


def sympy_rank(rows) -> int:
    import sympy

    return sympy.Matrix(rows).rank()


def sympy_jacobian_rank(phi: RingMap, subset=None) -> int:
    """Generic (symbolic) rank of the Jacobian columns over the function field."""
    import sympy

    ts = sympy.symbols(f"t0:{phi.m}")
    cols = list(range(phi.n)) if subset is None else list(subset)

    def to_sympy(poly: Polynomial):
        expr = sympy.Integer(0)
        for mono, coeff in poly.terms.items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for i, e in mono.exps:
                term *= ts[i] ** e
            expr += term
        return expr

    images = [to_sympy(phi.images[j]) for j in cols]
    mat = sympy.Matrix([[sympy.diff(img, ts[i]) for img in images] for i in range(phi.m)])
    return mat.rank()


def dense_rank_oracle(rows) -> int:
    """Plain Fraction elimination, first-nonzero pivot top-down."""
    mat = [[Fraction(v) for v in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for c in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if mat[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(rank + 1, nrows):
            if mat[r][c]:
                factor = mat[r][c] / mat[rank][c]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def weighted_count_oracle(weights, target: int) -> int:
    """Number of e >= 0 with sum w_j e_j = target, by brute dynamic programming."""
    counts = [0] * (target + 1)
    counts[0] = 1
    for w in weights:
        for value in range(w, target + 1):
            counts[value] += counts[value - w]
    return counts[target]


def elimination_generator(phi: RingMap, i: int) -> Polynomial:
    """x_i - phi(x_i) as a polynomial in the n+m combined variables."""
    total = phi.n + phi.m
    terms = [(Monomial.variable(i), Fraction(1))]
    for mono, coeff in phi.images[i].terms.items():
        shifted = Monomial((phi.n + j, e) for j, e in mono.exps)
        terms.append((shifted, -coeff))
    return Polynomial(total, terms)


# --- random inputs ------------------------------------------------------------


def random_map(rng: random.Random, n=None, m=None) -> RingMap:
    n = n or rng.randint(1, 3)
    m = m or rng.randint(1, 3)
    images = [random_polynomial(rng, m, max_degree=2, max_terms=2) for _ in range(n)]
    return RingMap(images, m=m)


def random_monomial_map(rng: random.Random, n: int, m: int, degree: int) -> RingMap:
    """Monomial images sharing one total degree (so total-degree grading applies)."""
    images = []
    for _ in range(n):
        exps: dict[int, int] = {}
        for _ in range(degree):
            j = rng.randrange(m)
            exps[j] = exps.get(j, 0) + 1
        images.append(Polynomial(m, [(Monomial(exps.items()), 1)]))
    return RingMap(images, m=m)


def grading_from_rows(rows, n: int, weight=None) -> GradingMatrix:
    """Reduce arbitrary integer rows to an independent grading for tests."""
    basis = HomogeneityBasis(full_vectors=[list(r) for r in rows], constraint_rank=0, n=n, m=0)
    grading = domain_grading(basis)
    grading.positive_weight = weight
    return grading


# --- CLI ----------------------------------------------------------------------


def run_cli(args, stdin_text=None, hashseed="0"):
    env = os.environ.copy()
    env["PYTHONHASHSEED"] = hashseed
    proc = subprocess.run(
        [sys.executable, "-m", "implicitize", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
        env=env,
    )
    return proc.returncode, proc.stdout, proc.stderr


# --- 1000-case property suites (shared by unit tests and acceptance) ----------


def ring_laws_suite(cases: int) -> int:
    rng = random.Random(90210)
    checked = 0
    for _ in range(cases):
        n = rng.randint(1, 3)
        f = random_polynomial(rng, n, max_degree=2, max_terms=3)
        g = random_polynomial(rng, n, max_degree=2, max_terms=3)
        h = random_polynomial(rng, n, max_degree=2, max_terms=3)
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h
        k = rng.randint(0, 3)
        expected = Polynomial.constant(n, 1)
        for _ in range(k):
            expected = expected * f
        assert f**k == expected

        m = rng.randint(1, 2)
        phi = RingMap([random_polynomial(rng, m, max_degree=2, max_terms=2) for _ in range(n)], m=m)
        assert phi.apply(f * g) == phi.apply(f) * phi.apply(g)
        assert phi.apply(f + g) == phi.apply(f) + phi.apply(g)

        w = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
        assert (f.initial_form(w) == f) == f.is_homogeneous(w)
        if not f.is_zero():
            least = min(mono.weighted_degree(w) for mono in f.terms)
            assert all(
                mono.weighted_degree(w) == least for mono in f.initial_form(w).terms
            )

        p = 101
        if all(c.denominator % p for c in f.terms.values()) and all(
            c.denominator % p for c in g.terms.values()
        ):
            assert (f + g).reduce_mod_p(p) == f.reduce_mod_p(p) + g.reduce_mod_p(p)
            assert (f * g).reduce_mod_p(p) == f.reduce_mod_p(p) * g.reduce_mod_p(p)
        checked += 1
    return checked


def grading_suite(cases: int) -> int:
    from implicitize import build_constraints, homogeneity_space
    from implicitize.linalg import rank_rational

    rng = random.Random(417)
    checked = 0
    for _ in range(cases):
        phi = random_map(rng)
        total = phi.n + phi.m
        constraints = build_constraints(phi)
        basis = homogeneity_space(phi)
        for vec in basis.full_vectors:
            for row in constraints:
                assert sum(r * v for r, v in zip(row, vec)) == 0
            content = 0
            for v in vec:
                content = math.gcd(content, abs(v))
            assert content in (0, 1) and any(vec)
        assert basis.dimension + basis.constraint_rank == total
        assert basis.constraint_rank == rank_rational(constraints, total)

        gens = [elimination_generator(phi, i) for i in range(phi.n)]
        # vectors in the span keep every generator homogeneous and add no rank
        combo = [0] * total
        for vec in basis.full_vectors:
            c = rng.randint(-2, 2)
            combo = [a + c * b for a, b in zip(combo, vec)]
        assert all(g.is_homogeneous(combo) for g in gens)
        if basis.full_vectors:
            stacked = basis.full_vectors + [combo]
            assert rank_rational(stacked, total) == basis.dimension
        # arbitrary vectors that keep every generator homogeneous must lie in the span
        probe = [rng.randint(-2, 2) for _ in range(total)]
        if all(g.is_homogeneous(probe) for g in gens):
            stacked = basis.full_vectors + [probe]
            assert rank_rational(stacked, total) == basis.dimension
        checked += 1
    return checked


def enumeration_suite(cases: int) -> int:
    from implicitize import enumerate_level, multidegree_of

    rng = random.Random(55331)
    checked = 0
    for _ in range(cases):
        n = rng.randint(1, 5)
        degree = rng.randint(1, 4)
        if rng.random() < 0.5:
            rows = [[1] * n] + [
                [rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 2))
            ]
            grading = grading_from_rows(rows, n, weight=[1] * n)
            expected = math.comb(n + degree - 1, degree)
        else:
            weights = [rng.randint(1, 3) for _ in range(n)]
            grading = grading_from_rows([weights], n, weight=weights)
            expected = weighted_count_oracle(weights, degree)
        level = enumerate_level(grading, degree)
        assert level.monomial_count == expected
        betas = list(level.components)
        assert betas == sorted(betas)
        for beta, basis in level.components.items():
            for mono in basis.monomials:
                assert multidegree_of(grading, mono).beta == beta
        checked += 1
    return checked


def linalg_suite(cases: int) -> int:
    from implicitize.linalg import ComponentMatrix, exact_kernel, prescreen_trivial, sparse_rref, _to_sparse

    rng = random.Random(2718)
    checked = 0
    for _ in range(cases):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        rows = [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ncols)]
            for _ in range(nrows)
        ]
        matrix = ComponentMatrix.from_dense(rows)
        kernel = exact_kernel(matrix)
        rank = len(sparse_rref(_to_sparse(rows), ncols)[1])
        assert rank + kernel.dimension == ncols
        assert rank == dense_rank_oracle(rows)
        for vec in kernel.vectors:
            for row in rows:
                assert sum(a * v for a, v in zip(row, vec)) == 0
        renorm = kernel.normalize()
        assert renorm.vectors == kernel.vectors
        if prescreen_trivial(matrix, 101):
            assert kernel.dimension == 0
        checked += 1
    return checked
