"""Brute-force oracles, independent of the closed formulas they check.

* :func:`cech_cohomology` computes ``H^*(P^n, Ω^p(t))`` as the
  hypercohomology of the Koszul resolution
  ``Λ^{p+1+j} V ⊗ O(t-p-1-j)  ->  Ω^p(t)``, using the Čech complex of the
  standard affine cover in explicit Laurent-monomial bases.  The double
  complex splits by torus weight, each piece is finite, and ranks are taken
  over a large prime field.
* :func:`koszul_ext_skyscraper` computes ``Ext^*(k, k)`` over a polynomial
  ring from its Koszul resolution.
* :func:`euler_sequence_classes` computes K-classes of ``Ω^j(j)`` in the
  basis ``[O], [O(1)], ..., [O(m)]`` from the twisted Euler sequence.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, product
from math import factorial

import numpy as np

from .core import GradedDimension

PRIME = 2_147_483_647


def rank_mod_p(matrix, p: int = PRIME) -> int:
    """Rank of an integer matrix over ``F_p`` by Gaussian elimination."""
    m = np.array(matrix, dtype=np.int64) % p
    if m.size == 0:
        return 0
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if others.size:
            factors = m[others, col][:, None]
            m[others] = (m[others] - factors * m[rank]) % p
        rank += 1
    return rank


# -- Čech-Koszul double complex ------------------------------------------------

def _in_piece(a, I, J) -> bool:
    # x^{a - 1_J} is a section over U_I iff its negative exponents lie in I
    return all(i in I for i, ai in enumerate(a) if ai - (i in J) < 0)


def _piece_basis(n: int, p: int, a) -> dict[int, list[tuple[tuple, tuple]]]:
    """Basis ``(I, J)`` of the weight-``a`` piece, grouped by total degree ``c - j``."""
    verts = range(n + 1)
    basis: dict[int, list] = {}
    for j in range(n - p + 1):
        for J in combinations(verts, p + 1 + j):
            for c in range(n + 1):
                for I in combinations(verts, c + 1):
                    if _in_piece(a, I, J):
                        basis.setdefault(c - j, []).append((I, J))
    return basis


def _differential(n: int, p: int, I, J) -> Counter:
    """Total differential ``δ + (-1)^c d_Koszul`` of one basis element.

    Terms may leave the weight piece's support; callers filter them.
    """
    out: Counter = Counter()
    c = len(I) - 1
    for v in range(n + 1):
        if v not in I:
            newI = tuple(sorted(I + (v,)))
            out[(newI, J)] += -1 if newI.index(v) % 2 else 1
    if len(J) > p + 1:
        twist = -1 if c % 2 else 1
        for pos in range(len(J)):
            out[(I, J[:pos] + J[pos + 1:])] += (-1 if pos % 2 else 1) * twist
    return out


def _piece_cohomology(n: int, p: int, a) -> dict[int, int]:
    basis = _piece_basis(n, p, a)
    ranks = {}
    for q, src in basis.items():
        tgt = {key: r for r, key in enumerate(basis.get(q + 1, []))}
        if not tgt:
            ranks[q] = 0
            continue
        mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for col, (I, J) in enumerate(src):
            for key, coeff in _differential(n, p, I, J).items():
                row = tgt.get(key)
                if row is not None:
                    mat[row, col] += coeff
        ranks[q] = rank_mod_p(mat)
    out = {}
    for q, src in basis.items():
        h = len(src) - ranks[q] - ranks.get(q - 1, 0)
        if h:
            out[q] = h
    return out


def piece_is_complex(n: int, p: int, a) -> bool:
    """``D∘D = 0`` on the weight-``a`` piece; a self-test of the sign conventions."""
    for keys in _piece_basis(n, p, a).values():
        for I, J in keys:
            once = {k: v for k, v in _differential(n, p, I, J).items() if _in_piece(a, *k)}
            twice: Counter = Counter()
            for (I2, J2), coeff in once.items():
                for key, c2 in _differential(n, p, I2, J2).items():
                    twice[key] += coeff * c2
            if any(v for k, v in twice.items() if _in_piece(a, *k)):
                return False
    return True


def _weights(n: int, t: int):
    """Sorted torus weights that can carry cohomology, with orbit sizes.

    A weight piece is acyclic unless some term ``x^{a - 1_J}`` has Čech
    cohomology, which forces ``a >= 0`` or ``a <= 0`` coordinatewise.
    Permuting coordinates is an automorphism of ``P^n``, so one
    representative per orbit suffices.
    """
    sign = 1 if t >= 0 else -1

    def parts(remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            for rest in parts(remaining - first, slots - 1, first):
                yield (first,) + rest

    for part in parts(abs(t), n + 1, abs(t)):
        orbit = factorial(n + 1)
        for c in Counter(part).values():
            orbit //= factorial(c)
        yield tuple(sign * x for x in part), orbit


@lru_cache(maxsize=None)
def cech_cohomology(n: int, p: int, t: int) -> GradedDimension:
    """``H^*(P^n, Ω^p(t))`` by brute-force Čech hypercohomology."""
    if not 0 <= p <= n:
        raise ValueError(f"form degree {p} outside [0, {n}]")
    total: Counter = Counter()
    for rep, orbit in _weights(n, t):
        for q, h in _piece_cohomology(n, p, rep).items():
            total[q] += h * orbit
    return GradedDimension(total)


def cech_cohomology_box(n: int, p: int, t: int, radius: int) -> GradedDimension:
    """Like :func:`cech_cohomology` but summing every weight in a box, unpruned.

    Slow; exists to test the pruning and symmetry reduction.
    """
    total: Counter = Counter()
    for head in product(range(-radius, radius + 1), repeat=n):
        last = t - sum(head)
        if abs(last) > radius:
            continue
        for q, h in _piece_cohomology(n, p, head + (last,)).items():
            total[q] += h
    return GradedDimension(total)


# -- other oracles -------------------------------------------------------------

def koszul_ext_skyscraper(n: int) -> GradedDimension:
    """``Ext^*_R(k, k)`` for ``R = k[x_1..x_n]`` from the Koszul resolution.

    The resolution has terms ``Λ^i R^n`` with differential
    ``e_S -> Σ ± x_s e_{S - s}``.  ``Hom_R(-, k)`` evaluates every ``x_s`` at
    the origin; Ext is the cohomology of the resulting complex.
    """
    origin = [0] * n
    ranks = {}
    for i in range(1, n + 1):
        src = list(combinations(range(n), i))
        tgt = {S: r for r, S in enumerate(combinations(range(n), i - 1))}
        mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for col, S in enumerate(src):
            for pos, s in enumerate(S):
                mat[tgt[S[:pos] + S[pos + 1:]], col] += (-1) ** pos * origin[s]
        ranks[i] = rank_mod_p(mat)
    out = {}
    for i in range(n + 1):
        h = len(list(combinations(range(n), i))) - ranks.get(i, 0) - ranks.get(i + 1, 0)
        if h:
            out[i] = h
    return GradedDimension(out)


def euler_sequence_classes(m: int) -> list[list[int]]:
    """K-classes ``[Ω^j(j)]`` on ``P^m`` for ``j = 0..m``, in the ``[O(i)]`` basis.

    From ``0 -> Ω^j(j) -> Λ^j V ⊗ O -> Ω^{j-1}(j) -> 0``:
    ``[Ω^j(j)] = C(m+1, j)[O] - [O(1)]·[Ω^{j-1}(j-1)]``.  Multiplying by
    ``[O(1)]`` shifts coordinates up by one.
    """
    classes: list[list[int]] = []
    for j in range(m + 1):
        cls = [0] * (m + 1)
        cls[0] = len(list(combinations(range(m + 1), j)))
        if classes:
            prev = classes[-1]
            if prev[m]:
                raise ValueError("K-class left the O(0..m) span")
            for i in range(m):
                cls[i + 1] -= prev[i]
        classes.append(cls)
    return classes


def tits_roots(adjacency, max_entry: int = 6) -> set[tuple[int, ...]]:
    """Nonzero nonnegative ``d`` with ``q(d) = 1``, by enumeration in a box.

    ``q(d) = Σ d_i² - Σ_{i<j} a_ij d_i d_j``.  For a Dynkin graph these are
    exactly the positive roots.
    """
    size = len(adjacency)
    found = set()
    for d in product(range(max_entry + 1), repeat=size):
        if not any(d):
            continue
        q = sum(x * x for x in d)
        q -= sum(adjacency[i][j] * d[i] * d[j] for i in range(size) for j in range(i + 1, size))
        if q == 1:
            found.add(d)
    return found
