"""Quivers: Dynkin classification, Tits forms, positive roots, and a
finite-field enumeration of indecomposable representations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError, UnknownRdimError

DimensionVector = tuple[int, ...]

BRUTE_FORCE_MAX_TOTAL = 5


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise DomainError("vertex_count must be >= 0")
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        for s, t in arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise DomainError(f"arrow {s}->{t} out of range for {self.vertex_count} vertices")
        object.__setattr__(self, "arrows", arrows)

    def adjacency(self) -> list[list[int]]:
        """Symmetric count of edges between distinct vertices (loops on the diagonal)."""
        adj = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for s, t in self.arrows:
            adj[s][t] += 1
            if s != t:
                adj[t][s] += 1
        return adj


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int
    alias: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise DomainError(f"no Dynkin type {self.family}_{self.rank}")

    @classmethod
    def parse(cls, text: str) -> DynkinType:
        text = text.strip().upper().replace("_", "")
        if len(text) < 2 or not text[1:].isdigit():
            raise DomainError(f"cannot parse Dynkin type {text!r}")
        family, rank = text[0], int(text[1:])
        if family == "D" and rank == 3:
            return cls("A", 3, alias="D3")
        return cls(family, rank)

    def __str__(self):
        return f"{self.family}{self.rank}"

    def num_positive_roots(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family == "D":
            return n * (n - 1)
        return {6: 36, 7: 63, 8: 120}[n]


def star_quiver(b: int) -> Quiver:
    """One source (vertex 0) with an arrow to each of ``b`` targets."""
    if b < 0:
        raise DomainError("number of targets must be >= 0")
    return Quiver(1 + b, tuple((0, i) for i in range(1, b + 1)))


def canonical_quiver(t: DynkinType) -> Quiver:
    n = t.rank
    if t.family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    return Quiver(n, tuple(edges))


def _is_connected(adj) -> bool:
    n = len(adj)
    if n == 0:
        return False
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in range(n):
            if adj[v][w] and w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


def classify_dynkin(q: Quiver) -> Optional[DynkinType]:
    """ADE type of the underlying graph, or ``None`` if it is not one."""
    adj = q.adjacency()
    n = q.vertex_count
    if any(adj[i][i] for i in range(n)):
        return None
    if any(adj[i][j] > 1 for i in range(n) for j in range(n)):
        return None
    if not _is_connected(adj):
        return None
    edge_count = sum(map(sum, adj)) // 2
    if edge_count != n - 1:
        return None
    degree = [sum(row) for row in adj]
    branches = [v for v in range(n) if degree[v] >= 3]
    if not branches:
        if n == 3:
            return DynkinType("A", 3, alias="D3")
        return DynkinType("A", n)
    if len(branches) > 1 or degree[branches[0]] > 3:
        return None
    center = branches[0]
    arms = []
    for start in range(n):
        if not adj[center][start]:
            continue
        length, prev, cur = 1, center, start
        while degree[cur] == 2:
            cur, prev = next(w for w in range(n) if adj[cur][w] and w != prev), cur
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return DynkinType("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    return None


def tits_form(q: Quiver) -> list[list[int]]:
    """Doubled symmetric Tits form: ``2 q(d) = dᵀ M d``."""
    adj = q.adjacency()
    n = q.vertex_count
    return [
        [2 - 2 * adj[i][i] if i == j else -adj[i][j] for j in range(n)]
        for i in range(n)
    ]


def leading_minors(m: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination.

    Stops at the first zero pivot; the returned list is then shorter.
    """
    a = [list(map(int, row)) for row in m]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def is_positive_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion, in exact integer arithmetic."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DomainError("matrix is not square")
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise DomainError("matrix is not symmetric")
    minors = leading_minors(m)
    return len(minors) == n and all(x > 0 for x in minors)


def positive_definite_batch(mats: np.ndarray) -> np.ndarray:
    """Vectorised Sylvester test over a stack of symmetric integer matrices."""
    a = mats.astype(np.int64).copy()
    count, n, _ = a.shape
    ok = np.ones(count, dtype=bool)
    prev = np.ones(count, dtype=np.int64)
    for k in range(n):
        pivot = a[:, k, k].copy()
        ok &= pivot > 0
        safe = np.where(pivot == 0, 1, pivot)
        sub = a[:, k + 1:, k + 1:] * safe[:, None, None] - a[:, k + 1:, k, None] * a[:, None, k, k + 1:]
        a[:, k + 1:, k + 1:] = sub // prev[:, None, None]
        prev = safe
    return ok


def reflection_closure(cartan: Sequence[Sequence[int]]) -> set[DimensionVector]:
    """Positive roots: simple roots closed under simple reflections.

    ``s_i(v) = v - (C v)_i e_i`` for the symmetric Cartan matrix ``C``.
    Terminates only for finite type, so a size guard is kept.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    todo = deque(simple)
    while todo:
        v = todo.popleft()
        for i in range(n):
            pairing = sum(cartan[i][j] * v[j] for j in range(n))
            w = list(v)
            w[i] -= pairing
            w = tuple(w)
            if any(x < 0 for x in w) or w in roots:
                continue
            roots.add(w)
            todo.append(w)
            if len(roots) > 10_000:
                raise DomainError("reflection closure does not terminate (not finite type)")
    return roots


def quiver_positive_roots(q: Quiver) -> set[DimensionVector]:
    """Positive roots of a Dynkin quiver, in its own vertex labelling."""
    if classify_dynkin(q) is None:
        raise DomainError("quiver is not of Dynkin type")
    return reflection_closure(tits_form(q))


def positive_roots(t: DynkinType) -> set[DimensionVector]:
    return reflection_closure(tits_form(canonical_quiver(t)))


# -- representations over F_2 ---------------------------------------------------

def _matrices(rows: int, cols: int):
    for bits in product((0, 1), repeat=rows * cols):
        yield tuple(tuple(bits[r * cols:(r + 1) * cols]) for r in range(rows))


def _mul(a, b, inner: int):
    rows = len(a)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[r][k] & b[k][c] for k in range(inner)) & 1 for c in range(cols))
        for r in range(rows)
    )


def _transvections(m: int):
    """Elementary matrices ``I + E_ij``; they generate ``GL_m(F_2)`` and are involutions."""
    for i in range(m):
        for j in range(m):
            if i != j:
                yield tuple(tuple(int(r == c or (r == i and c == j)) for c in range(m)) for r in range(m))


def _act(q: Quiver, d, rep, vertex: int, g):
    """Base change by ``g`` at one vertex: ``M -> g M`` on incoming, ``M -> M g^{-1}`` outgoing."""
    out = list(rep)
    for a, (s, t) in enumerate(q.arrows):
        m = out[a]
        if t == vertex:
            m = _mul(g, m, d[vertex])
        if s == vertex:
            m = _mul(m, g, d[vertex])  # g is an involution
        out[a] = m
    return tuple(out)


@lru_cache(maxsize=None)
def _idempotents(m: int) -> tuple:
    """All idempotent ``m x m`` matrices over ``F_2`` as projections ``U ⊕ W``."""
    if m == 0:
        return ((),)
    found = set()
    if m <= 3:
        for e in _matrices(m, m):
            if _mul(e, e, m) == e:
                found.add(e)
        return tuple(sorted(found))
    # m >= 4: e is determined by its image and kernel, which are spans of columns
    subspaces = _subspaces(m)
    for U in subspaces:
        for W in subspaces:
            if len(U) * len(W) != 2 ** m or len(set(U) & set(W)) != 1:
                continue
            # decompose each basis vector e_c = u + w, u in U, w in W
            lookup = {}
            for u in U:
                for w in W:
                    lookup[tuple(x ^ y for x, y in zip(u, w))] = u
            cols = [lookup[tuple(int(r == c) for r in range(m))] for c in range(m)]
            found.add(tuple(tuple(cols[c][r] for c in range(m)) for r in range(m)))
    return tuple(sorted(found))


def _subspaces(m: int) -> list[tuple]:
    """Every subspace of ``F_2^m`` as a sorted tuple of its vectors."""
    zero = (0,) * m
    spaces = {frozenset([zero])}
    frontier = list(spaces)
    basis_vectors = list(product((0, 1), repeat=m))
    while frontier:
        nxt = []
        for space in frontier:
            for v in basis_vectors:
                if v in space:
                    continue
                bigger = frozenset(space | {tuple(x ^ y for x, y in zip(v, s)) for s in space})
                if bigger not in spaces:
                    spaces.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return [tuple(sorted(s)) for s in spaces]


def _has_nontrivial_idempotent(q: Quiver, d, rep) -> bool:
    choices = [_idempotents(dv) for dv in d]
    for es in product(*choices):
        trivial_zero = all(all(not any(row) for row in e) for e in es)
        trivial_one = all(
            all(e[r][c] == int(r == c) for r in range(len(e)) for c in range(len(e))) for e in es
        )
        if trivial_zero or trivial_one:
            continue
        commutes = True
        for a, (s, t) in enumerate(q.arrows):
            m = rep[a]
            if _mul(es[t], m, d[t]) != _mul(m, es[s], d[s]):
                commutes = False
                break
        if commutes:
            return True
    return False


def brute_force_indecomposables(q: Quiver, d: DimensionVector) -> int:
    """Isomorphism classes of indecomposable representations over ``F_2``.

    Enumerates every tuple of matrices, splits the set into orbits of the
    base-change group (generated by transvections at each vertex), and keeps
    the orbits whose representative has no idempotent endomorphism other
    than 0 and 1.
    """
    d = tuple(int(x) for x in d)
    if len(d) != q.vertex_count or any(x < 0 for x in d):
        raise DomainError("dimension vector does not match the quiver")
    if classify_dynkin(q) is None:
        raise DomainError("brute force is only supported for Dynkin quivers")
    if sum(d) > BRUTE_FORCE_MAX_TOTAL:
        raise ResourceLimitError(
            f"total dimension {sum(d)} exceeds the cap {BRUTE_FORCE_MAX_TOTAL}"
        )
    if sum(d) == 0:
        return 0
    spaces = [list(_matrices(d[t], d[s])) for s, t in q.arrows]
    generators = [(v, g) for v in range(q.vertex_count) for g in _transvections(d[v])]
    seen = set()
    count = 0
    for rep in product(*spaces):
        if rep in seen:
            continue
        orbit = {rep}
        todo = [rep]
        while todo:
            cur = todo.pop()
            for v, g in generators:
                nxt = _act(q, d, cur, v, g)
                if nxt not in orbit:
                    orbit.add(nxt)
                    todo.append(nxt)
        seen |= orbit
        if not _has_nontrivial_idempotent(q, d, rep):
            count += 1
    return count


def quiver_category_rdim(q: Quiver) -> int:
    """Rouquier dimension of ``D^b(rep Q)``: zero for Dynkin quivers.

    Hereditary path algebra plus finite representation type; anything else
    is outside what this tool can certify.
    """
    if classify_dynkin(q) is None:
        raise UnknownRdimError("quiver is not of ADE type; its Rouquier dimension is not determined here")
    return 0
