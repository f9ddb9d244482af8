"""Exceptional collections as graded Gram matrices.

A :class:`GradedGram` records ``RHom(E_i, E_j)`` for an ordered collection,
keeping apart values that were computed, zeros that are cited from a
theorem, and entries nothing here determines.  :class:`EulerGram` is the
K-theoretic shadow used to replay mutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

from .coh import (
    TwistedForm,
    bott_cohomology,
    rgamma_line,
    rhom_dual_forms,
    rhom_pullback_to_truncation,
)
from .core import UNIT, ZERO, GradedDimension, euler_char, gd_shift
from .errors import DomainError, InvariantViolation, RuleViolation, UnsupportedGeometry
from .quiver import Quiver, star_quiver

MAX_CENTERS = 3

CITE_ORLOV = "orlov-blowup-sod"
CITE_DUAL_ORLOV = "dual-orlov-truncations"
CITE_RESIDUAL = "residual-block"
CITE_MUTATION = "block-mutation"


# -- entries and labels ----------------------------------------------------------

@dataclass(frozen=True)
class Computed:
    value: GradedDimension

    def to_json(self):
        return {"tag": "computed", "value": self.value.to_json()}

    def short(self):
        return str(self.value)


@dataclass(frozen=True)
class AssertedZero:
    citation: str

    def to_json(self):
        return {"tag": "asserted_zero", "citation": self.citation}

    def short(self):
        return "0*"


@dataclass(frozen=True)
class Unknown:
    def to_json(self):
        return {"tag": "unknown"}

    def short(self):
        return "?"


Entry = Union[Computed, AssertedZero, Unknown]


@dataclass(frozen=True)
class Residual:
    text: str = "π*A"

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class LineBundle:
    index: int
    twist: int

    def __str__(self):
        return f"L{self.index}=O({self.twist})"


@dataclass(frozen=True)
class PointTruncation:
    center: int
    level: int

    def __str__(self):
        return f"τ≥-{self.level}π*O_x{self.center}"


@dataclass(frozen=True)
class DivisorDual:
    center: int
    index: int

    def __str__(self):
        return f"j*p*L̃{self.index}@{self.center}"


ObjectLabel = Union[Residual, LineBundle, PointTruncation, DivisorDual]


class GradedGram:
    """Square table of graded-Hom entries over an ordered list of labels.

    Invariants checked on construction: labels are unique, diagonal entries
    of objects are ``Computed(k[0])``, and nothing strictly below the
    diagonal is nonzero or unknown.  A :class:`Residual` label stands for a
    whole block, so its diagonal is exempt.
    """

    def __init__(self, labels: Sequence[ObjectLabel], entries: Sequence[Sequence[Entry]]):
        self.labels = tuple(labels)
        self.entries = tuple(tuple(row) for row in entries)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InvariantViolation("labels are not unique")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise InvariantViolation("entry table is not square")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        for i in range(n):
            diag = self.entries[i][i]
            if not isinstance(self.labels[i], Residual) and diag != Computed(UNIT):
                raise InvariantViolation(f"{self.labels[i]} is not exceptional: {diag}")
            for j in range(i):
                e = self.entries[i][j]
                if isinstance(e, Unknown) or (isinstance(e, Computed) and e.value):
                    raise InvariantViolation(
                        f"entry ({self.labels[i]}, {self.labels[j]}) breaks semiorthogonality"
                    )

    def __len__(self):
        return len(self.labels)

    def index(self, label: ObjectLabel) -> int:
        return self._index[label]

    def entry(self, a, b) -> Entry:
        i = a if isinstance(a, int) else self._index[a]
        j = b if isinstance(b, int) else self._index[b]
        return self.entries[i][j]

    def value(self, a, b) -> Optional[GradedDimension]:
        e = self.entry(a, b)
        if isinstance(e, Computed):
            return e.value
        if isinstance(e, AssertedZero):
            return ZERO
        return None

    def to_json(self):
        return {
            "labels": [str(lab) for lab in self.labels],
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    def render(self) -> str:
        names = [str(lab) for lab in self.labels]
        cells = [[e.short() for e in row] for row in self.entries]
        width = max(len(s) for s in names + [c for row in cells for c in row])
        head = " " * width + " | " + " | ".join(s.ljust(width) for s in names)
        lines = [head, "-" * len(head)]
        for name, row in zip(names, cells):
            lines.append(name.ljust(width) + " | " + " | ".join(c.ljust(width) for c in row))
        return "\n".join(lines)


def beilinson_gram(n: int) -> GradedGram:
    """``⟨O, O(1), ..., O(n)⟩`` on ``P^n``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    labels = [LineBundle(i, i) for i in range(n + 1)]
    entries = [
        [Computed(rgamma_line(n, j - i)) if i <= j else Computed(ZERO) for j in range(n + 1)]
        for i in range(n + 1)
    ]
    return GradedGram(labels, entries)


# -- dual collection on projective space -----------------------------------------

@dataclass(frozen=True)
class DualCollection:
    """Dual of ``⟨O, ..., O(m)⟩`` as ``Ω^i(i)[i]``, listed in the dual order.

    ``verification[i][j] = RHom(O(i), Ω^j(j)[j])``.
    """

    ambient: int
    objects: tuple[tuple[TwistedForm, int], ...]
    verification: tuple[tuple[GradedDimension, ...], ...]

    def is_identity(self) -> bool:
        return all(
            self.verification[i][j] == (UNIT if i == j else ZERO)
            for i in range(self.ambient + 1)
            for j in range(self.ambient + 1)
        )


def dual_collection_pm(m: int) -> DualCollection:
    if m < 0:
        raise DomainError("m must be >= 0")
    objects = tuple((TwistedForm(m, i, i), i) for i in range(m, -1, -1))
    verification = tuple(
        tuple(gd_shift(bott_cohomology(TwistedForm(m, j, j - i)), j) for j in range(m + 1))
        for i in range(m + 1)
    )
    return DualCollection(m, objects, verification)


# -- K-theoretic mutations ----------------------------------------------------------

def _det(rows) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class EulerGram:
    """Unit upper-triangular Euler form ``χ(E_i, E_j)`` with K-classes of the ``E_i``.

    ``basis_classes[i]`` expresses ``[E_i]`` in the ambient K-basis, i.e. the
    collection the gram was first built from.
    """

    gram: tuple[tuple[int, ...], ...]
    basis_classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        for i in range(n):
            if len(self.gram[i]) != n:
                raise InvariantViolation("gram is not square")
            if self.gram[i][i] != 1 or any(self.gram[i][j] for j in range(i)):
                raise InvariantViolation("gram is not unit upper-triangular")
        if len(self.basis_classes) != n or abs(_det(self.basis_classes)) != 1:
            raise InvariantViolation("basis classes are not unimodular")

    @classmethod
    def from_matrix(cls, gram) -> EulerGram:
        n = len(gram)
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(tuple(tuple(int(x) for x in row) for row in gram), ident)

    @classmethod
    def from_graded(cls, g: GradedGram) -> EulerGram:
        rows = []
        for i in range(len(g)):
            row = []
            for j in range(len(g)):
                v = g.value(i, j)
                if v is None:
                    raise DomainError(f"entry ({g.labels[i]}, {g.labels[j]}) is unknown")
                row.append(euler_char(v))
            rows.append(row)
        return cls.from_matrix(rows)

    def size(self) -> int:
        return len(self.gram)


def _substitute(g: EulerGram, i: int, new_i, new_next) -> EulerGram:
    """Replace rows ``i, i+1`` by the given combinations ``{index: coeff}``."""
    n = g.size()
    u = [[int(r == c) for c in range(n)] for r in range(n)]
    u[i] = [new_i.get(c, 0) for c in range(n)]
    u[i + 1] = [new_next.get(c, 0) for c in range(n)]
    classes = tuple(
        tuple(sum(u[r][k] * g.basis_classes[k][c] for k in range(n)) for c in range(len(g.basis_classes[0])))
        for r in range(n)
    )
    ug = [[sum(u[r][k] * g.gram[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    gram = tuple(tuple(sum(ug[r][k] * u[c][k] for k in range(n)) for c in range(n)) for r in range(n))
    return EulerGram(gram, classes)


def _check_index(g: EulerGram, i: int):
    if not 0 <= i < g.size() - 1:
        raise DomainError(f"mutation index {i} out of range for size {g.size()}")


def k_mutation_right(g: EulerGram, i: int) -> EulerGram:
    """``(E_i, E_{i+1}) -> (E_{i+1}, χ(E_i,E_{i+1}) E_{i+1} - E_i)``."""
    _check_index(g, i)
    a = g.gram[i][i + 1]
    return _substitute(g, i, {i + 1: 1}, {i + 1: a, i: -1})


def k_mutation_left(g: EulerGram, i: int) -> EulerGram:
    """``(F_i, F_{i+1}) -> (χ(F_i,F_{i+1}) F_i - F_{i+1}, F_i)``; inverse of the right one."""
    _check_index(g, i)
    a = g.gram[i][i + 1]
    return _substitute(g, i, {i: a, i + 1: -1}, {i: 1})


def dual_decomposition_k(g: EulerGram) -> EulerGram:
    """Move the last object to the front through everything before it, then the
    new last object to second place, and so on, by left mutations."""
    k = g.size()
    for s in range(k - 1):
        for i in range(k - 2, s - 1, -1):
            g = k_mutation_left(g, i)
    return g


# -- blow-up collections ---------------------------------------------------------------

class CenterKind(str, Enum):
    POINT = "point"
    LINEAR_CODIM2 = "linear_codim2"
    STRICT_TRANSFORM_LINE = "strict_transform_line"
    LINEAR = "linear"


@dataclass(frozen=True)
class Center:
    """A blow-up center.  ``dim`` is only used (and required) for ``LINEAR``."""

    kind: CenterKind
    dim: Optional[int] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "kind", CenterKind(self.kind))
        if self.kind is CenterKind.LINEAR:
            if self.dim is None or self.dim < 0:
                raise DomainError("a linear center needs a dimension >= 0")
        elif self.dim is not None:
            raise DomainError(f"{self.kind.value} centers take no dimension")

    @classmethod
    def point(cls):
        return cls(CenterKind.POINT)

    @classmethod
    def codim2(cls):
        return cls(CenterKind.LINEAR_CODIM2)

    @classmethod
    def strict_line(cls):
        return cls(CenterKind.STRICT_TRANSFORM_LINE)

    @classmethod
    def linear(cls, dim: int):
        return cls(CenterKind.LINEAR, dim)

    def dimension(self, n: int) -> int:
        if self.kind is CenterKind.POINT:
            return 0
        if self.kind is CenterKind.LINEAR_CODIM2:
            return n - 2
        if self.kind is CenterKind.STRICT_TRANSFORM_LINE:
            return 1
        return self.dim

    def to_json(self):
        out = {"kind": self.kind.value}
        if self.dim is not None:
            out["dim"] = self.dim
        return out

    def __str__(self):
        return self.kind.value if self.dim is None else f"{self.kind.value}({self.dim})"


def center_codimension(c: Center, n: int) -> int:
    d = c.dimension(n)
    if not 0 <= d < n:
        raise DomainError(f"center {c} of dimension {d} does not fit in dimension {n}")
    return n - d


def build_blowup_collection(
    n: int,
    centers: Sequence[Center],
    line_twists: Optional[Sequence[int]] = None,
    residual: str = "π*⟨O, O(1)⟩",
    residual_citation: str = CITE_RESIDUAL,
) -> GradedGram:
    """Gram of ``⟨π*A, L_0..L_{n-2}, {S_b,n-2}, ..., {S_b,0}⟩`` on the blow-up.

    ``line_twists`` are the twists ``t`` with ``L_i = π*O(t_i)`` pulled back
    from ``P^n``; they must be consecutive and default to ``2..n``.  A point
    center contributes truncations ``τ_{>=-k} π*O_x``; a codimension-2
    center ``Z = P^{n-2}`` contributes ``j_*p^*`` of the dual of the
    restricted line bundles.
    """
    if n < 2:
        raise DomainError("blow-up collections need dimension >= 2")
    if len(centers) > MAX_CENTERS:
        raise RuleViolation(
            "at_most_three_centers",
            f"{len(centers)} centers given; the quiver blocks are Dynkin only for at most three",
        )
    twists = list(range(2, n + 1)) if line_twists is None else list(line_twists)
    if len(twists) != n - 1 or any(b - a != 1 for a, b in zip(twists, twists[1:])):
        raise DomainError(f"need {n - 1} consecutive line bundle twists, got {twists}")
    codims = []
    for c in centers:
        codim = center_codimension(c, n)
        if codim not in (2, n):
            raise UnsupportedGeometry(
                "center_point_or_codim2",
                f"center {c} has codimension {codim}; only points and codimension-2 centers are supported",
            )
        codims.append(codim)

    labels: list[ObjectLabel] = [Residual(residual)]
    labels += [LineBundle(i, t) for i, t in enumerate(twists)]
    for k in range(n - 2, -1, -1):
        for b, codim in enumerate(codims):
            labels.append(PointTruncation(b, k) if codim == n else DivisorDual(b, k))

    duality = dual_collection_pm(n - 2).verification
    size = len(labels)
    entries: list[list[Entry]] = [[Unknown()] * size for _ in range(size)]
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            entries[i][j] = _entry(n, x, y, i, j, duality, residual_citation)
    return GradedGram(labels, entries)


def _entry(n, x, y, i, j, duality, residual_citation) -> Entry:
    if isinstance(x, Residual) or isinstance(y, Residual):
        if i == j:
            return Unknown()
        return AssertedZero(residual_citation) if i > j else Unknown()
    if isinstance(x, LineBundle) and isinstance(y, LineBundle):
        # π* is fully faithful
        return Computed(rgamma_line(n, y.twist - x.twist))
    if isinstance(x, LineBundle):
        if isinstance(y, PointTruncation):
            return Computed(rhom_pullback_to_truncation(n, y.level))
        return Computed(duality[x.index][y.index])
    if isinstance(y, LineBundle):
        return AssertedZero(CITE_ORLOV)
    # both supported on exceptional divisors
    if x.center != y.center:
        return Computed(ZERO)
    if isinstance(x, DivisorDual):
        # j_*p^* is fully faithful: RHom_Z(Ω^a(a)[a], Ω^c(c)[c])
        a, c = x.index, y.index
        return Computed(gd_shift(rhom_dual_forms(n - 2, a, c), c - a))
    if i == j:
        return Computed(UNIT)
    return AssertedZero(CITE_DUAL_ORLOV) if i > j else Unknown()


def group_into_quivers(g: GradedGram, b: int, n: int) -> list[tuple[tuple[ObjectLabel, ...], Quiver]]:
    """Split the line bundles and divisor objects into ``n-1`` star-quiver blocks.

    Block ``i`` holds ``L_{n-2-i}`` and the matching object of every center.
    Inside a block the only nonzero Homs must be ``k[0]`` from the line
    bundle to each divisor object.
    """
    groups = []
    for i in range(n - 1):
        k = n - 2 - i
        source = [lab for lab in g.labels if isinstance(lab, LineBundle) and lab.index == k]
        targets = [
            lab for lab in g.labels
            if (isinstance(lab, PointTruncation) and lab.level == k)
            or (isinstance(lab, DivisorDual) and lab.index == k)
        ]
        if len(source) != 1 or len(targets) != b:
            raise InvariantViolation(f"block {i} does not have one line bundle and {b} divisor objects")
        src = source[0]
        targets.sort(key=lambda lab: lab.center)
        for t in targets:
            if g.value(src, t) != UNIT:
                raise InvariantViolation(f"RHom({src}, {t}) = {g.value(src, t)}, expected k[0]")
            if g.value(t, src) != ZERO:
                raise InvariantViolation(f"RHom({t}, {src}) is not zero")
            for u in targets:
                if u != t and g.value(t, u) != ZERO:
                    raise InvariantViolation(f"RHom({t}, {u}) is not zero")
        groups.append(((src, *targets), star_quiver(b)))
    return groups
