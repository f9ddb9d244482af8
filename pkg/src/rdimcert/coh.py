"""Cohomology of twisted differential forms on projective space.

Everything here is a closed formula evaluated in exact integer arithmetic.
The formulas are cross-checked against the Čech computation in
:mod:`rdimcert.oracles`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GradedDimension, ZERO, gd_dual, gd_shift, gd_sum, gd_tensor
from .errors import DomainError, InvariantViolation

__all__ = [
    "TwistedForm",
    "binom",
    "bott_cohomology",
    "rgamma_line",
    "ext_skyscraper",
    "pullback_skyscraper_cohomology",
    "rhom_pullback_to_truncation",
    "rhom_exc_divisor",
    "rhom_divisor_to_skyscraper_pullback",
    "rhom_dual_forms",
]


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``a < b``.

    Only called with ``a >= 0`` whenever ``b >= 0`` matters.
    """
    if b < 0 or a < b:
        return 0
    num = 1
    for i in range(b):
        num = num * (a - i) // (i + 1)
    return num


@dataclass(frozen=True)
class TwistedForm:
    """The sheaf ``Ω^p(t)`` on ``P^n``; ``p = 0`` is the line bundle ``O(t)``."""

    ambient: int
    form_degree: int
    twist: int

    def __post_init__(self):
        if self.ambient < 0:
            raise DomainError(f"ambient dimension must be >= 0, got {self.ambient}")
        if not 0 <= self.form_degree <= self.ambient:
            raise DomainError(
                f"Ω^{self.form_degree} vanishes on P^{self.ambient}; "
                f"form degree must lie in [0, {self.ambient}]"
            )

    @classmethod
    def line(cls, ambient: int, twist: int) -> TwistedForm:
        return cls(ambient, 0, twist)

    def __str__(self):
        base = "O" if self.form_degree == 0 else f"Ω^{self.form_degree}"
        return f"{base}_P{self.ambient}({self.twist})"


def bott_cohomology(f: TwistedForm) -> GradedDimension:
    """Graded dimension of ``RΓ(P^n, Ω^p(t))`` by Bott's formula.

    At most one degree is nonzero.

    >>> str(bott_cohomology(TwistedForm(2, 2, 0)))
    'k[-2]'
    """
    n, p, t = f.ambient, f.form_degree, f.twist
    if t > p:
        return GradedDimension({0: binom(t + n - p, t) * binom(t - 1, p)})
    if t == 0:
        return GradedDimension({p: 1})
    if t < p - n:
        return GradedDimension({n: binom(p - t, -t) * binom(-t - 1, n - p)})
    return ZERO


def rgamma_line(n: int, d: int) -> GradedDimension:
    if n < 0:
        raise DomainError(f"ambient dimension must be >= 0, got {n}")
    return bott_cohomology(TwistedForm.line(n, d))


def ext_skyscraper(n: int) -> GradedDimension:
    """``RHom(O_x, O_x)`` for a point on a smooth ``n``-fold: the exterior algebra."""
    if n < 0:
        raise DomainError(f"dimension must be >= 0, got {n}")
    return GradedDimension({i: binom(n, i) for i in range(n + 1)})


def pullback_skyscraper_cohomology(n: int) -> list[tuple[int, TwistedForm]]:
    """Cohomology sheaves of ``π*O_x`` for the blow-up of a point on an n-fold.

    Entry ``(k, F)`` says ``H^{-k}(π*O_x) = j_* F`` with ``F = Ω^k(k)`` on the
    exceptional divisor ``P^{n-1}``.
    """
    if n < 1:
        raise DomainError(f"blow-up of a point needs dimension >= 1, got {n}")
    return [(k, TwistedForm(n - 1, k, k)) for k in range(n)]


def rhom_pullback_to_truncation(n: int, k: int) -> GradedDimension:
    """``RHom_Y(π*L, τ_{>=-k} π*O_x)`` for any line bundle ``L`` on the base.

    ``π*L`` restricts trivially to the exceptional divisor, so each cohomology
    sheaf ``j_*Ω^m(m)`` in degree ``-m`` contributes ``RΓ(P^{n-1}, Ω^m(m))[m]``.
    Each contribution sits in a single degree, so the sum is exact.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if not 0 <= k <= n - 1:
        raise DomainError(f"truncation level {k} outside [0, {n - 1}]")
    sheaves = pullback_skyscraper_cohomology(n)[: k + 1]
    return gd_sum(*(gd_shift(bott_cohomology(form), m) for m, form in sheaves))


def rhom_exc_divisor(n: int, l: int, m: int) -> GradedDimension:
    """``RHom_Y(j_*O_E(l), j_*Ω^m(m))`` on the blow-up of a point of an n-fold.

    Uses adjunction and ``j^*j_*O(l) = O(l) ⊕ O(l+1)[1]`` on ``E = P^{n-1}``.
    """
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    if not 0 <= m <= n - 1:
        raise DomainError(f"form degree {m} outside [0, {n - 1}]")
    first = bott_cohomology(TwistedForm(n - 1, m, m - l))
    second = bott_cohomology(TwistedForm(n - 1, m, m - l - 1))
    return gd_sum(first, gd_shift(second, -1))


def rhom_divisor_to_skyscraper_pullback(n: int, l: int) -> GradedDimension:
    """``RHom_Y(j_*O_E(l), π*O_x)`` via Grothendieck duality for ``π``.

    Closed form ``RΓ(P^{n-1}, O(l-n+1))^∨ ⊗ RHom(O_x, O_x)``.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    return gd_tensor(gd_dual(rgamma_line(n - 1, l - n + 1)), ext_skyscraper(n))


def rhom_dual_forms(m: int, c: int, a: int) -> GradedDimension:
    """``RHom(Ω^c(c), Ω^a(a))`` on ``P^m``.

    This is ``Λ^{c-a} V`` in degree 0 for ``c >= a`` and zero otherwise, where
    ``V`` is the ``(m+1)``-dimensional space of linear forms.  The value is
    checked against the Euler characteristic of the Koszul resolution
    ``Λ^{c+1+j} V ⊗ O(-1-j) -> Ω^c(c)``, whose terms only need Bott's formula.
    """
    if not (0 <= a <= m and 0 <= c <= m):
        raise DomainError(f"form degrees ({c}, {a}) outside [0, {m}]")
    value = GradedDimension({0: binom(m + 1, c - a)}) if c >= a else GradedDimension()
    chi = 0
    for j in range(m - c + 1):
        h = bott_cohomology(TwistedForm(m, a, a + 1 + j))
        chi += (-1) ** j * binom(m + 1, c + 1 + j) * h[0]
    if chi != value[0]:
        raise InvariantViolation(
            f"Koszul Euler characteristic {chi} disagrees with Hom(Ω^{c}(c), Ω^{a}(a)) on P^{m}"
        )
    return value
