"""Rouquier dimension certificates for towers of blow-ups of projective space.

The upper bound comes from a semiorthogonal decomposition whose components
all have known Rouquier dimension, glued by ``rdim ≤ Σ rdim(A_i) + (#A - 1)``.
The lower bound is the dimension of the variety.  When they agree the tower
satisfies Orlov's conjecture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .coh import (
    TwistedForm,
    bott_cohomology,
    rhom_divisor_to_skyscraper_pullback,
    rhom_exc_divisor,
    rhom_pullback_to_truncation,
)
from .core import UNIT, ZERO
from .errors import ConfigError, DomainError, RuleViolation, UnsupportedGeometry
from .quiver import classify_dynkin, quiver_category_rdim
from .sod import (
    CITE_MUTATION,
    CITE_RESIDUAL,
    MAX_CENTERS,
    Center,
    CenterKind,
    DivisorDual,
    GradedGram,
    LineBundle,
    PointTruncation,
    build_blowup_collection,
    center_codimension,
    group_into_quivers,
)

# deepest tower each base dimension supports; n >= 4 allows one level
MAX_DEPTH = {2: 3, 3: 2}


class ComponentKind(str, Enum):
    RESIDUAL = "residual"
    QUIVER = "quiver_category"
    EXCEPTIONAL = "exceptional_object"


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    label: str
    rdim: int
    dynkin: str | None = None

    def to_json(self):
        out = {"kind": self.kind.value, "label": self.label, "rdim": self.rdim}
        if self.dynkin is not None:
            out["dynkin"] = self.dynkin
        return out


@dataclass(frozen=True)
class Step:
    tag: str
    text: str

    def to_json(self):
        return {"tag": self.tag, "text": self.text}


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str

    def to_json(self):
        return {"id": self.id, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class Certificate:
    components: list[Component]
    upper_bound: int
    lower_bound: int
    verified: bool
    steps: list[Step]
    assumptions: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    grams: list[GradedGram] = field(default_factory=list)

    def to_json(self):
        return {
            "components": [c.to_json() for c in self.components],
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "verified": self.verified,
            "steps": [s.to_json() for s in self.steps],
            "assumptions": list(self.assumptions),
            "grams": [g.to_json() for g in self.grams],
        }


@dataclass(frozen=True)
class TowerSpec:
    base_dim: int
    levels: tuple[tuple[Center, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(level) for level in self.levels))

    @classmethod
    def single(cls, n: int, centers: Sequence[Center]) -> TowerSpec:
        return cls(n, (tuple(centers),))

    def to_json(self):
        return {
            "base": {"type": "projective_space", "dim": self.base_dim},
            "levels": [{"centers": [c.to_json() for c in level]} for level in self.levels],
        }

    @classmethod
    def from_json(cls, data) -> TowerSpec:
        """Parse the closed config schema; anything unexpected is a :class:`ConfigError`."""
        _require_keys(data, {"base", "levels"}, "config")
        base = data["base"]
        _require_keys(base, {"type", "dim"}, "base")
        if base["type"] != "projective_space":
            raise ConfigError(f"unsupported base type {base['type']!r}")
        dim = base["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise ConfigError("base.dim must be an integer")
        if not isinstance(data["levels"], list):
            raise ConfigError("levels must be a list")
        levels = []
        for i, level in enumerate(data["levels"]):
            _require_keys(level, {"centers"}, f"levels[{i}]")
            if not isinstance(level["centers"], list):
                raise ConfigError(f"levels[{i}].centers must be a list")
            centers = []
            for j, c in enumerate(level["centers"]):
                where = f"levels[{i}].centers[{j}]"
                if not isinstance(c, dict) or "kind" not in c:
                    raise ConfigError(f"{where} must be an object with a 'kind'")
                allowed = {"kind", "dim"} if c["kind"] == "linear" else {"kind"}
                _require_keys(c, allowed, where, optional={"dim"} & allowed)
                try:
                    centers.append(Center(CenterKind(c["kind"]), c.get("dim")))
                except (ValueError, DomainError) as exc:
                    raise ConfigError(f"{where}: {exc}") from None
            levels.append(tuple(centers))
        return cls(dim, tuple(levels))


def _require_keys(obj, keys, where, optional=frozenset()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    extra = set(obj) - set(keys)
    missing = set(keys) - set(optional) - set(obj)
    if extra:
        raise ConfigError(f"{where}: unknown field(s) {sorted(extra)}")
    if missing:
        raise ConfigError(f"{where}: missing field(s) {sorted(missing)}")


# -- bounds ----------------------------------------------------------------------------

def glueing_bound(rdims: Sequence[int]) -> int:
    if not rdims:
        raise DomainError("glueing bound needs at least one component")
    if any(r < 0 for r in rdims):
        raise DomainError("Rouquier dimensions are nonnegative")
    return sum(rdims) + len(rdims) - 1


def lower_bound(n: int) -> int:
    """``dim X ≤ rdim D^b(X)`` for smooth ``X``."""
    if n < 0:
        raise DomainError("dimension must be >= 0")
    return n


def orlov_component_count(n: int, center_dims: Sequence[int]) -> int:
    """Exceptional objects added by blowing up linear centers of ``P^n``.

    Each center ``P^d`` contributes ``codim - 1`` copies of ``D^b(P^d)``,
    i.e. ``(n - d - 1)(d + 1)`` objects.
    """
    for d in center_dims:
        if not 0 <= d < n:
            raise DomainError(f"center dimension {d} outside [0, {n})")
    return sum((n - d - 1) * (d + 1) for d in center_dims)


# -- tower rules -------------------------------------------------------------------------

def check_tower(t: TowerSpec) -> None:
    """Raise :class:`RuleViolation` or :class:`UnsupportedGeometry` on any failed hypothesis."""
    n = t.base_dim
    if not isinstance(n, int) or n < 2:
        raise RuleViolation("base_dim_at_least_2", f"base dimension must be >= 2, got {n}")
    if not t.levels:
        raise RuleViolation("at_least_one_level", "a tower needs at least one blow-up level")
    depth = MAX_DEPTH.get(n, 1)
    if len(t.levels) > depth:
        raise RuleViolation(
            "tower_depth",
            f"P^{n} keeps enough exceptional line bundles for at most {depth} level(s); got {len(t.levels)}",
        )
    for lvl, centers in enumerate(t.levels, start=1):
        if not centers:
            raise RuleViolation("nonempty_level", f"level {lvl} has no centers")
        if len(centers) > MAX_CENTERS:
            raise RuleViolation(
                "at_most_three_centers",
                f"level {lvl} blows up {len(centers)} centers; at most three are allowed per level",
            )
        for c in centers:
            _check_center(n, lvl, c)


def _check_center(n: int, lvl: int, c: Center):
    if c.kind is CenterKind.STRICT_TRANSFORM_LINE:
        if n != 3 or lvl < 2:
            raise RuleViolation(
                "strict_transform_line_on_p3_upper_level",
                f"strict-transform lines are only allowed at level >= 2 over P^3 (got P^{n}, level {lvl})",
            )
        return
    if c.kind is CenterKind.POINT:
        return
    if lvl >= 2:
        raise RuleViolation(
            "upper_level_points_or_lines",
            f"level {lvl} centers must be points (or strict-transform lines over P^3), got {c}",
        )
    d = c.dimension(n)
    if not 0 <= d < n:
        raise RuleViolation("proper_linear_subspace", f"center {c} is not a proper linear subspace of P^{n}")
    codim = n - d
    if codim not in (2, n):
        added = orlov_component_count(n, [d])
        blocks = math.ceil(added / 3)
        raise UnsupportedGeometry(
            "center_point_or_codim2",
            f"a {d}-dimensional center in P^{n} has codimension {codim}; only points and codimension-2 "
            f"centers are supported. Blowing it up adds {added} exceptional objects to {n + 1} line "
            f"bundles, which cannot be grouped into fewer than {blocks} D4-quiver blocks",
        )


# -- point blow-up identities----------------------------------------------------------------

def verify_appendix(n: int) -> list[Check]:
    """Vanishing and unit identities behind the dual-Orlov decomposition for a point on an n-fold."""
    if n < 2:
        raise DomainError("need dimension >= 2")
    checks = []
    for l in range(0, n - 2):
        for m in range(l + 2, n):
            v = rhom_exc_divisor(n, l, m)
            checks.append(Check(f"exc_divisor(n={n},l={l},m={m})", v == ZERO, str(v)))
    for l in range(0, n - 1):
        v = rhom_divisor_to_skyscraper_pullback(n, l)
        checks.append(Check(f"divisor_to_pullback(n={n},l={l})", v == ZERO, str(v)))
    for k in range(n):
        v = rhom_pullback_to_truncation(n, k)
        checks.append(Check(f"pullback_to_truncation(n={n},k={k})", v == UNIT, str(v)))
    for m in range(n):
        v = bott_cohomology(TwistedForm(n - 1, m, m))
        expected = UNIT if m == 0 else ZERO
        checks.append(Check(f"bott_dichotomy(P^{n - 1},m={m})", v == expected, str(v)))
    return checks


# -- certification -------------------------------------------------------------------------

def _level_checks(lvl: int, gram: GradedGram, n: int) -> list[Check]:
    checks = []
    lines = [lab for lab in gram.labels if isinstance(lab, LineBundle)]
    for src in lines:
        for tgt in gram.labels:
            if isinstance(tgt, PointTruncation):
                expected = UNIT
            elif isinstance(tgt, DivisorDual):
                expected = UNIT if tgt.index == src.index else ZERO
            else:
                continue
            v = gram.value(src, tgt)
            checks.append(Check(f"level{lvl}.rhom({src},{tgt})", v == expected, str(v)))
    divisor_objects = sum(isinstance(lab, (PointTruncation, DivisorDual)) for lab in gram.labels)
    centers = {lab.center for lab in gram.labels if isinstance(lab, (PointTruncation, DivisorDual))}
    expected_count = (n - 1) * len(centers)
    checks.append(
        Check(
            f"level{lvl}.orlov_count",
            divisor_objects == expected_count,
            f"{divisor_objects} divisor objects, Orlov count {expected_count}",
        )
    )
    return checks


def _bundle_list(twists) -> str:
    return ", ".join(f"O({t})" for t in twists)


def certify_tower(t: TowerSpec) -> Certificate:
    check_tower(t)
    n = t.base_dim
    remaining = list(range(n + 1))
    blocks: list[Component] = []
    steps = [Step("beilinson", f"P^{n} has the full exceptional collection ⟨{_bundle_list(remaining)}⟩")]
    assumptions = [
        "centers within each level are pairwise disjoint",
        "points blown up at one level are distinct",
    ]
    checks: list[Check] = []
    grams = []
    point_dims = set()

    for lvl, centers in enumerate(t.levels, start=1):
        used = remaining[-(n - 1):]
        kept = remaining[: -(n - 1)]
        residual_parts = [c.label for c in blocks] + [f"O({x})" for x in kept]
        residual = "π*⟨" + ", ".join(residual_parts) + "⟩"
        gram = build_blowup_collection(
            n, centers, line_twists=used, residual=residual,
            residual_citation=CITE_RESIDUAL if lvl == 1 else CITE_MUTATION,
        )
        grams.append(gram)
        for b, c in enumerate(centers):
            codim = center_codimension(c, n)
            if codim == n:
                point_dims.add(n)
                steps.append(Step(
                    "blowup-point",
                    f"level {lvl}, center {b} ({c}): dual-Orlov truncations τ≥-k π*O_x, "
                    f"RHom(L_k, τ≥-k π*O_x) = k[0]",
                ))
            else:
                steps.append(Step(
                    "blowup-codim2",
                    f"level {lvl}, center {b} ({c}): restrictions of {_bundle_list(used)} are a full "
                    f"exceptional collection on P^{n - 2}; RHom(L_i, j_*p^*L̃_j) = δ_ij k[0]",
                ))
                if c.kind is CenterKind.STRICT_TRANSFORM_LINE:
                    assumptions.append(
                        f"level {lvl}, center {b}: restrictions of {_bundle_list(used)} to the "
                        "strict-transform line form a full exceptional collection"
                    )
        checks.extend(_level_checks(lvl, gram, n))
        for i, (labels, quiver) in enumerate(group_into_quivers(gram, len(centers), n)):
            dynkin = classify_dynkin(quiver)
            rdim = quiver_category_rdim(quiver)
            name = f"T{lvl}.{i}"
            blocks.append(Component(ComponentKind.QUIVER, name, rdim, str(dynkin)))
            alias = f" (alias {dynkin.alias})" if dynkin.alias else ""
            steps.append(Step(
                "quiver-block",
                f"{name} = ⟨{', '.join(map(str, labels))}⟩ ≅ D^b(rep {dynkin}{alias}); "
                f"ADE type so rdim {name} = {rdim}",
            ))
        steps.append(Step(
            "apriori-bounds",
            f"level {lvl}: D^b = ⟨{residual}, T{lvl}.0, ..., T{lvl}.{n - 2}⟩",
        ))
        remaining = kept
        if lvl < len(t.levels):
            steps.append(Step(
                "block-mutation",
                f"mutate the level-{lvl} blocks to the left through ⟨{_bundle_list(remaining)}⟩; "
                "mutated blocks are equivalent to the originals",
            ))

    for n_pt in sorted(point_dims):
        checks.extend(verify_appendix(n_pt))

    components = list(blocks)
    if len(remaining) == 1:
        components.append(Component(ComponentKind.EXCEPTIONAL, f"π*O({remaining[0]})", 0))
    elif remaining:
        rdim = glueing_bound([0] * len(remaining))
        components.append(Component(ComponentKind.RESIDUAL, f"π*⟨{_bundle_list(remaining)}⟩", rdim))
        steps.append(Step(
            "residual",
            f"π*⟨{_bundle_list(remaining)}⟩ is glued from {len(remaining)} exceptional objects: rdim ≤ {rdim}",
        ))
    upper = glueing_bound([c.rdim for c in components])
    lower = lower_bound(n)
    steps.append(Step(
        "glueing",
        f"{len(components)} components with rdim sum {sum(c.rdim for c in components)}: rdim ≤ {upper}",
    ))
    steps.append(Step("dimension-lower-bound", f"smooth variety of dimension {n}: rdim ≥ {lower}"))
    verified = upper == lower and all(c.passed for c in checks)
    return Certificate(components, upper, lower, verified, steps, assumptions, checks, grams)
