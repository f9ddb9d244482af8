"""Acceptance criteria.  Arithmetic is exact, so every comparison is equality."""

import random
import time
from itertools import combinations_with_replacement, product

import pytest

from rdimcert.coh import (
    TwistedForm,
    bott_cohomology,
    rhom_divisor_to_skyscraper_pullback,
    rhom_exc_divisor,
    rhom_pullback_to_truncation,
)
from rdimcert.core import UNIT, ZERO
from rdimcert.errors import RuleViolation
from rdimcert.oracles import cech_cohomology, euler_sequence_classes
from rdimcert.quiver import (
    DynkinType,
    brute_force_indecomposables,
    canonical_quiver,
    classify_dynkin,
    positive_roots,
    quiver_positive_roots,
    star_quiver,
)
from rdimcert.rdim import ComponentKind, TowerSpec, certify_tower, orlov_component_count
from rdimcert.sod import (
    Center,
    EulerGram,
    _det,
    beilinson_gram,
    dual_collection_pm,
    dual_decomposition_k,
    k_mutation_left,
    k_mutation_right,
)

P, C, S = Center.point(), Center.codim2(), Center.strict_line()


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_nine_point_plane():
    with Timer() as t:
        cert = certify_tower(TowerSpec(2, ([P, P, P],) * 3))
    assert cert.upper_bound == 2 == cert.lower_bound
    assert cert.verified
    assert t.elapsed < 1.0


def test_criterion_02_p3_towers():
    towers = []
    for first in combinations_with_replacement([P, C], 3):
        for second in combinations_with_replacement([P, S], 3):
            towers.append(TowerSpec(3, (first, second)))
    towers.append(TowerSpec(3, ([P], [S])))
    with Timer() as t:
        certs = [certify_tower(tw) for tw in towers]
    assert all(c.verified and c.upper_bound == 3 for c in certs)
    assert t.elapsed < 1.0


def test_criterion_03_single_level_towers():
    for n in range(2, 9):
        for size in range(1, 4):
            for centers in combinations_with_replacement([P, C], size):
                cert = certify_tower(TowerSpec.single(n, centers))
                assert cert.verified and cert.upper_bound == n, (n, centers)
                blocks = [c for c in cert.components if c.kind is ComponentKind.QUIVER]
                rest = [c for c in cert.components if c.kind is not ComponentKind.QUIVER]
                assert len(blocks) == n - 1
                assert len(rest) == 1 and rest[0].kind is ComponentKind.RESIDUAL
                expected = str(classify_dynkin(star_quiver(size)))
                assert all(b.dynkin == expected for b in blocks)


def test_criterion_04_counting_remark():
    assert orlov_component_count(14, [5]) == 48
    with pytest.raises(RuleViolation) as err:
        certify_tower(TowerSpec.single(14, [Center.linear(5)]))
    assert err.value.kind == "unsupported_geometry"
    assert "48" in str(err.value) and "16" in str(err.value)


def test_criterion_05_bott_dichotomy_and_oracle():
    with Timer() as t:
        for n in range(1, 9):
            for m in range(n):
                expected = UNIT if m == 0 else ZERO
                assert bott_cohomology(TwistedForm(n - 1, m, m)) == expected
        compared = 0
        for n in range(4):
            for p in range(n + 1):
                for tw in range(-6, 7):
                    assert bott_cohomology(TwistedForm(n, p, tw)) == cech_cohomology(n, p, tw), (n, p, tw)
                    compared += 1
    assert compared >= 130
    assert t.elapsed < 10.0


def test_criterion_06_point_blowup_identities():
    with Timer() as t:
        for n in range(2, 9):
            for l in range(0, n - 2):
                for m in range(l + 2, n):
                    assert rhom_exc_divisor(n, l, m) == ZERO
            for l in range(0, n - 1):
                assert rhom_divisor_to_skyscraper_pullback(n, l) == ZERO
            for k in range(n):
                assert rhom_pullback_to_truncation(n, k) == UNIT
    assert t.elapsed < 1.0


def test_criterion_07_quiver_suite():
    with Timer() as t:
        names = [str(classify_dynkin(star_quiver(b))) for b in range(4)]
        assert names == ["A1", "A2", "A3", "D4"]
        assert classify_dynkin(star_quiver(2)).alias == "D3"
        counts = [len(positive_roots(DynkinType.parse(x))) for x in names]
        assert counts == [1, 3, 6, 12]
        quivers = [star_quiver(b) for b in range(4)] + [canonical_quiver(DynkinType("A", 3))]
        for q in quivers:
            roots = quiver_positive_roots(q)
            for d in product(range(6), repeat=q.vertex_count):
                if 0 < sum(d) <= 5:
                    assert brute_force_indecomposables(q, d) == (1 if d in roots else 0), (q, d)
    assert t.elapsed < 60.0


def test_criterion_08_duality():
    for m in range(7):
        assert dual_collection_pm(m).is_identity()
    for m in range(1, 5):
        g = EulerGram.from_graded(beilinson_gram(m))
        out = dual_decomposition_k(g)
        oracle = euler_sequence_classes(m)
        for cls, j in zip(out.basis_classes, range(m, -1, -1)):
            assert list(cls) in (oracle[j], [-x for x in oracle[j]])
        for i in range(m + 1):
            for j in range(m + 1):
                chi = sum(
                    g.gram[i][a] * out.basis_classes[m - j][a] for a in range(m + 1)
                )
                assert abs(chi) == 1 if i == j else chi == 0


def _assert_valid(g: EulerGram):
    n = g.size()
    assert all(g.gram[i][i] == 1 for i in range(n))
    assert all(g.gram[i][j] == 0 for i in range(n) for j in range(i))
    assert abs(_det(g.basis_classes)) == 1


def test_criterion_09_mutation_properties():
    rng = random.Random(20240611)
    for _ in range(200):
        n = rng.randint(2, 8)
        gram = [[1 if i == j else (rng.randint(-9, 9) if j > i else 0) for j in range(n)] for i in range(n)]
        g = EulerGram.from_matrix(gram)
        for _ in range(6):
            i = rng.randrange(n - 1)
            right = k_mutation_right(g, i)
            _assert_valid(right)
            assert k_mutation_left(right, i) == g
            left = k_mutation_left(g, i)
            _assert_valid(left)
            assert k_mutation_right(left, i) == g
            g = right if rng.random() < 0.5 else left


def _fuzzed_invalid_specs(rng: random.Random, count: int):
    def level(pool, lo=1, hi=3):
        return [rng.choice(pool) for _ in range(rng.randint(lo, hi))]

    for _ in range(count):
        case = rng.choice(["centers", "depth", "codim", "strict"])
        n = rng.randint(2, 8)
        if case == "centers":
            depth = {2: 3, 3: 2}.get(n, 1)
            levels = [level([P, C])] + [level([P]) for _ in range(rng.randint(0, depth - 1))]
            levels[rng.randrange(len(levels))] = level([P, C], 4, 7)
            yield TowerSpec(n, tuple(levels)), "at_most_three_centers"
        elif case == "depth":
            depth = {2: 3, 3: 2}.get(n, 1)
            levels = [level([P, C])] + [level([P]) for _ in range(depth + rng.randint(0, 2))]
            yield TowerSpec(n, tuple(levels)), "tower_depth"
        elif case == "codim":
            n = rng.randint(4, 14)
            d = rng.choice([x for x in range(1, n - 2)])
            centers = level([P, C], 0, 2) + [Center.linear(d)]
            rng.shuffle(centers)
            yield TowerSpec.single(n, centers), "center_point_or_codim2"
        elif rng.random() < 0.5:
            # a strict-transform line off P^3
            n = rng.choice([2, 4, 5, 6])
            if n == 2:
                levels = [level([P]), level([P], 0, 2) + [S]]
            else:
                levels = [level([P, C], 0, 2) + [S]]
            yield TowerSpec(n, tuple(levels)), "strict_transform_line_on_p3_upper_level"
        else:
            # on P^3 but at the first level
            yield TowerSpec(3, ([S] + level([P, C], 0, 2),)), "strict_transform_line_on_p3_upper_level"

def test_criterion_10_rejection_completeness():
    rng = random.Random(7)
    seen = set()
    for spec, hypothesis in _fuzzed_invalid_specs(rng, 400):
        with pytest.raises(RuleViolation) as err:
            certify_tower(spec)
        payload = err.value.to_dict()
        assert payload["hypothesis"] == hypothesis, (spec, payload)
        assert payload["message"]
        seen.add(hypothesis)
    assert len(seen) == 4
