import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdimcert.core import UNIT, ZERO
from rdimcert.errors import DomainError, InvariantViolation, RuleViolation, UnsupportedGeometry
from rdimcert.oracles import euler_sequence_classes
from rdimcert.quiver import classify_dynkin
from rdimcert.sod import (
    AssertedZero,
    Center,
    Computed,
    DivisorDual,
    EulerGram,
    GradedGram,
    LineBundle,
    PointTruncation,
    Residual,
    Unknown,
    _det,
    beilinson_gram,
    build_blowup_collection,
    dual_collection_pm,
    dual_decomposition_k,
    group_into_quivers,
    k_mutation_left,
    k_mutation_right,
)

P, C = Center.point(), Center.codim2()


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


@st.composite
def euler_grams(draw, max_size=8, bound=9):
    n = draw(st.integers(1, max_size))
    gram = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            gram[i][j] = draw(st.integers(-bound, bound))
    return EulerGram.from_matrix(gram)


def test_beilinson_examples():
    g = beilinson_gram(1)
    assert [[g.value(i, j) for j in range(2)] for i in range(2)] == [[{0: 1}, {0: 2}], [ZERO, {0: 1}]]
    assert beilinson_gram(2).value(0, 2) == {0: 6}
    for n in range(5):
        g = beilinson_gram(n)
        assert all(g.value(i, i) == UNIT for i in range(n + 1))


def test_gram_invariants_enforced():
    a, b = LineBundle(0, 0), LineBundle(1, 1)
    with pytest.raises(InvariantViolation):
        GradedGram([a, b], [[Computed(UNIT), Unknown()], [Unknown(), Computed(UNIT)]])
    with pytest.raises(InvariantViolation):
        GradedGram([a, b], [[Computed(UNIT), Unknown()], [Computed(UNIT), Computed(UNIT)]])
    with pytest.raises(InvariantViolation):
        GradedGram([a, a], [[Computed(UNIT)] * 2] * 2)
    with pytest.raises(InvariantViolation):
        GradedGram([a], [[Computed(ZERO)]])
    ok = GradedGram([a, b], [[Computed(UNIT), Unknown()], [AssertedZero("x"), Computed(UNIT)]])
    assert ok.value(1, 0) == ZERO and ok.value(0, 1) is None


@pytest.mark.parametrize("m", range(7))
def test_dual_collection_is_identity(m):
    dual = dual_collection_pm(m)
    assert dual.is_identity()
    assert len(dual.objects) == m + 1


def test_dual_collection_examples():
    v = dual_collection_pm(2).verification
    assert v[0][0] == {0: 1}
    assert v[1][1] == {0: 1}
    assert v[0][1] == ZERO


def test_mutation_examples():
    g = EulerGram.from_matrix([[1, 0], [0, 1]])
    r = k_mutation_right(g, 0)
    assert r.basis_classes == ((0, 1), (-1, 0))
    assert r.gram == ((1, 0), (0, 1))
    for a in (-3, 1, 5):
        r = k_mutation_right(EulerGram.from_matrix([[1, a], [0, 1]]), 0)
        assert r.basis_classes == ((0, 1), (-1, a))
        assert r.gram == ((1, a), (0, 1))


def test_mutation_index_error():
    with pytest.raises(DomainError):
        k_mutation_right(EulerGram.from_matrix([[1, 2], [0, 1]]), 1)


def test_eulergram_rejects_non_triangular():
    with pytest.raises(InvariantViolation):
        EulerGram.from_matrix([[1, 0], [1, 1]])
    with pytest.raises(InvariantViolation):
        EulerGram(((1, 0), (0, 1)), ((2, 0), (0, 1)))


@settings(max_examples=100, deadline=None)
@given(euler_grams(), st.data())
def test_left_undoes_right(g, data):
    if g.size() < 2:
        return
    i = data.draw(st.integers(0, g.size() - 2))
    r = k_mutation_right(g, i)
    assert k_mutation_left(r, i) == g
    assert k_mutation_right(k_mutation_left(g, i), i) == g


@settings(max_examples=60, deadline=None)
@given(euler_grams(max_size=6, bound=4))
def test_gram_is_congruence_of_classes(g):
    # in the identity basis, gram = B G0 Bᵀ for the original form G0
    g0 = [list(r) for r in g.gram]
    out = dual_decomposition_k(g)
    b = [list(r) for r in out.basis_classes]
    assert _matmul(_matmul(b, g0), _transpose(b)) == [list(r) for r in out.gram]
    assert abs(_det(b)) == 1


def _leibniz_det(m):
    total = 0
    for perm in permutations(range(len(m))):
        inversions = sum(perm[a] > perm[b] for a in range(len(perm)) for b in range(a + 1, len(perm)))
        term = (-1) ** inversions
        for row, col in enumerate(perm):
            term *= m[row][col]
        total += term
    return total


def test_det():
    assert _det([[2, 1], [1, 1]]) == 1
    assert _det([[0, 1], [1, 0]]) == -1
    assert _det([[1, 2], [2, 4]]) == 0
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert _det(m) == _leibniz_det(m)


def test_dual_decomposition_trivial():
    g = EulerGram.from_matrix([[1]])
    assert dual_decomposition_k(g) == g


@pytest.mark.parametrize("m", range(1, 5))
def test_dual_decomposition_matches_euler_sequence(m):
    g = EulerGram.from_graded(beilinson_gram(m))
    out = dual_decomposition_k(g)
    oracle = euler_sequence_classes(m)
    # dual order lists Ω^m(m), ..., Ω^0(0)
    for cls, j in zip(out.basis_classes, range(m, -1, -1)):
        assert list(cls) in (oracle[j], [-x for x in oracle[j]])
    pairing = _matmul([list(r) for r in g.gram], _transpose([list(r) for r in out.basis_classes]))
    # χ(O(i), dual_j) is ± the identity after reversing the dual order
    for i in range(m + 1):
        for j in range(m + 1):
            value = pairing[i][m - j]
            assert (abs(value) == 1) if i == j else value == 0


def test_p2_dual_classes():
    out = dual_decomposition_k(EulerGram.from_graded(beilinson_gram(2)))
    assert out.basis_classes == ((3, -3, 1), (3, -1, 0), (1, 0, 0))


def _check_builder_invariants(g: GradedGram, n: int):
    for i, x in enumerate(g.labels):
        for j, y in enumerate(g.labels):
            e = g.entry(i, j)
            if i > j and isinstance(e, Computed):
                assert e.value == ZERO
            if isinstance(x, LineBundle) and isinstance(y, PointTruncation):
                assert e == Computed(UNIT)
            if isinstance(x, LineBundle) and isinstance(y, DivisorDual):
                assert e == Computed(UNIT if x.index == y.index else ZERO)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("centers", [[P], [C], [P, P], [P, C, C], [C, C, C], [P, P, P]])
def test_builder_invariants(n, centers):
    g = build_blowup_collection(n, centers)
    _check_builder_invariants(g, n)
    b = len(centers)
    assert len(g) == 1 + (n - 1) * (1 + b)
    groups = group_into_quivers(g, b, n)
    assert len(groups) == n - 1
    assert all(len(labels) == 1 + b for labels, _ in groups)


def test_builder_one_point_plane():
    g = build_blowup_collection(2, [P])
    assert g.labels == (Residual("π*⟨O, O(1)⟩"), LineBundle(0, 2), PointTruncation(0, 0))
    assert g.value(LineBundle(0, 2), PointTruncation(0, 0)) == {0: 1}


def test_builder_codim2_line_in_p3():
    g = build_blowup_collection(3, [C])
    for i in range(2):
        for j in range(2):
            assert g.value(LineBundle(i, i + 2), DivisorDual(0, j)) == ({0: 1} if i == j else ZERO)


def test_builder_disjoint_points_orthogonal():
    g = build_blowup_collection(4, [P, P])
    for x in g.labels:
        for y in g.labels:
            if isinstance(x, PointTruncation) and isinstance(y, PointTruncation) and x.center != y.center:
                assert g.value(x, y) == ZERO


def test_builder_unknowns_are_not_guessed():
    g = build_blowup_collection(3, [P])
    assert isinstance(g.entry(PointTruncation(0, 1), PointTruncation(0, 0)), Unknown)
    assert isinstance(g.entry(PointTruncation(0, 0), PointTruncation(0, 1)), AssertedZero)


def test_builder_errors():
    with pytest.raises(RuleViolation) as err:
        build_blowup_collection(3, [P] * 4)
    assert err.value.hypothesis == "at_most_three_centers"
    with pytest.raises(UnsupportedGeometry):
        build_blowup_collection(4, [Center.linear(1)])
    with pytest.raises(DomainError):
        build_blowup_collection(1, [P])
    with pytest.raises(DomainError):
        build_blowup_collection(3, [P], line_twists=[0, 2])


@pytest.mark.parametrize("n,b,name", [(2, 3, "D4"), (4, 1, "A2"), (3, 0, "A1")])
def test_group_examples(n, b, name):
    centers = [P] * b
    groups = group_into_quivers(build_blowup_collection(n, centers), b, n)
    assert len(groups) == n - 1
    assert all(str(classify_dynkin(q)) == name for _, q in groups)


def test_group_rejects_wrong_count():
    g = build_blowup_collection(3, [P, P])
    with pytest.raises(InvariantViolation):
        group_into_quivers(g, 3, 3)


def test_render_and_json():
    g = build_blowup_collection(2, [P, C])
    text = g.render()
    assert "τ" in text
    data = g.to_json()
    assert len(data["labels"]) == len(data["entries"]) == len(g)
