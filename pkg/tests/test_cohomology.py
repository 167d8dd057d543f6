import itertools
import random

import pytest
from hypothesis import given, strategies as st

from picardium.cohomology import (
    Cochain,
    FiniteGroup,
    InconsistentInput,
    SchemaError,
    SubgroupEmbedding,
    UnsupportedDegree,
    coboundary,
    cocycle_defect,
    cohomology_group,
    is_normalized_cocycle,
    restrict,
    solve_trivialisations,
    standard_cyclic_cocycle,
    trivialisation_classes,
    trivialise,
)
from picardium.scalars import CycScalar

Z2, Z3, Z4 = (FiniteGroup.cyclic(n) for n in (2, 3, 4))
V = FiniteGroup.abelian(2, 2)


def s3():
    perms = list(itertools.permutations(range(3)))
    mul = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    return FiniteGroup(mul, name="S3")


GROUPS = [Z2, Z3, Z4, V, s3()]


def test_group_table_validation():
    with pytest.raises(SchemaError, match=r"triple \(1, 1, 1\)"):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    with pytest.raises(SchemaError):
        FiniteGroup([[0, 1], [1]])
    with pytest.raises(SchemaError, match="identity"):
        FiniteGroup([[1, 0], [0, 1]])


def test_subgroups_and_embedding():
    assert sorted(len(S) for S in Z4.subgroups()) == [1, 2, 4]
    assert len(V.subgroups()) == 5
    emb = SubgroupEmbedding.from_elements(Z4, [2, 0])
    assert emb.sub.size == 2 and sorted(emb.image()) == [0, 2]
    with pytest.raises((InconsistentInput, ValueError)):
        SubgroupEmbedding.from_elements(Z4, [0, 1])


def test_omega_bilinear_has_trivial_coboundary():
    # omega(g, h) = zeta_2^{gh} is bilinear, so d omega(1,1,1) = 1
    w = Cochain.from_function(Z2, 2, 2, lambda g, h: g * h)
    assert coboundary(w)(1, 1, 1) == 0
    assert coboundary(w).is_trivial()


def test_standard_cyclic_values():
    psi = standard_cyclic_cocycle(2, 1)
    assert psi.scalar(1, 1, 1) == CycScalar.rational(-1)
    for n in (2, 3, 4):
        for k in range(n):
            assert is_normalized_cocycle(standard_cyclic_cocycle(n, k))
    with pytest.raises(ValueError):
        standard_cyclic_cocycle(3, 3)


def test_cocycle_defect():
    psi = standard_cyclic_cocycle(4, 1)
    assert cocycle_defect(psi) is None
    bad = psi.with_value((1, 1, 1), psi(1, 1, 1) + 1)
    t, even, odd = cocycle_defect(bad)
    assert even != odd
    assert not is_normalized_cocycle(bad)


def test_unsupported_degree():
    with pytest.raises(UnsupportedDegree):
        coboundary(Cochain.trivial(Z2, 4))
    with pytest.raises(UnsupportedDegree):
        cohomology_group(Z2, 4, 2)


@st.composite
def cochains(draw, degree):
    G = draw(st.sampled_from(GROUPS[:4]))
    N = draw(st.sampled_from([2, 3, 4, 6, 12]))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    vals = [0 if 0 in t else rng.randrange(N) for t in itertools.product(range(G.size), repeat=degree)]
    return Cochain(G, degree, N, vals)


@given(cochains(1))
def test_dd_zero_degree1(c):
    assert coboundary(coboundary(c)).is_trivial()


@given(cochains(2))
def test_dd_zero_degree2(c):
    assert coboundary(coboundary(c)).is_trivial()
    assert is_normalized_cocycle(coboundary(c))


def test_dd_zero_nonabelian():
    G = GROUPS[4]
    rng = random.Random(3)
    c = Cochain.from_function(G, 2, 6, lambda a, b: 0 if 0 in (a, b) else rng.randrange(6))
    assert coboundary(coboundary(c)).is_trivial()


@given(cochains(2))
def test_cochain_dict_roundtrip(c):
    assert Cochain.from_dict(c.group, c.to_dict()) == c
    assert c * c.inverse() == Cochain.trivial(c.group, 2)


def test_restriction_examples():
    emb = SubgroupEmbedding.from_elements(Z4, [0, 2])
    assert trivialise(standard_cyclic_cocycle(4, 1), emb) == []
    assert len(trivialise(standard_cyclic_cocycle(4, 2), emb)) == 16
    assert trivialise(standard_cyclic_cocycle(2, 1), SubgroupEmbedding.identity(Z2)) == []
    r = restrict(standard_cyclic_cocycle(4, 2), emb)
    assert r.group.size == 2 and r.degree == 3


def brute_force(psi, emb, N):
    """Independent oracle: enumerate every normalized 2-cochain with values in mu_N."""
    H = emb.sub
    target = restrict(psi, emb).lift(N) if N % psi.order == 0 else None
    free = [t for t in itertools.product(range(H.size), repeat=2) if 0 not in t]
    out = []
    for vals in itertools.product(range(N), repeat=len(free)):
        w = Cochain.trivial(H, 2, N)
        table = dict(zip(free, vals))
        w = Cochain.from_function(H, 2, N, lambda a, b: table.get((a, b), 0))
        if coboundary(w) == target:
            out.append(w)
    return out


ORACLE_CASES = [
    (Cochain.trivial(Z2, 3), [0, 1], Z2, 2),
    (Cochain.trivial(Z2, 3), [0, 1], Z2, 8),
    (standard_cyclic_cocycle(2, 1), [0, 1], Z2, 4),
    (standard_cyclic_cocycle(2, 1), [0, 1], Z2, 8),
    (Cochain.trivial(Z3, 3), [0, 1, 2], Z3, 3),
    (Cochain.trivial(Z3, 3), [0, 1, 2], Z3, 6),
    (standard_cyclic_cocycle(3, 1), [0, 1, 2], Z3, 9),
    (standard_cyclic_cocycle(4, 2), [0, 2], Z4, 16),
    (standard_cyclic_cocycle(4, 3), [0, 2], Z4, 16),
    (Cochain.trivial(Z4, 3), [0, 1, 2, 3], Z4, 2),
    (Cochain.trivial(V, 3), [0, 1, 2, 3], V, 2),
]


@pytest.mark.parametrize("psi,els,G,N", ORACLE_CASES)
def test_solver_matches_brute_force(psi, els, G, N):
    emb = SubgroupEmbedding.from_elements(G, els)
    got = trivialise(psi, emb, order=N)
    want = brute_force(psi, emb, N)
    assert sorted(w.values for w in got) == sorted(w.values for w in want)
    for w in got:
        assert coboundary(w) == restrict(psi, emb)


@pytest.mark.parametrize("psi,els,G", [
    (standard_cyclic_cocycle(4, 2), [0, 2], Z4),
    (Cochain.trivial(V, 3), [0, 1, 2, 3], V),
    (Cochain.trivial(Z3, 3), [0, 1, 2], Z3),
])
def test_solution_set_is_a_coset(psi, els, G):
    emb = SubgroupEmbedding.from_elements(G, els)
    ts = solve_trivialisations(psi, emb)
    cocycles = trivialise(Cochain.trivial(G, 3), emb, order=ts.order)
    base = ts.solutions[0]
    assert {base * c for c in cocycles} == set(ts.solutions)
    assert ts.stable


@pytest.mark.parametrize("G,count", [(Z2, 1), (Z3, 1), (Z4, 1), (V, 2)])
def test_class_counts(G, count):
    emb = SubgroupEmbedding.identity(G)
    sols = trivialise(Cochain.trivial(G, 3), emb)
    classes, info = trivialisation_classes(sols, emb, return_report=True)
    assert len(classes) == count
    assert info["stable"] and info["count_at_double"] == count
    assert sum(len(c) for c in classes) == len(sols)


def test_classes_reject_mixed_input():
    emb = SubgroupEmbedding.identity(Z2)
    w = trivialise(Cochain.trivial(Z2, 3), emb)[0]
    bad = Cochain.trivial(Z2, 2, 4).with_value((0, 1), 1)
    with pytest.raises(InconsistentInput):
        trivialisation_classes([w, bad], emb)


def test_cohomology_groups():
    assert cohomology_group(Z2, 3, 4) == [2]
    assert cohomology_group(Z4, 3, 16) == [4]
    assert cohomology_group(Z3, 2, 9) == [3]
    assert cohomology_group(V, 2, 2) == [2, 2, 2]
    # over a divisible coefficient group only the Schur multiplier survives
    assert cohomology_group(V, 2, 2, stabilized=True) == [2]
    assert cohomology_group(GROUPS[4], 2, 6) == [2]


def test_solver_order_must_contain_psi():
    emb = SubgroupEmbedding.identity(Z2)
    with pytest.raises(ValueError):
        solve_trivialisations(standard_cyclic_cocycle(2, 1), emb, order=2)
    with pytest.raises(InconsistentInput):
        solve_trivialisations(standard_cyclic_cocycle(2, 1).with_value((1, 1, 1), 1), emb)
