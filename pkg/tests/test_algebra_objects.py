import itertools
import random

import pytest

from picardium.algebra_objects import (
    AlgebraHom,
    AlgebraObject,
    ConvolutionAlgebra,
    MissingCoalgebraData,
    NotATrivialisation,
    NotConvolutionInvertible,
    ZeroDimension,
    algebra_from_json,
    algebra_to_json,
    alpha_family,
    build_endomorphism_algebra,
    build_Q,
    check_algebra,
    check_algebra_hom,
    check_coalgebra,
    check_frobenius_special_symmetric,
    extract_omega,
    grading_automorphism,
)
from picardium.cohomology import (
    Cochain,
    FiniteGroup,
    InconsistentInput,
    SchemaError,
    SubgroupEmbedding,
    coboundary,
    restrict,
    standard_cyclic_cocycle,
    trivialisation_classes,
    trivialise,
)
from picardium.pointed_category import CategoryContext
from picardium.scalars import ONE, ZERO, CycScalar

Z2, Z3, Z4 = (FiniteGroup.cyclic(n) for n in (2, 3, 4))
V = FiniteGroup.abelian(2, 2)


def setup(G, psi=None, els=None):
    ctx = CategoryContext(G, psi)
    emb = SubgroupEmbedding.from_elements(G, els if els is not None else range(G.size))
    return ctx, emb


def rational(x):
    return CycScalar.rational(x)


def test_trivial_subgroup_gives_unit_algebra():
    ctx, emb = setup(Z3, els=[0])
    Q = build_Q(emb, Cochain.trivial(emb.sub, 2), ctx)
    rep = check_frobenius_special_symmetric(Q)
    assert rep.passed and ctx.dim(Q.carrier) == 1
    assert (Q.beta_A, Q.beta_1) == (ONE, ONE)


def test_group_algebra_of_z2():
    ctx, emb = setup(Z2)
    Q = build_Q(emb, Cochain.trivial(Z2, 2), ctx)
    rep = check_frobenius_special_symmetric(Q)
    assert rep.passed and Q.flags["symmetric"]
    assert (Q.beta_A, Q.beta_1) == (ONE, rational(2))


def test_no_trivialisation_means_no_algebra():
    ctx, emb = setup(Z4, standard_cyclic_cocycle(4, 1), [0, 2])
    for e in range(16):
        w = Cochain.trivial(emb.sub, 2, 16).with_value((1, 1), e)
        assert not check_algebra(build_Q(emb, w, ctx)).passed


def corrupt(w, rng):
    H = w.group
    free = [t for t in itertools.product(range(H.size), repeat=2) if 0 not in t]
    t = rng.choice(free)
    return w.with_value(t, w(*t) + rng.randrange(1, w.order))


@pytest.mark.parametrize("n,k,N", [(2, 0, 4), (2, 1, 4), (2, 1, 8), (3, 0, 3), (3, 1, 9)])
def test_algebra_iff_trivialisation(n, k, N):
    """Every omega with values in mu_N when there are at most 1000, else all solutions plus a sample."""
    G = FiniteGroup.cyclic(n)
    ctx, emb = setup(G, standard_cyclic_cocycle(n, k))
    target = restrict(ctx.psi, emb)
    free = [t for t in itertools.product(range(n), repeat=2) if 0 not in t]
    grid = list(itertools.product(range(N), repeat=len(free)))
    if len(grid) > 1000:
        sols = [w.unknowns() for w in trivialise(ctx.psi, emb, order=N)]
        grid = sols + random.Random(n * 10 + k).sample(grid, 300)
    for vals in grid:
        table = dict(zip(free, vals))
        w = Cochain.from_function(G, 2, N, lambda a, b: table.get((a, b), 0))
        Q = build_Q(emb, w, ctx)
        ok = coboundary(w) == target
        assert check_algebra(Q).passed == ok == check_coalgebra(Q).passed


def test_corrupted_omega_fails_on_klein_four():
    ctx, emb = setup(V)
    rng = random.Random(7)
    sols = trivialise(ctx.psi, emb)
    for w in rng.sample(sols, 5):
        assert check_algebra(build_Q(emb, w, ctx)).passed
        assert not check_algebra(build_Q(emb, corrupt(w, rng), ctx)).passed


def theta_Q():
    theta = Cochain.trivial(Z3, 2, 3).with_value((2, 1), 1)
    ctx, emb = setup(Z3, coboundary(theta))
    return ctx, build_Q(emb, theta, ctx)


def test_non_admissible_Q_is_not_symmetric():
    ctx, Q = theta_Q()
    rep = check_frobenius_special_symmetric(Q)
    assert rep.passed  # Frobenius and special, with beta_Q = 1
    assert not Q.flags["symmetric"]
    assert ctx.dims(Q.carrier)[0] == ZERO
    assert (Q.beta_A, Q.beta_1) == (ONE, rational(3))


def test_missing_coalgebra():
    ctx, emb = setup(Z2)
    Q = build_Q(emb, Cochain.trivial(Z2, 2), ctx)
    bare = AlgebraObject(ctx, Q.carrier, Q.m, Q.eta)
    assert check_algebra(bare).passed
    with pytest.raises(MissingCoalgebraData):
        check_frobenius_special_symmetric(bare)


@pytest.mark.parametrize("n,k,g", [(2, 1, 1), (4, 1, 1), (4, 1, 2), (3, 0, 2)])
def test_endomorphism_algebra_betas(n, k, g):
    ctx = CategoryContext(FiniteGroup.cyclic(n), standard_cyclic_cocycle(n, k))
    X = ctx.simple(g)
    A = build_endomorphism_algebra(ctx, X, require_special=True)
    rep = check_frobenius_special_symmetric(A)
    assert rep.passed and A.flags["symmetric"]
    assert (A.beta_A, A.beta_1) == ctx.dims(X)


def test_endomorphism_algebra_of_Q():
    ctx, emb = setup(Z2)
    Q = build_Q(emb, Cochain.trivial(Z2, 2), ctx)
    A = build_endomorphism_algebra(ctx, Q.carrier)
    assert ctx.dim(A.carrier) == 4
    assert check_frobenius_special_symmetric(A).passed
    assert (A.beta_A, A.beta_1) == (rational(2), rational(2))
    unit = build_endomorphism_algebra(ctx, ctx.unit)
    assert check_frobenius_special_symmetric(unit).passed and ctx.dim(unit.carrier) == 1


def test_endomorphism_algebra_zero_dimension():
    ctx, Q = theta_Q()
    with pytest.raises(ZeroDimension):
        build_endomorphism_algebra(ctx, Q.carrier, require_special=True)


def ungraded_group_algebra():
    """k[Z/2] as an algebra in Vec over the trivial group."""
    ctx = CategoryContext(FiniteGroup.trivial())
    X = ctx.obj([2])
    XX = ctx.tensor(X, X)
    pair = ctx.info(XX).pair_index
    m = ctx.morphism(XX, X, [((i + j) % 2, pair[i, j], ONE) for i in range(2) for j in range(2)])
    eta = ctx.morphism(ctx.unit, X, [(0, 0, ONE)])
    half = rational(1) / 2
    delta = ctx.morphism(X, XX, [(pair[(g + h) % 2, h], g, half) for g in range(2) for h in range(2)])
    eps = ctx.morphism(X, ctx.unit, [(0, 0, rational(2))])
    return AlgebraObject(ctx, X, m, eta, delta, eps, name="k[Z2]")


def test_ungraded_group_algebra_and_sign_automorphism():
    a = ungraded_group_algebra()
    assert check_frobenius_special_symmetric(a).passed
    c = a.cat
    sign = AlgebraHom(a, a, c.morphism(a.carrier, a.carrier, [(0, 0, ONE), (1, 1, -ONE)]))
    assert check_algebra_hom(sign).passed
    conv = ConvolutionAlgebra(a)
    # a commutative algebra has only the trivial inner automorphism
    for f in conv.basis[:1] + [conv.basis[0] * 2 + conv.basis[1]]:
        assert conv.inner_automorphism(f).equals(AlgebraHom(a, a, a.identity()))


def test_convolution_on_endomorphism_algebra():
    ctx, emb = setup(Z2)
    Q = build_Q(emb, Cochain.trivial(Z2, 2), ctx)
    A = build_endomorphism_algebra(ctx, Q.carrier)
    conv = ConvolutionAlgebra(A)
    assert len(conv.basis) == 2
    ident = AlgebraHom(A, A, A.identity())
    assert conv.inner_automorphism(A.eta).equals(ident)
    f = conv.basis[0] - conv.basis[1]
    g = conv.basis[0] * 3 + conv.basis[1]
    wf, wg = conv.inner_automorphism(f), conv.inner_automorphism(g)
    assert not wf.equals(ident)
    assert check_algebra_hom(wf, coalgebra=False).passed
    assert (wf @ wf).equals(ident)
    assert (wf @ wg).equals(conv.inner_automorphism(conv.product(f, g)))
    assert conv.product(f, conv.inverse(f)).equals(A.eta)
    with pytest.raises(NotConvolutionInvertible):
        conv.inverse(conv.basis[0])
    assert not conv.is_invertible(A.eta * 0)


def test_alpha_family_z2():
    ctx, emb = setup(Z2)
    fam = alpha_family(Cochain.trivial(Z2, 2), emb, ctx)
    ident = AlgebraHom(fam.A, fam.A, fam.A.identity())
    assert fam[0].equals(ident)
    assert not fam[1].equals(ident)
    assert (fam[1] @ fam[1]).equals(ident)
    assert fam.homomorphism_report().passed
    for h in (0, 1):
        assert check_algebra_hom(fam[h]).passed


def test_alpha_family_detects_non_trivialisation():
    ctx, emb = setup(V)
    w = trivialise(ctx.psi, emb)[0]
    bad = corrupt(w, random.Random(1))
    with pytest.raises(NotATrivialisation):
        alpha_family(bad, emb, ctx)
    fam = alpha_family(bad, emb, ctx, strict=False)
    assert not fam.homomorphism_report().passed


def test_extract_omega_roundtrip_z2():
    ctx, emb = setup(Z2)
    for w in trivialise(ctx.psi, emb):
        fam = alpha_family(w, emb, ctx)
        assert extract_omega(fam, order=w.order) == w


def test_extract_omega_trivial_family():
    ctx, emb = setup(Z3, els=[0])
    fam = alpha_family(Cochain.trivial(emb.sub, 2), emb, ctx)
    assert extract_omega(fam).is_trivial()


def test_inequivalent_classes_extract_distinct_cochains():
    ctx, emb = setup(V)
    classes = trivialisation_classes(trivialise(ctx.psi, emb), emb)
    got = [extract_omega(alpha_family(c[0], emb, ctx), order=c[0].order) for c in classes]
    assert len(got) == 2 and got[0] != got[1]
    assert got == [c[0] for c in classes]


def test_twisted_omega_on_z4_subgroup():
    ctx, emb = setup(Z4, standard_cyclic_cocycle(4, 2), [0, 2])
    for w in trivialise(ctx.psi, emb)[:4]:
        Q = build_Q(emb, w, ctx)
        rep = check_frobenius_special_symmetric(Q)
        assert rep.passed and Q.flags["symmetric"]
        fam = alpha_family(w, emb, ctx)
        assert fam.homomorphism_report().passed
        assert extract_omega(fam, order=w.order) == w


def test_grading_automorphism():
    ctx, emb = setup(Z2)
    Q = build_Q(emb, Cochain.trivial(Z2, 2), ctx)
    chi = Cochain(Z2, 1, 2, [0, 1])
    s = grading_automorphism(Q, chi)
    assert check_algebra_hom(s).passed
    assert (s @ s).equals(AlgebraHom(Q, Q, Q.identity()))
    with pytest.raises(InconsistentInput):
        grading_automorphism(Q, Cochain(Z2, 1, 4, [0, 1]))


def test_algebra_json_roundtrip():
    ctx, emb = setup(Z4, standard_cyclic_cocycle(4, 2), [0, 2])
    w = trivialise(ctx.psi, emb)[3]
    Q = build_Q(emb, w, ctx)
    for a in (Q, build_endomorphism_algebra(ctx, Q.carrier)):
        b = algebra_from_json(ctx, algebra_to_json(a))
        assert algebra_to_json(b) == algebra_to_json(a)
        rep_a, rep_b = check_frobenius_special_symmetric(a), check_frobenius_special_symmetric(b)
        assert rep_a.passed and rep_b.passed and (a.beta_A, a.beta_1) == (b.beta_A, b.beta_1)
    with pytest.raises(SchemaError):
        algebra_from_json(ctx, {"carrier": {"mult": {"0": 1}}})


def test_beta_product_is_dimension():
    for G, psi, els in [(Z2, None, [0, 1]), (V, None, [0, 1, 2, 3]), (Z4, standard_cyclic_cocycle(4, 2), [0, 2])]:
        ctx, emb = setup(G, psi, els)
        w = trivialise(ctx.psi, emb)[0]
        Q = build_Q(emb, w, ctx)
        for a in (Q, build_endomorphism_algebra(ctx, Q.carrier)):
            check_frobenius_special_symmetric(a)
            assert a.beta_A * a.beta_1 == ctx.dims(a.carrier)[0]
