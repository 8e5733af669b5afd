import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quiverorbits.linalg import GF, QQ
from quiverorbits.repkit import (GuardError, IsoClass, Rep, direct_sum, euler_form,
                                 ext_dim, extension_classes, hom_basis, hom_dim, hom_table,
                                 identify, indecomposable, is_morphism, random_rep,
                                 rep_of_class, simple_rep)

from conftest import SMALL_TYPES, orientations, word

FIELDS = [QQ, GF(2), GF(3), GF(5)]


def test_a2_hom_table():
    aw = word("A", 2)
    for f in FIELDS:
        assert hom_table(aw, f) == ((1, 1, 0), (0, 1, 1), (0, 0, 1))


@pytest.mark.parametrize("t,n", SMALL_TYPES)
def test_hom_table_unitriangular(t, n):
    aw = word(t, n)
    H = hom_table(aw, GF(2))
    for s in range(aw.nu):
        assert H[s][s] == 1
        assert all(H[s][r] == 0 for r in range(s))


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4)])
def test_hom_table_field_independent(t, n):
    for quiver in orientations(t, n, limit=4):
        from quiverorbits.dynkin import adapted_word
        aw = adapted_word(quiver)
        tables = {hom_table(aw, f) for f in FIELDS}
        assert len(tables) == 1


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4), ("E", 6)])
def test_indecomposables_have_trivial_endomorphisms(t, n):
    aw = word(t, n)
    for s in range(aw.nu):
        e = indecomposable(aw, s, GF(3))
        assert e.dims == aw.root_order[s]
        assert hom_dim(e, e) == 1
        assert ext_dim(e, e) == 0


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4)])
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_hom_minus_ext_is_euler_form(t, n, seed):
    rng = np.random.default_rng(seed)
    aw = word(t, n)
    d1 = tuple(int(x) for x in rng.integers(0, 3, size=n))
    d2 = tuple(int(x) for x in rng.integers(0, 3, size=n))
    for f in (QQ, GF(3)):
        r1 = random_rep(aw.quiver, d1, f, rng)
        r2 = random_rep(aw.quiver, d2, f, rng)
        assert hom_dim(r1, r2) - ext_dim(r1, r2) == euler_form(aw.quiver, d1, d2)


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4)])
def test_identify_inverts_rep_of_class(t, n):
    aw = word(t, n)
    rng = np.random.default_rng(1)
    for _ in range(15):
        c = tuple(int(x) for x in rng.integers(0, 2, size=aw.nu))
        for f in (QQ, GF(2)):
            assert identify(rep_of_class(IsoClass(aw, c), f), aw).c == c


def test_hom_basis_elements_are_morphisms():
    aw = word("D", 4)
    f = GF(3)
    a = rep_of_class(IsoClass(aw, (1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0)), f)
    b = rep_of_class(IsoClass(aw, (0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0)), f)
    basis = hom_basis(a, b)
    assert len(basis) == hom_dim(a, b)
    assert all(is_morphism(g, a, b) for g in basis)


def test_identify_projective_of_a2():
    aw = word("A", 2)
    f = GF(5)
    P = Rep(aw.quiver, f, (1, 1), (((1,),),))
    assert identify(P, aw).c == (0, 1, 0)
    assert identify(direct_sum([simple_rep(aw.quiver, 1, f), simple_rep(aw.quiver, 2, f)]), aw).c == (1, 0, 1)


def test_a2_extension_classes():
    aw = word("A", 2)
    assert [(cls.c, n) for cls, n in extension_classes(aw, 0, 2, 3)] == [((0, 1, 0), 2)]
    assert extension_classes(aw, 2, 0, 3) == []


@pytest.mark.parametrize("t,n", [("A", 4), ("D", 4)])
def test_extension_counts_sum_to_all_nonzero_classes(t, n):
    aw = word(t, n)
    for s in range(aw.nu):
        for u in range(aw.nu):
            e = ext_dim(indecomposable(aw, u, GF(3)), indecomposable(aw, s, GF(3)))
            tally = extension_classes(aw, s, u, 3)
            assert sum(k for _, k in tally) == 3 ** e - 1


def test_extension_guard():
    import quiverorbits.repkit as rk
    aw = word("D", 4)
    old = rk.EXT_GUARD_BITS
    rk.EXT_GUARD_BITS = 1
    try:
        with pytest.raises(GuardError):
            extension_classes(aw, 0, 4, 3)
    finally:
        rk.EXT_GUARD_BITS = old


def test_rep_validation():
    aw = word("A", 2)
    with pytest.raises(ValueError):
        Rep(aw.quiver, GF(2), (1, 1), (((1, 0),),))
    with pytest.raises(ValueError):
        IsoClass(aw, (1, 0))
