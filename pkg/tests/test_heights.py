import random

import pytest

from scx.errors import NotRPerfect, ShapeMismatch
from scx.functors import atomic, suspend_once
from scx.gradedlin import GradedMatrix
from scx.heights import (
    HeightMorphism,
    OddMorphism,
    compose_heights,
    compose_odd_after_height_minus1,
    factor_through_suspension,
    heights_equal,
    iota,
    kappa,
    odd_to_suspension_morphism,
)
from scx.randgen import rand_height_morphism, rand_morphism, rand_scomplex
from scx.rings import Q, Zp
from scx.scomplex import SMorphism


def test_iota_and_kappa_are_strong():
    rng = random.Random(2)
    for n in (1, 2):
        x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
        i = iota(x, n)
        assert i.height == n and i.is_strong and i.verify(n).ok
        k = kappa(x, n)
        assert k.height == -n and k.is_strong and k.verify(-n).ok


def test_even_morphism_with_invertible_rho_is_strong_height_zero():
    rng = random.Random(3)
    x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
    h = HeightMorphism.from_morphism(SMorphism.identity(x))
    assert h.height == 0 and h.is_strong


def test_kappa_iota_composite_is_identity_like():
    x = atomic(0, Q, 4)
    c = compose_heights(kappa(x, 1), iota(x, 1))
    assert c.height == 0 and c.is_strong
    assert c.tau_at(0) == GradedMatrix.identity(x.red)


def test_monotone_acceptance():
    rng = random.Random(7)
    x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
    i2 = iota(x, 2)
    for m in (2, 1, 0):
        assert i2.verify(m).ok
    assert not i2.verify(3).checks[-1][1] or i2.tau_at(2).is_zero


def test_tau_support_bound_rejected():
    x = atomic(0, Q, 4)
    sx = x
    bound = x.irr.rank + x.irr.rank + 2
    big = {bound + 5: GradedMatrix.zero(x.red, x.red, 0)}
    with pytest.raises(ShapeMismatch):
        HeightMorphism(x, x, 0, GradedMatrix.zero(x.irr, x.irr, 0),
                       GradedMatrix.zero(x.irr, x.irr, -1),
                       GradedMatrix.zero(x.irr, x.red, 0),
                       GradedMatrix.zero(x.red, x.irr, -1),
                       {bound + 5: GradedMatrix(x.red, x.red, 0,
                                                {(0, 0): Q.one()})}, 0)


def test_heights_need_r_perfect():
    rng = random.Random(11)
    from scx.functors import cone

    x = rand_scomplex(Q, rng, max_rank=3)
    c = cone(rand_morphism(x, x, rng, 0))
    if not c.is_r_perfect:
        with pytest.raises(NotRPerfect):
            iota(c, 1)


def test_composition_heights_add():
    rng = random.Random(13)
    for n, m in [(1, 1), (1, -1), (-1, 1), (0, 1), (0, -1)]:
        f = rand_height_morphism(Q, rng, n)
        y = f.target
        g = HeightMorphism.from_morphism(rand_morphism(y, y, rng, 0))
        if m == 1:
            g = compose_heights(iota(y, 1), g)
        elif m == -1:
            sy = suspend_once(y)
            g = compose_heights(kappa(y, 1),
                                HeightMorphism.from_morphism(rand_morphism(sy, sy, rng, 0)))
            # g: Sigma y -> y; precompose with iota to get y -> y of height 0
            g = compose_heights(g, iota(y, 1))
            m = 0
        comp = compose_heights(g, f)
        assert comp.verify().ok
        assert comp.height >= n + m


def test_factorizations_recompose():
    rng = random.Random(17)
    done = {1: 0, -1: 0}
    while min(done.values()) < 5:
        n = random.Random(rng.random()).choice([-1, 1])
        f = rand_height_morphism(Q, rng, n)
        if f.height != n:
            continue
        fac = factor_through_suspension(f)
        assert fac.verify(0).ok
        if n > 0:
            re = compose_heights(fac, iota(f.source, n))
        else:
            re = compose_heights(kappa(f.target, -n), fac)
        assert heights_equal(re, f)
        done[n] += 1


def test_factor_iota2_has_identity_rho():
    x = atomic(0, Q, 4)
    f = iota(x, 2)
    fac = factor_through_suspension(f)
    assert fac.tau_at(0) == GradedMatrix.identity(x.red)


def test_height_minus1_factored_matrix_shape():
    # the expected 5x3 block matrix: rows (lambda; tau_{-1} delta1 | mu,
    # lambda, Delta2; Delta1, tau_{-1} delta1, tau_0 | 0, 0, tau_{-1})
    rng = random.Random(19)
    f = rand_height_morphism(Q, rng, -1)
    while f.height != -1:
        f = rand_height_morphism(Q, rng, -1)
    fac = factor_through_suspension(f)
    x, y = f.source, f.target
    nc, mc = x.irr.rank, y.irr.rank
    t_m1 = f.tau_at(-1)
    # row block 2 of lambda' is tau_{-1} delta1
    expect = t_m1 @ x.delta1
    for (t, s), val in expect.entries.items():
        assert fac.lam.entry(mc + t, s) == val
    # Delta2' stacks (Delta2; tau_0)
    for (t, s), val in f.delta2.entries.items():
        assert fac.delta2.entry(t, s) == val
    for (t, s), val in f.tau_at(0).entries.items():
        assert fac.delta2.entry(mc + t, s) == val
    # rho' = tau_{-1}
    assert fac.tau_at(0).same_entries_as(t_m1)


def _rand_odd(x, rng):
    gm = rand_morphism(x, x, rng, 1)
    ent = {}
    for s in range(x.red.rank):
        for t in range(x.red.rank):
            if (x.red.degree(t) - x.red.degree(s)) % x.modulus == 0 and rng.random() < 0.6:
                ent[(t, s)] = x.ring.from_int(rng.choice([1, -1]))
    return OddMorphism(gm, GradedMatrix(x.red, x.red, 0, ent))


def test_odd_composition_and_suspension_route():
    rng = random.Random(23)
    for trial in range(8):
        ring = Q if trial % 2 else Zp(2)
        f = rand_height_morphism(ring, rng, -1)
        while f.height != -1:
            f = rand_height_morphism(ring, rng, -1)
        y = f.target
        g = _rand_odd(y, rng)
        comp = compose_odd_after_height_minus1(g, f)
        assert comp.verify().ok
        lam2 = odd_to_suspension_morphism(g)
        assert lam2.verify().ok
        via = lam2.compose_after(factor_through_suspension(f).to_morphism())
        diff = via - comp
        assert all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1,
                                       diff.delta2, diff.rho))
        back = lam2.compose_after(iota(y, 1).to_morphism()) - g.morphism
        assert all(m.is_zero for m in (back.lam, back.mu, back.delta1,
                                       back.delta2, back.rho))


def test_odd_composition_with_zero_tau_is_plain():
    rng = random.Random(29)
    x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
    f0 = rand_morphism(x, x, rng, 0)
    f = HeightMorphism.from_morphism(f0)
    g = _rand_odd(x, rng)
    comp = compose_odd_after_height_minus1(g, f)
    plain = g.morphism.compose_after(f0)
    diff = comp - plain
    assert all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1,
                                   diff.delta2, diff.rho))


def test_zero_odd_morphism_composes_to_zero():
    rng = random.Random(31)
    f = rand_height_morphism(Q, rng, -1)
    y = f.target
    g = OddMorphism(SMorphism.zero(y, y, 1), GradedMatrix.zero(y.red, y.red, 0))
    comp = compose_odd_after_height_minus1(g, f)
    assert all(m.is_zero for m in (comp.lam, comp.mu, comp.delta1,
                                   comp.delta2, comp.rho))
