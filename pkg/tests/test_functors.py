import random

from scx.functors import (
    atomic,
    cone,
    connected_sum_model,
    direct_sum,
    dual,
    o1_o_minus1_witness,
    suspend,
    suspend_closed_form,
    suspend_homotopy,
    suspend_morphism,
    suspend_once,
    suspension_witness,
)
from scx.linkfam import hopf_complex, torus_knot_summand, torus_link_complex
from scx.randgen import rand_homotopy_pair, rand_morphism, rand_scomplex
from scx.rings import FRAC_LAURENT_Q, LAURENT_Z, Q, RingMap, Z, Zp, parse_element
from scx.scomplex import SMorphism

INC = RingMap(RingMap.LAURENT_TO_FRAC, LAURENT_Z, FRAC_LAURENT_Q)


def test_atomic_shapes():
    o0 = atomic(0)
    assert o0.irr.rank == 0 and o0.red.gens == (("w", 0),)
    om1 = atomic(-1)
    assert om1.irr.gens == (("u", 2),)  # -2 mod 4
    assert om1.delta2.named_triples() == [("u", "w", Z.one())]
    for n in range(-3, 4):
        assert atomic(n).verify().ok
        assert atomic(n).total_homology().total_rank == 1


def test_dual_of_o1_is_o_minus1():
    d = dual(atomic(1))
    om1 = atomic(-1)
    assert [g for _, g in d.irr.gens] == [g for _, g in om1.irr.gens]
    assert [g for _, g in d.red.gens] == [g for _, g in om1.red.gens]
    assert d.delta1.is_zero and not d.delta2.is_zero
    assert d.verify().ok


def test_dual_involution_ranks():
    rng = random.Random(2)
    for _ in range(10):
        x = rand_scomplex(Q, rng, max_rank=5)
        dd = dual(dual(x))
        assert dd.verify().ok
        assert dd.irr.rank == x.irr.rank and dd.red.rank == x.red.rank
        assert dd.total_homology().same_ranks(x.total_homology())


def test_dual_torus_k2_sign():
    d = dual(torus_link_complex(2))
    want = parse_element(LAURENT_Z, "-T^2 + T^-2")
    assert d.delta2.named_triples() == [("xi1*", "theta+*", want)]
    assert d.delta1.is_zero


def test_tensor_unit():
    x = torus_link_complex(3)
    t = connected_sum_model(x, atomic(0, LAURENT_Z, 4))
    assert t.verify().ok
    assert t.irr.rank == x.irr.rank and t.red.rank == x.red.rank
    xq = x.base_change(INC)
    tq = t.base_change(INC)
    assert tq.total_homology().same_ranks(xq.total_homology())


def test_tensor_o1_om1_matches_frozen_matrices():
    t = connected_sum_model(atomic(1), atomic(-1))
    one = Z.one()
    assert sorted(t.d.entries.items()) == [((1, 2), -one), ((3, 0), one)]
    assert sorted(t.v.entries.items()) == [((3, 1), one)]
    assert sorted(t.delta1.entries.items()) == [((0, 2), one)]
    assert sorted(t.delta2.entries.items()) == [((3, 0), one)]
    assert t.r.is_zero
    h = t.total_homology()
    assert h.total_rank == atomic(0).total_homology().total_rank == 1


def test_tensor_of_random_complexes_verifies():
    rng = random.Random(14)
    for ring in (Z, Q, Zp(2)):
        for _ in range(6):
            x = rand_scomplex(ring, rng, max_rank=4)
            y = rand_scomplex(ring, rng, modulus=x.modulus, max_rank=3)
            assert connected_sum_model(x, y).verify().ok


def test_cone_of_identity_is_acyclic():
    rng = random.Random(4)
    for ring in (Q, Z):
        x = rand_scomplex(ring, rng, max_rank=4)
        c = cone(SMorphism.identity(x))
        assert c.verify().ok
        assert c.total_homology().total_rank == 0


def test_cone_of_zero_is_shifted_sum():
    rng = random.Random(9)
    x = rand_scomplex(Q, rng, max_rank=3)
    y = rand_scomplex(Q, rng, modulus=x.modulus, max_rank=3)
    c = cone(SMorphism.zero(x, y, 0))
    s = direct_sum(x, y)
    assert c.verify().ok and s.verify().ok
    hc = c.total_homology()
    hs_x = x.total_homology().shifted(1)
    hy = y.total_homology()
    for d in set(list(hc.ranks_by_degree()) + list(hs_x.ranks_by_degree())
                 + list(hy.ranks_by_degree())):
        assert hc.free_rank(d) == hs_x.free_rank(d) + hy.free_rank(d)


def test_cone_irr_red_are_cones_of_lambda_and_rho():
    rng = random.Random(11)
    x = rand_scomplex(Q, rng, max_rank=4)
    f = rand_morphism(x, x, rng, 0)
    c = cone(f)
    na = x.irr.rank
    # irreducible block structure is [[-d, 0], [lambda, d']]
    for (t, s), val in c.d.entries.items():
        if t < na and s < na:
            assert val == -f.source.d.entry(t, s)
        elif t >= na and s < na:
            assert val == f.lam.entry(t - na, s)
        elif t >= na and s >= na:
            assert val == f.target.d.entry(t - na, s - na)
    nr = x.red.rank
    for (t, s), val in c.r.entries.items():
        if t >= nr and s < nr:
            assert val == f.rho.entry(t - nr, s)


def test_suspend_zero_and_o_one():
    x = torus_link_complex(2)
    assert suspend(x, 0) is x
    s = suspend_once(atomic(0))
    assert s.same_shape_as(atomic(1))
    assert suspend(atomic(0), -1).same_shape_as(atomic(-1))


def test_suspension_euler_identity_torus_k4():
    x = torus_link_complex(4)
    assert x.irreducible_euler() == -3
    chi_r = sum(1 if d % 2 == 0 else -1 for _, d in x.red.gens)
    assert chi_r == 2
    assert suspend(x, 1).irreducible_euler() == -5


def test_closed_form_suspension_equals_iteration():
    rng = random.Random(20)
    for _ in range(6):
        x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
        for n in (1, 2, 3):
            assert suspend_closed_form(x, n).same_shape_as(suspend(x, n))


def test_suspension_homology_invariance_and_dual():
    rng = random.Random(23)
    for _ in range(8):
        x = rand_scomplex(Q, rng, max_rank=4)
        h0 = x.total_homology()
        for n in (-2, -1, 1, 2):
            assert suspend(x, n).total_homology().same_ranks(h0.shifted(2 * n))
        # dual(Sigma^n X) has the homology of Sigma^{-n} dual(X)
        for n in (-1, 1):
            a = dual(suspend(x, n)).total_homology()
            b = suspend(dual(x), -n).total_homology()
            assert a.same_ranks(b)


def test_suspension_witness_on_spec_examples():
    for x in (atomic(0), torus_link_complex(3)):
        w = suspension_witness(x)
        assert w.verify().ok
    rng = random.Random(17)
    for _ in range(10):
        x = rand_scomplex(Zp(2), rng, max_rank=5)
        assert suspension_witness(x).verify().ok


def test_o1_om1_witness():
    w = o1_o_minus1_witness()
    assert w.verify().ok
    comp = w.forward.compose_after(w.backward)
    ident = SMorphism.identity(w.forward.target)
    diff = comp - ident
    assert all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1, diff.delta2, diff.rho))


def test_sigma_inverse_sigma_homology():
    rng = random.Random(29)
    for _ in range(6):
        x = rand_scomplex(Q, rng, max_rank=4)
        assert suspend(x, 1) and suspend(suspend(x, 1), -1).total_homology() \
            .same_ranks(x.total_homology())


def test_suspend_morphism_and_homotopy():
    rng = random.Random(31)
    for _ in range(8):
        x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
        ident = SMorphism.identity(x)
        si = suspend_morphism(ident)
        assert si.verify().ok
        diff = si - SMorphism.identity(suspend_once(x))
        assert all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1,
                                       diff.delta2, diff.rho))
        f = rand_morphism(x, x, rng, 0)
        sf = suspend_morphism(f)
        assert sf.verify().ok
        g, h = rand_homotopy_pair(f, rng)
        sh = suspend_homotopy(h)
        assert sh.verify().ok
        zero = SMorphism.zero(x, x, 0)
        szero = suspend_morphism(zero)
        assert szero.lam.is_zero and szero.delta2.is_zero and szero.rho.is_zero


def test_suspended_composition_homotopic():
    # Sigma(g.f) is homotopic to Sigma(g).Sigma(f): solve the homotopy
    from scx.solve import solve_homotopy

    rng = random.Random(37)
    for _ in range(5):
        x = rand_scomplex(Q, rng, max_rank=4, r_perfect=True, allow_cone=False)
        f = rand_morphism(x, x, rng, 0)
        g = rand_morphism(x, x, rng, 0)
        lhs = suspend_morphism(g.compose_after(f))
        rhs = suspend_morphism(g).compose_after(suspend_morphism(f))
        h = solve_homotopy(lhs, rhs)
        assert h is not None and h.verify().ok


def test_connected_sum_examples():
    tre = torus_knot_summand(2).base_change(INC)
    cs = connected_sum_model(tre, tre)
    assert cs.verify().ok
    h = cs.irreducible_homology()
    assert h.euler() == -2  # = sigma(T(2,3) # T(2,3)) / 2
    hopf = hopf_complex().base_change(INC)
    hh = connected_sum_model(hopf, hopf)
    assert hh.irr.rank == 0 and hh.red.rank == 4
    assert hh.total_homology().total_rank == 4
