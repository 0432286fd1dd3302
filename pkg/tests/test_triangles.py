import random

import pytest

from scx.errors import ImpossibleCase
from scx.functors import suspend
from scx.linkfam import hopf_complex, torus_knot_summand, torus_link_complex, unknot_complex
from scx.randgen import rand_morphism, rand_scomplex
from scx.rings import Q, Z, Zp, eval_t_at_one
from scx.scomplex import SHomotopy, SMorphism
from scx.solve import solve_triangle_homotopy
from scx.triangles import (
    ExactTriangleData,
    classify_skein,
    cone_triangle,
    i_minus,
    i_plus,
    les_check,
    rank_bound_from_triangle,
    sum_triangle,
    verify_triangle,
)


def test_cone_triangle_passes_over_fields():
    rng = random.Random(2)
    for ring in (Q, Zp(2)):
        for _ in range(5):
            x = rand_scomplex(ring, rng, max_rank=4)
            f = rand_morphism(x, x, rng, 0)
            t = cone_triangle(f)
            assert verify_triangle(t).ok
            assert les_check(t).ok


def test_cone_triangle_over_z():
    rng = random.Random(3)
    x = rand_scomplex(Z, rng, max_rank=4)
    f = rand_morphism(x, x, rng, 0)
    t = cone_triangle(f)
    assert verify_triangle(t).ok
    assert les_check(t).ok


def test_triangle_witnesses_agree_with_linear_solve_oracle():
    # the homotopies satisfy the axiom equations, so the brute-force solver
    # recovers a complete verified witness set independently
    from scx.solve import solve_triangle_witnesses

    rng = random.Random(5)
    x = rand_scomplex(Q, rng, max_rank=3)
    f = rand_morphism(x, x, rng, 0)
    t = cone_triangle(f)
    for i in range(3):
        solved = solve_triangle_homotopy(t.morphisms[(i - 1) % 3], t.morphisms[i])
        assert solved is not None and solved.verify().ok
    targets = [t.iso_expression(j) for j in range(3)]
    homs, nmaps = solve_triangle_witnesses(t.complexes, t.morphisms, targets)
    oracle = ExactTriangleData(t.complexes, t.morphisms, homs, nmaps)
    assert verify_triangle(oracle).ok and les_check(oracle).ok


def test_missing_homotopy_fails_axiom_three():
    rng = random.Random(7)
    x = rand_scomplex(Q, rng, max_rank=3)
    f = rand_morphism(x, x, rng, 0)
    while (f.lam.is_zero and f.rho.is_zero):
        f = rand_morphism(x, x, rng, 0)
    t = cone_triangle(f)
    zeroed = [SHomotopy.zero(h.frm, h.to) for h in t.homotopies]
    broken = ExactTriangleData(t.complexes, t.morphisms, zeroed, t.n_maps)
    rep = broken.verify()
    assert not rep.ok


def test_degenerate_sum_triangle():
    x = torus_knot_summand(2).base_change(eval_t_at_one())
    y = unknot_complex().base_change(eval_t_at_one())
    t = sum_triangle(x, y)
    assert verify_triangle(t).ok
    assert les_check(t).ok


def test_torus_family_sum_triangle():
    # the torus decomposition C(T(2,2k)) ~ C(T(2,2k-1)) + C(U1): the unknot
    # summand's Z/4 anchor is shifted by 2k, so gradings match on the nose
    # for even k and mod 2 in general
    from scx.functors import direct_sum

    link = torus_link_complex(2).base_change(eval_t_at_one())
    knot = torus_knot_summand(2).base_change(eval_t_at_one())
    u = unknot_complex().base_change(eval_t_at_one())
    s = direct_sum(knot, u)
    assert s.total_homology().same_ranks(link.total_homology())
    for k in (3, 4):
        link = torus_link_complex(k).base_change(eval_t_at_one()).reduce_mod2()
        knot = torus_knot_summand(k).base_change(eval_t_at_one()).reduce_mod2()
        s = direct_sum(knot, u.reduce_mod2())
        assert s.total_homology().same_ranks(link.total_homology())
    t = sum_triangle(knot, u.reduce_mod2())
    assert verify_triangle(t).ok and les_check(t).ok


def test_vertices_match_opposite_cones():
    from scx.functors import cone

    rng = random.Random(11)
    x = rand_scomplex(Q, rng, max_rank=3)
    f = rand_morphism(x, x, rng, 0)
    t = cone_triangle(f)
    for i in range(3):
        opp = t.morphisms[(i + 2) % 3]  # lambda_{i-1}: C_{i-1} -> C_{i-2}... wait
    # C_1 = Cone(lambda_0) on the nose
    c = cone(t.morphisms[0])
    assert c.total_homology().same_ranks(t.complexes[1].total_homology())
    # C_2 ~ Cone(lambda_1) up to homotopy: rank equality
    c2 = cone(t.morphisms[1])
    assert c2.total_homology().total_rank == t.complexes[2].total_homology().total_rank


def test_i_plus_minus_examples():
    u = unknot_complex().base_change(eval_t_at_one())
    assert i_plus(u).ranks_by_degree() == {1: 1}
    assert i_minus(u).ranks_by_degree() == {0: 1}
    h = hopf_complex().base_change(eval_t_at_one())
    assert i_plus(h).ranks_by_degree() == {1: 2}


def test_i_plus_matches_suspension():
    rng = random.Random(13)
    for _ in range(30):
        x = rand_scomplex(Q, rng, max_rank=5, r_perfect=True, allow_cone=False)
        ip = i_plus(x)
        sp = suspend(x, 1)
        hp = sp.reduce_mod2().irreducible_homology()
        assert ip.ranks_by_degree() == hp.ranks_by_degree()
        im = i_minus(x)
        sm = suspend(x, -1)
        hm = sm.reduce_mod2().irreducible_homology()
        assert im.ranks_by_degree() == hm.ranks_by_degree()


def test_knot_model_rank_dichotomy():
    # for rank-1 R either rk I+ = rk I + 1 or rk I- = rk I + 1
    rng = random.Random(17)
    count = 0
    while count < 12:
        x = rand_scomplex(Q, rng, max_rank=5, r_perfect=True, allow_cone=False)
        if x.red.rank != 1:
            continue
        base = x.irreducible_homology().total_rank
        up = i_plus(x).total_rank
        dn = i_minus(x).total_rank
        assert up == base + 1 or dn == base + 1
        count += 1


def test_classify_skein_table():
    assert (classify_skein(1, 1).case, classify_skein(1, 1).delta) == ("I", 0)
    assert (classify_skein(-1, 1).case, classify_skein(-1, 1).delta) == ("II", -1)
    assert (classify_skein(1, -1).case, classify_skein(1, -1).delta) == ("III", 1)
    assert classify_skein(-1, 1).suspension_placement == ("Lp", 1)
    assert classify_skein(1, -1).suspension_placement == ("Lpp", -1)
    with pytest.raises(ImpossibleCase):
        classify_skein(-1, -1)


def test_rank_bound():
    assert rank_bound_from_triangle(1, 0) == (1, 1)
    assert rank_bound_from_triangle(0, 0) == (0, 0)
    # quasi-alternating chain for det 5: T(2,5) against (T(2,4), unknot)
    from scx.linkfam import qa_rank

    a = qa_rank(4, 2)  # T(2,4)
    b = qa_rank(1, 1)  # unknot
    lo, hi = rank_bound_from_triangle(a, b, reducible_offset=1)
    assert lo <= qa_rank(5, 1) <= hi and hi == qa_rank(5, 1)
