"""Operations on S-complexes: duals, tensor products, mapping cones, direct
sums, suspensions, the atomic complexes O(n), and explicit equivalence
witnesses for the suspension/tensor comparison."""

from __future__ import annotations

from .errors import RingMismatch, ShapeMismatch
from .gradedlin import GradedMatrix, GradedModule, place_block
from .rings import Z
from .scomplex import SComplex, SHomotopy, SMorphism


def _sgn(ring, deg):
    """(-1)^deg as a ring element; parity is always taken mod 2."""
    return ring.one() if deg % 2 == 0 else -ring.one()


# ---------------------------------------------------------------------------
# Dual.


def dual(x):
    """The dual S-complex: delta1 and delta2 swap roles, degrees reflect.

    With the convention m'(f) = -eps(f) f(m), the canonical splitting puts the
    dual of a C-generator of degree a in degree -a-1 and the dual of an
    R-generator of degree b in degree -b.  Componentwise, for generator
    degrees a (source) and entries m[t,s]:

        d*  [s,t] = -(-1)^deg(s) d[t,s]      v*  [s,t] = v[t,s]
        delta1* [s,t] = delta2[t,s]          delta2* [s,t] = -(-1)^deg(s) delta1[t,s]
        r*  [s,t] = -(-1)^deg(s) r[t,s]
    """
    ring, mod = x.ring, x.modulus
    irr = GradedModule(ring, mod, [(f"{n}*", -d - 1) for n, d in x.irr.gens])
    red = GradedModule(ring, mod, [(f"{n}*", -d) for n, d in x.red.gens])

    def flip(m, newsrc, newtgt, degree, sign_by=None):
        ent = {}
        for (t, s), val in m.entries.items():
            v = val
            if sign_by == "src_c":
                v = -(v * _sgn(ring, x.irr.degree(s)))
            elif sign_by == "tgt_r":
                v = -(v * _sgn(ring, x.red.degree(t)))
            ent[(s, t)] = v
        return GradedMatrix(newsrc, newtgt, degree, ent)

    d_new = flip(x.d, irr, irr, -1, sign_by="src_c")
    v_new = flip(x.v, irr, irr, -2)
    delta1_new = flip(x.delta2, irr, red, -1)
    delta2_new = flip(x.delta1, red, irr, -2, sign_by="tgt_r")
    r_new = flip(x.r, red, red, -1, sign_by="tgt_r")
    meta = dict(x.metadata)
    meta["dual_of"] = meta.pop("name", None) or "?"
    return SComplex(irr, red, d_new, v_new, delta1_new, delta2_new, r_new, None, meta)


# ---------------------------------------------------------------------------
# Tensor product, in the fixed block order
# (C.C', (C.C')[-1], C.R', R.C'); reducible part R.R'.


class _TensorLayout:
    def __init__(self, x, y):
        if x.ring != y.ring:
            raise RingMismatch("tensor over different rings")
        if x.modulus != y.modulus:
            raise ShapeMismatch("tensor over different moduli")
        self.x, self.y = x, y
        ring, mod = x.ring, x.modulus

        def nm(a, b):
            # compound factor names are parenthesized so nested tensors
            # cannot produce colliding generator names
            fa = f"({a})" if "⊗" in a else a
            fb = f"({b})" if "⊗" in b else b
            return f"{fa}⊗{fb}"

        cc = [(nm(a, b), da + db) for a, da in x.irr.gens for b, db in y.irr.gens]
        ccs = [(nm(a, b) + "·s", da + db + 1) for a, da in x.irr.gens for b, db in y.irr.gens]
        cr = [(nm(a, b), da + db) for a, da in x.irr.gens for b, db in y.red.gens]
        rc = [(nm(a, b), da + db) for a, da in x.red.gens for b, db in y.irr.gens]
        rr = [(nm(a, b), da + db) for a, da in x.red.gens for b, db in y.red.gens]
        self.irr = GradedModule(ring, mod, cc + ccs + cr + rc)
        self.red = GradedModule(ring, mod, rr)
        nx, ny = x.irr.rank, y.irr.rank
        self.off = {
            "cc": 0,
            "ccs": nx * ny,
            "cr": 2 * nx * ny,
            "rc": 2 * nx * ny + nx * y.red.rank,
        }
        self.dims = {
            "cc": (nx, ny), "ccs": (nx, ny),
            "cr": (nx, y.red.rank), "rc": (x.red.rank, ny),
        }

    def idx(self, block, i, j):
        return self.off[block] + i * self.dims[block][1] + j

    def pair(self, entries, m_a, m_b, row_block, col_block, sign=None, negate=False):
        """Place (m_a ⊗ m_b) with an optional Koszul sign into `entries`.

        m_a / m_b may be None meaning the identity on that factor.  sign is
        one of None, 'first' ((-1)^deg of the first-factor source generator,
        for terms eps⊗m'), or 'first_target' ((-1)^deg of m_a's target
        generator, for terms (eps∘m)⊗1).
        """
        ring = self.x.ring
        a_pairs = (list(m_a.entries.items()) if m_a is not None
                   else [((i, i), ring.one()) for i in range(self.dims[col_block][0])])
        b_pairs = (list(m_b.entries.items()) if m_b is not None
                   else [((j, j), ring.one()) for j in range(self.dims[col_block][1])])
        src_degs = self._first_factor_degrees(col_block)
        tgt_degs = self._first_factor_degrees(row_block)
        for (ta, sa), va in a_pairs:
            for (tb, sb), vb in b_pairs:
                v = va * vb
                if sign == "first":
                    v = v * _sgn(ring, src_degs[sa])
                elif sign == "first_target":
                    v = v * _sgn(ring, tgt_degs[ta])
                if negate:
                    v = -v
                row = self.idx(row_block, ta, tb)
                col = self.idx(col_block, sa, sb)
                cur = entries.get((row, col))
                entries[(row, col)] = v if cur is None else cur + v

    def _first_factor_degrees(self, block):
        if block in ("cc", "ccs", "cr"):
            return [d for _, d in self.x.irr.gens]
        return [d for _, d in self.x.red.gens]


def tensor(x, y):
    """The tensor S-complex in the fixed block decomposition."""
    lay = _TensorLayout(x, y)
    ring = x.ring
    one = None  # identity marker

    d_ent = {}
    # row cc
    lay.pair(d_ent, x.d, one, "cc", "cc")
    lay.pair(d_ent, one, y.d, "cc", "cc", sign="first")
    # row ccs
    lay.pair(d_ent, x.v, one, "ccs", "cc", sign="first_target", negate=True)
    lay.pair(d_ent, one, y.v, "ccs", "cc", sign="first")
    lay.pair(d_ent, x.d, one, "ccs", "ccs")
    lay.pair(d_ent, one, y.d, "ccs", "ccs", sign="first", negate=True)
    lay.pair(d_ent, one, y.delta2, "ccs", "cr", sign="first")
    lay.pair(d_ent, x.delta2, one, "ccs", "rc", sign="first_target", negate=True)
    # row cr
    lay.pair(d_ent, one, y.delta1, "cr", "cc", sign="first")
    lay.pair(d_ent, x.d, one, "cr", "cr")
    lay.pair(d_ent, one, y.r, "cr", "cr", sign="first")
    # row rc
    lay.pair(d_ent, x.delta1, one, "rc", "cc")
    lay.pair(d_ent, one, y.d, "rc", "rc", sign="first")
    lay.pair(d_ent, x.r, one, "rc", "rc")

    v_ent = {}
    lay.pair(v_ent, x.v, one, "cc", "cc")
    lay.pair(v_ent, x.delta2, one, "cc", "rc")
    lay.pair(v_ent, x.v, one, "ccs", "ccs")
    lay.pair(v_ent, x.v, one, "cr", "cr")
    lay.pair(v_ent, x.delta1, one, "rc", "ccs", sign="first_target")
    lay.pair(v_ent, one, y.v, "rc", "rc")

    # delta1: C_T -> R_T from blocks cr (delta1 ⊗ 1) and rc (eps ⊗ delta1')
    d1_ent = {}
    _cross_to_red(lay, d1_ent, x.delta1, None, "cr")
    _cross_to_red(lay, d1_ent, None, y.delta1, "rc", sign="first")
    # delta2: R_T -> C_T into blocks cr (delta2 ⊗ 1) and rc (1 ⊗ delta2')
    d2_ent = {}
    _cross_from_red(lay, d2_ent, x.delta2, None, "cr")
    _cross_from_red(lay, d2_ent, None, y.delta2, "rc")

    r_ent = {}
    _red_endo(lay, r_ent, x.r, None)
    _red_endo(lay, r_ent, None, y.r, sign="first")

    dm = GradedMatrix(lay.irr, lay.irr, -1, {k: v for k, v in d_ent.items() if not v.is_zero})
    vm = GradedMatrix(lay.irr, lay.irr, -2, {k: v for k, v in v_ent.items() if not v.is_zero})
    d1m = GradedMatrix(lay.irr, lay.red, -1, {k: v for k, v in d1_ent.items() if not v.is_zero})
    d2m = GradedMatrix(lay.red, lay.irr, -2, {k: v for k, v in d2_ent.items() if not v.is_zero})
    rm = GradedMatrix(lay.red, lay.red, -1, {k: v for k, v in r_ent.items() if not v.is_zero})
    return SComplex(lay.irr, lay.red, dm, vm, d1m, d2m, rm, None,
                    {"tensor_of": [x.metadata.get("name"), y.metadata.get("name")]})


def _cross_to_red(lay, entries, m_a, m_b, col_block, sign=None):
    x, y, ring = lay.x, lay.y, lay.x.ring
    rr_cols = lay.y.red.rank
    a_pairs = (list(m_a.entries.items()) if m_a is not None
               else [((i, i), ring.one()) for i in range(lay.dims[col_block][0])])
    b_pairs = (list(m_b.entries.items()) if m_b is not None
               else [((j, j), ring.one()) for j in range(lay.dims[col_block][1])])
    degs = lay._first_factor_degrees(col_block)
    for (ta, sa), va in a_pairs:
        for (tb, sb), vb in b_pairs:
            v = va * vb
            if sign == "first":
                v = v * _sgn(ring, degs[sa])
            row = ta * rr_cols + tb
            col = lay.idx(col_block, sa, sb)
            cur = entries.get((row, col))
            entries[(row, col)] = v if cur is None else cur + v


def _cross_from_red(lay, entries, m_a, m_b, row_block, sign=None):
    ring = lay.x.ring
    rr_cols = lay.y.red.rank
    a_pairs = (list(m_a.entries.items()) if m_a is not None
               else [((i, i), ring.one()) for i in range(lay.x.red.rank)])
    b_pairs = (list(m_b.entries.items()) if m_b is not None
               else [((j, j), ring.one()) for j in range(lay.y.red.rank)])
    degs = [d for _, d in lay.x.red.gens]
    for (ta, sa), va in a_pairs:
        for (tb, sb), vb in b_pairs:
            v = va * vb
            if sign == "first":
                v = v * _sgn(ring, degs[sa])
            row = lay.idx(row_block, ta, tb)
            col = sa * rr_cols + sb
            cur = entries.get((row, col))
            entries[(row, col)] = v if cur is None else cur + v


def _red_endo(lay, entries, m_a, m_b, sign=None):
    ring = lay.x.ring
    rr_cols = lay.y.red.rank
    a_pairs = (list(m_a.entries.items()) if m_a is not None
               else [((i, i), ring.one()) for i in range(lay.x.red.rank)])
    b_pairs = (list(m_b.entries.items()) if m_b is not None
               else [((j, j), ring.one()) for j in range(lay.y.red.rank)])
    degs = [d for _, d in lay.x.red.gens]
    for (ta, sa), va in a_pairs:
        for (tb, sb), vb in b_pairs:
            v = va * vb
            if sign == "first":
                v = v * _sgn(ring, degs[sa])
            key = (ta * rr_cols + tb, sa * rr_cols + sb)
            cur = entries.get(key)
            entries[key] = v if cur is None else cur + v


def connected_sum_model(x, y):
    """Alias of tensor with concatenated naming metadata."""
    out = tensor(x, y)
    out.metadata["connected_sum"] = [x.metadata.get("name"), y.metadata.get("name")]
    return out


# ---------------------------------------------------------------------------
# Mapping cone and direct sum.


def cone(f):
    """Mapping cone of a degree-k morphism, in the standard 6x6 block basis.

    Components: d = [[-d,0],[lam,d']], v = [[v,0],[mu,v']],
    delta1 = [[-delta1,0],[Delta1,delta1']], delta2 = [[delta2,0],[Delta2,delta2']],
    r = [[-r,0],[rho,r']].  Source generators shift by 1 + k.
    """
    x, y = f.source, f.target
    k = f.degree
    ring, mod = x.ring, x.modulus
    shift = 1 + k
    irr = GradedModule(ring, mod, [(f"A.{n}", d + shift) for n, d in x.irr.gens]
                       + [(f"B.{n}", d) for n, d in y.irr.gens])
    red = GradedModule(ring, mod, [(f"A.{n}", d + shift) for n, d in x.red.gens]
                       + [(f"B.{n}", d) for n, d in y.red.gens])
    na, nr = x.irr.rank, x.red.rank

    def corner(top, low, right, src, tgt, deg, top_rows, right_col):
        ent = {}
        place_block(ent, top, 0, 0)
        place_block(ent, low, top_rows, 0)
        place_block(ent, right, top_rows, right_col)
        return GradedMatrix(src, tgt, deg, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    d_m = corner(-x.d, f.lam, y.d, irr, irr, -1, na, na)
    v_m = corner(x.v, f.mu, y.v, irr, irr, -2, na, na)
    r_m = corner(-x.r, f.rho, y.r, red, red, -1, nr, nr)
    d1_m = corner(-x.delta1, f.delta1, y.delta1, irr, red, -1, nr, na)
    d2_m = corner(x.delta2, f.delta2, y.delta2, red, irr, -2, na, nr)
    return SComplex(irr, red, d_m, v_m, d1_m, d2_m, r_m, None, {"cone_degree": k})


def direct_sum(x, y):
    """Block-diagonal direct sum (equal to the cone of the zero morphism up
    to a sign change on the first summand)."""
    if x.ring != y.ring:
        raise RingMismatch("direct sum over different rings")
    if x.modulus != y.modulus:
        raise ShapeMismatch("direct sum over different moduli")
    ring, mod = x.ring, x.modulus
    irr = GradedModule(ring, mod, [(f"A.{n}", d) for n, d in x.irr.gens]
                       + [(f"B.{n}", d) for n, d in y.irr.gens])
    red = GradedModule(ring, mod, [(f"A.{n}", d) for n, d in x.red.gens]
                       + [(f"B.{n}", d) for n, d in y.red.gens])

    def diag(a, b, src, tgt, deg, ra, ca):
        ent = {}
        place_block(ent, a, 0, 0)
        place_block(ent, b, ra, ca)
        return GradedMatrix(src, tgt, deg, ent)

    na, nr = x.irr.rank, x.red.rank
    s = None
    if x.s is not None and y.s is not None:
        s = diag(x.s, y.s, red, red, -2, nr, nr)
    return SComplex(
        irr, red,
        diag(x.d, y.d, irr, irr, -1, na, na),
        diag(x.v, y.v, irr, irr, -2, na, na),
        diag(x.delta1, y.delta1, irr, red, -1, nr, na),
        diag(x.delta2, y.delta2, red, irr, -2, na, nr),
        diag(x.r, y.r, red, red, -1, nr, nr),
        s,
        {"sum_of": [x.metadata.get("name"), y.metadata.get("name")]},
    )


# ---------------------------------------------------------------------------
# Suspension.


def suspend_once(x):
    """One suspension step: C_S = C[-2] + R[-1], R_S = R, with

        d_S = [[d,-delta2],[0,-r]]   v_S = [[v,0],[delta1,0]]
        delta2_S = [v delta2; delta1 delta2]   delta1_S = [0, 1]   r_S = r
    """
    ring, mod = x.ring, x.modulus
    irr = GradedModule(ring, mod, [(f"s.{n}", d + 2) for n, d in x.irr.gens]
                       + [(f"q.{n}", d + 1) for n, d in x.red.gens])
    red = GradedModule(ring, mod, list(x.red.gens))
    nc = x.irr.rank

    ent = {}
    place_block(ent, x.d, 0, 0)
    place_block(ent, -x.delta2, 0, nc)
    place_block(ent, -x.r, nc, nc)
    d_m = GradedMatrix(irr, irr, -1, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.v, 0, 0)
    place_block(ent, x.delta1, nc, 0)
    v_m = GradedMatrix(irr, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.v @ x.delta2, 0, 0)
    place_block(ent, x.delta1 @ x.delta2, nc, 0)
    d2_m = GradedMatrix(red, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, GradedMatrix.identity(x.red), 0, nc)
    d1_m = GradedMatrix(irr, red, -1, {k: v for k, v in ent.items() if not v.is_zero})

    r_m = GradedMatrix(red, red, -1, dict(x.r.entries))
    return SComplex(irr, red, d_m, v_m, d1_m, d2_m, r_m, None, {"suspended": 1})


def desuspend_once(x):
    """Negative suspension: C_S = C[2] + R[2], R_S = R, with

        d_S = [[d,0],[delta1,r]]   v_S = [[v,delta2],[0,0]]
        delta2_S = [0; 1]   delta1_S = [delta1 v, delta1 delta2]   r_S = r
    """
    ring, mod = x.ring, x.modulus
    irr = GradedModule(ring, mod, [(f"s.{n}", d - 2) for n, d in x.irr.gens]
                       + [(f"q.{n}", d - 2) for n, d in x.red.gens])
    red = GradedModule(ring, mod, list(x.red.gens))
    nc = x.irr.rank

    ent = {}
    place_block(ent, x.d, 0, 0)
    place_block(ent, x.delta1, nc, 0)
    place_block(ent, x.r, nc, nc)
    d_m = GradedMatrix(irr, irr, -1, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.v, 0, 0)
    place_block(ent, x.delta2, 0, nc)
    v_m = GradedMatrix(irr, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, GradedMatrix.identity(x.red), nc, 0)
    d2_m = GradedMatrix(red, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.delta1 @ x.v, 0, 0)
    place_block(ent, x.delta1 @ x.delta2, 0, nc)
    d1_m = GradedMatrix(irr, red, -1, {k: v for k, v in ent.items() if not v.is_zero})

    r_m = GradedMatrix(red, red, -1, dict(x.r.entries))
    return SComplex(irr, red, d_m, v_m, d1_m, d2_m, r_m, None, {"suspended": -1})


def suspend(x, n):
    """Sigma^n by iterating the single-step definition (n may be negative)."""
    out = x
    for _ in range(abs(n)):
        out = suspend_once(out) if n > 0 else desuspend_once(out)
    return out


def suspend_closed_form(x, n):
    """The closed r-perfect display of Sigma^n for n >= 1:

        C = C[-2n] + R[-2n+1] + R[-2n+3] + ... + R[-1],
        d first row [d, -delta2, -v delta2, ..., -v^{n-1} delta2],
        v = [[v],[delta1,0..],[0,1,0..],...],
        delta2 = [v^n delta2, 0, ..., 0]^T, delta1 = [0,...,0,1].
    """
    if n < 1:
        raise ShapeMismatch("closed form only for n >= 1")
    x.require_r_perfect("closed-form suspension")
    ring, mod = x.ring, x.modulus
    gens = [(f"c.{nm}", d + 2 * n) for nm, d in x.irr.gens]
    for i in range(n):
        shift = 2 * n - 2 * i - 1
        gens += [(f"q{i}.{nm}", d + shift) for nm, d in x.red.gens]
    irr = GradedModule(ring, mod, gens)
    red = GradedModule(ring, mod, list(x.red.gens))
    nc, nr = x.irr.rank, x.red.rank

    ent = {}
    vpow = GradedMatrix.identity(x.irr)
    for i in range(n):
        place_block(ent, -(vpow @ x.delta2), 0, nc + i * nr)
        vpow = x.v @ vpow
    place_block(ent, x.d, 0, 0)
    d_m = GradedMatrix(irr, irr, -1, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.v, 0, 0)
    place_block(ent, x.delta1, nc, 0)
    for i in range(n - 1):
        place_block(ent, GradedMatrix.identity(x.red), nc + (i + 1) * nr, nc + i * nr)
    v_m = GradedMatrix(irr, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, x.v.power(n) @ x.delta2, 0, 0)
    d2_m = GradedMatrix(red, irr, -2, {k: v for k, v in ent.items() if not v.is_zero})

    ent = {}
    place_block(ent, GradedMatrix.identity(x.red), 0, nc + (n - 1) * nr)
    d1_m = GradedMatrix(irr, red, -1, ent)

    r_m = GradedMatrix.zero(red, red, -1)
    return SComplex(irr, red, d_m, v_m, d1_m, d2_m, r_m, None, {"suspended": n})


# ---------------------------------------------------------------------------
# Atomic complexes.


def atomic(n, ring=Z, modulus=4):
    """O(n): O(0) has C = 0, R = R_(0); O(1) and O(-1) are the one-step
    suspensions; |n| > 1 is a tensor power."""
    red = GradedModule(ring, modulus, [("w", 0)])
    empty = GradedModule(ring, modulus, [])
    o0 = SComplex(
        empty, red,
        GradedMatrix.zero(empty, empty, -1), GradedMatrix.zero(empty, empty, -2),
        GradedMatrix.zero(empty, red, -1), GradedMatrix.zero(red, empty, -2),
        GradedMatrix.zero(red, red, -1), None, {"name": "O(0)"},
    )
    if n == 0:
        return o0
    if n == 1:
        irr = GradedModule(ring, modulus, [("u", 1)])
        out = SComplex(
            irr, red,
            GradedMatrix.zero(irr, irr, -1), GradedMatrix.zero(irr, irr, -2),
            GradedMatrix.from_named(irr, red, -1, [("w", "u", ring.one())]),
            GradedMatrix.zero(red, irr, -2),
            GradedMatrix.zero(red, red, -1), None, {"name": "O(1)"},
        )
        return out
    if n == -1:
        irr = GradedModule(ring, modulus, [("u", -2)])
        return SComplex(
            irr, red,
            GradedMatrix.zero(irr, irr, -1), GradedMatrix.zero(irr, irr, -2),
            GradedMatrix.zero(irr, red, -1),
            GradedMatrix.from_named(red, irr, -2, [("u", "w", ring.one())]),
            GradedMatrix.zero(red, red, -1), None, {"name": "O(-1)"},
        )
    step = atomic(1 if n > 0 else -1, ring, modulus)
    out = step
    for _ in range(abs(n) - 1):
        out = tensor(out, step)
    out.metadata["name"] = f"O({n})"
    return out


# ---------------------------------------------------------------------------
# Equivalence witnesses.


class EquivalenceWitness:
    """A homotopy equivalence: forward/backward morphisms plus homotopies.

    Either homotopy slot may be None, recording that the corresponding
    composite equals the identity on the nose.
    """

    def __init__(self, forward, backward, homotopy_fwd_back=None, homotopy_back_fwd=None):
        self.forward = forward
        self.backward = backward
        self.homotopy_fwd_back = homotopy_fwd_back  # between backward.forward-side composite and 1
        self.homotopy_back_fwd = homotopy_back_fwd

    def verify(self):
        checks = []
        checks.extend(("forward " + n, ok, off) for n, ok, off in self.forward.verify().checks)
        checks.extend(("backward " + n, ok, off) for n, ok, off in self.backward.verify().checks)
        from .scomplex import RelationReport, SMorphism as _SM
        ba = self.backward.compose_after(self.forward)
        ab = self.forward.compose_after(self.backward)
        id_src = _SM.identity(self.forward.source)
        id_tgt = _SM.identity(self.forward.target)
        if self.homotopy_back_fwd is None:
            diff = ba - id_src
            ok = all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1, diff.delta2, diff.rho))
            checks.append(("backward.forward = 1", ok, None))
        else:
            checks.extend(("hbf " + n, ok, off)
                          for n, ok, off in self.homotopy_back_fwd.verify().checks)
        if self.homotopy_fwd_back is None:
            diff = ab - id_tgt
            ok = all(m.is_zero for m in (diff.lam, diff.mu, diff.delta1, diff.delta2, diff.rho))
            checks.append(("forward.backward = 1", ok, None))
        else:
            checks.extend(("hfb " + n, ok, off)
                          for n, ok, off in self.homotopy_fwd_back.verify().checks)
        return RelationReport(checks)


def suspension_witness(x):
    """The explicit equivalence Sigma X ~ X . O(1), with lambda'.lambda = 1
    and a homotopy from lambda.lambda' to the identity on the tensor side."""
    ring = x.ring
    t = tensor(x, atomic(1, ring, x.modulus))
    sx = suspend_once(x)
    nc, nr = x.irr.rank, x.red.rank
    lay_cc, lay_ccs, lay_cr, lay_rc = 0, nc, 2 * nc, 3 * nc

    one = ring.one()
    # forward: Sigma X -> X.O(1)
    lam_ent = {}
    for i in range(nc):  # C[-2] -> (C.u)[-1]
        lam_ent[(lay_ccs + i, i)] = one
    for j in range(nr):  # R[-1] -> R.u with sign eps
        lam_ent[(lay_rc + j, nc + j)] = _sgn(ring, x.red.degree(j))
    lam = GradedMatrix(sx.irr, t.irr, 0, lam_ent)

    mu_ent = {}
    for (tj, sj), val in x.r.entries.items():  # R[-1] -> R.u via r
        mu_ent[(lay_rc + tj, nc + sj)] = val
    mu = GradedMatrix(sx.irr, t.irr, -1, mu_ent)

    d2_ent = {}
    for (ti, sj), val in x.delta2.entries.items():  # eps delta2 into C.u
        d2_ent[(lay_cc + ti, sj)] = val * _sgn(ring, x.irr.degree(ti))
    for (ti, sj), val in (x.delta2 @ x.r).entries.items():  # eps delta2 r into (C.u)[-1]
        d2_ent[(lay_ccs + ti, sj)] = val * _sgn(ring, x.irr.degree(ti))
    d2 = GradedMatrix(sx.red, t.irr, -1, d2_ent)

    rho = GradedMatrix(sx.red, t.red, 0,
                       {(j, j): one for j in range(nr)})
    d1 = GradedMatrix.zero(sx.irr, t.red, 0)
    fwd = SMorphism(sx, t, 0, lam, mu, d1, d2, rho)

    # backward: X.O(1) -> Sigma X, with lambda' = [[d, 1, v, 0], [0, 0, delta1, eps]]
    lam_ent = {}
    for (ti, si), val in x.d.entries.items():
        lam_ent[(ti, lay_cc + si)] = val
    for i in range(nc):
        lam_ent[(i, lay_ccs + i)] = one
    for (ti, si), val in x.v.entries.items():
        lam_ent[(ti, lay_cr + si)] = val
    for (tj, si), val in x.delta1.entries.items():
        lam_ent[(nc + tj, lay_cr + si)] = val
    for j in range(nr):
        lam_ent[(nc + j, lay_rc + j)] = _sgn(ring, x.red.degree(j))
    lam_b = GradedMatrix(t.irr, sx.irr, 0, lam_ent)

    mu_ent = {}
    for (tj, si), val in x.delta1.entries.items():
        mu_ent[(nc + tj, lay_cc + si)] = val
    for (tj, sj), val in x.r.entries.items():
        mu_ent[(nc + tj, lay_rc + sj)] = val
    mu_b = GradedMatrix(t.irr, sx.irr, -1, mu_ent)

    rho_b = GradedMatrix(t.red, sx.red, 0, {(j, j): one for j in range(nr)})
    bwd = SMorphism(t, sx, 0, lam_b, mu_b,
                    GradedMatrix.zero(t.irr, sx.red, 0),
                    GradedMatrix.zero(t.red, sx.irr, -1), rho_b)

    # homotopy on the tensor side from fwd.bwd to the identity
    K_ent = {}
    for i in range(nc):
        K_ent[(lay_cc + i, lay_cr + i)] = -_sgn(ring, x.irr.degree(i))
    for (ti, si), val in x.d.entries.items():
        K_ent[(lay_ccs + ti, lay_cr + si)] = -val * _sgn(ring, x.irr.degree(ti))
    K = GradedMatrix(t.irr, t.irr, 1, K_ent)

    L_ent = {}
    for j in range(nr):
        L_ent[(lay_rc + j, lay_rc + j)] = _sgn(ring, x.red.degree(j))
    L = GradedMatrix(t.irr, t.irr, 0, L_ent)

    M2_ent = {}
    for (ti, sj), val in x.delta2.entries.items():
        M2_ent[(lay_ccs + ti, sj)] = -val * _sgn(ring, x.irr.degree(ti))
    for (tj, sj), val in x.r.entries.items():
        M2_ent[(lay_rc + tj, sj)] = val + val
    M2 = GradedMatrix(t.red, t.irr, 0, M2_ent)

    comp = fwd.compose_after(bwd)
    hfb = SHomotopy(comp, SMorphism.identity(t), K, L,
                    GradedMatrix.zero(t.irr, t.red, 1), M2,
                    GradedMatrix.zero(t.red, t.red, 1))
    return EquivalenceWitness(fwd, bwd, homotopy_fwd_back=hfb, homotopy_back_fwd=None)


def o1_o_minus1_witness(ring=Z, modulus=4):
    """The equivalence O(1).O(-1) ~ O(0), with lambda.lambda' = 1 and an
    explicit homotopy from lambda'.lambda to the identity on the tensor."""
    t = tensor(atomic(1, ring, modulus), atomic(-1, ring, modulus))
    o0 = atomic(0, ring, modulus)
    one = ring.one()
    # forward: tensor -> O(0): rho = 1, Delta1 = [0,1,0,0]
    d1 = GradedMatrix(t.irr, o0.red, 0, {(0, 1): one})
    rho = GradedMatrix(t.red, o0.red, 0, {(0, 0): one})
    fwd = SMorphism(t, o0, 0,
                    GradedMatrix.zero(t.irr, o0.irr, 0),
                    GradedMatrix.zero(t.irr, o0.irr, -1),
                    d1,
                    GradedMatrix.zero(t.red, o0.irr, -1),
                    rho)
    # backward: O(0) -> tensor: rho = 1, Delta2 = [1,0,0,0]^T
    d2 = GradedMatrix(o0.red, t.irr, -1, {(0, 0): one})
    rho_b = GradedMatrix(o0.red, t.red, 0, {(0, 0): one})
    bwd = SMorphism(o0, t, 0,
                    GradedMatrix.zero(o0.irr, t.irr, 0),
                    GradedMatrix.zero(o0.irr, t.irr, -1),
                    GradedMatrix.zero(o0.irr, t.red, 0),
                    d2, rho_b)
    # homotopy from bwd.fwd to 1 on the tensor, solved from the five graded
    # homotopy equations (deterministic particular solution)
    from .solve import solve_homotopy

    comp = bwd.compose_after(fwd)
    hbf = solve_homotopy(comp, SMorphism.identity(t))
    if hbf is None:
        raise RuntimeError("no homotopy from backward.forward to the identity")
    return EquivalenceWitness(fwd, bwd, homotopy_fwd_back=None, homotopy_back_fwd=hbf)


# ---------------------------------------------------------------------------
# Suspension of morphisms and homotopies (closed block formulas, r-perfect).


def suspend_morphism(f):
    """Sigma f between suspensions, as a 5x5 block formula."""
    x, y = f.source, f.target
    x.require_r_perfect("suspension of a morphism")
    y.require_r_perfect("suspension of a morphism")
    sx, sy = suspend_once(x), suspend_once(y)
    nc, mc = x.irr.rank, y.irr.rank
    k = f.degree

    ent = {}
    place_block(ent, f.lam, 0, 0)
    place_block(ent, f.delta2, 0, nc)
    place_block(ent, f.rho, mc, nc)
    lam = GradedMatrix(sx.irr, sy.irr, k, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, f.mu, 0, 0)
    place_block(ent, f.delta1, mc, 0)
    mu = GradedMatrix(sx.irr, sy.irr, k - 1, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, f.mu @ x.delta2 + y.v @ f.delta2, 0, 0)
    place_block(ent, f.delta1 @ x.delta2 + y.delta1 @ f.delta2, mc, 0)
    d2 = GradedMatrix(sx.red, sy.irr, k - 1, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    d1 = GradedMatrix.zero(sx.irr, sy.red, k)
    rho = GradedMatrix(sx.red, sy.red, k, dict(f.rho.entries))
    return SMorphism(sx, sy, k, lam, mu, d1, d2, rho)


def suspend_homotopy(h):
    """Sigma K between the suspended morphisms, blockwise."""
    f, g = h.frm, h.to
    x, y = f.source, f.target
    x.require_r_perfect("suspension of a homotopy")
    y.require_r_perfect("suspension of a homotopy")
    sf, sg = suspend_morphism(f), suspend_morphism(g)
    nc, mc = x.irr.rank, y.irr.rank
    k = f.degree

    ent = {}
    place_block(ent, h.K, 0, 0)
    place_block(ent, -h.M2, 0, nc)
    place_block(ent, -h.J, mc, nc)
    K = GradedMatrix(sf.source.irr, sf.target.irr, k + 1,
                     {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, h.L, 0, 0)
    place_block(ent, h.M1, mc, 0)
    L = GradedMatrix(sf.source.irr, sf.target.irr, k,
                     {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, y.v @ h.M2 + h.L @ x.delta2, 0, 0)
    place_block(ent, y.delta1 @ h.M2 + h.M1 @ x.delta2, mc, 0)
    M2 = GradedMatrix(sf.source.red, sf.target.irr, k,
                      {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    M1 = GradedMatrix.zero(sf.source.irr, sf.target.red, k + 1)
    J = GradedMatrix(sf.source.red, sf.target.red, k + 1, dict(h.J.entries))
    return SHomotopy(sf, sg, K, L, M1, M2, J)
