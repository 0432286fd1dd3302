"""Height-n morphism calculus on r-perfect S-complexes.

A height-n morphism carries components (lambda, mu, Delta1, Delta2) together
with reducible-interaction maps tau_i : R -> R' of degree k - 2i, vanishing
for i < n.  For i >= 1 the tau_i are determined by the closed formula

    tau_i = delta1'.v'^{i-1}.Delta2 + Delta1.v^{i-1}.delta2
            + sum_{j=0}^{i-2} delta1'.v'^j.mu.v^{i-2-j}.delta2

and the nonpositive tau_i enter the four generalized chain relations.
"""

from __future__ import annotations

from .errors import ShapeMismatch
from .gradedlin import GradedMatrix, field_is_invertible, place_block
from .rings import Z
from .scomplex import RelationReport, SMorphism, _rel
from .functors import suspend, suspend_once


def _tau_bound(x, y):
    return x.irr.rank + y.irr.rank + 2


def _powers(m, n):
    out = [GradedMatrix.identity(m.source)]
    for _ in range(n):
        out.append(m @ out[-1])
    return out


def tau_closed_formula(x, y, lam, mu, delta1, delta2, i):
    """The determined tau_i for i >= 1."""
    if i < 1:
        raise ShapeMismatch("closed formula applies to i >= 1")
    vp = _powers(y.v, i - 1)
    vs = _powers(x.v, i - 1)
    out = y.delta1 @ vp[i - 1] @ delta2 + delta1 @ vs[i - 1] @ x.delta2
    for j in range(i - 1):
        out = out + y.delta1 @ vp[j] @ mu @ vs[i - 2 - j] @ x.delta2
    return out


class HeightMorphism:
    """Components plus the tau family; height = least index with tau nonzero
    cleared below it.  Degree must be even."""

    def __init__(self, source, target, degree, lam, mu, delta1, delta2, tau, height):
        source.require_r_perfect("height morphism")
        target.require_r_perfect("height morphism")
        mod = source.modulus
        k = degree % mod
        if degree % 2 != 0:
            raise ShapeMismatch("height morphisms have even degree")
        bound = _tau_bound(source, target)
        for i in tau:
            if abs(i) > bound:
                raise ShapeMismatch(
                    f"declared tau support |{i}| exceeds the bound {bound}")
        expect = [
            (lam, source.irr, target.irr, k, "lambda"),
            (mu, source.irr, target.irr, k - 1, "mu"),
            (delta1, source.irr, target.red, k, "Delta1"),
            (delta2, source.red, target.irr, k - 1, "Delta2"),
        ]
        for m, src, tgt, deg, name in expect:
            if m.source != src or m.target != tgt:
                raise ShapeMismatch(f"component {name} has wrong endpoints")
            if m.entries and m.degree != deg % mod:
                raise ShapeMismatch(f"component {name} needs degree {deg} mod {mod}")
        for i, t in tau.items():
            if t.source != source.red or t.target != target.red:
                raise ShapeMismatch("tau maps R to R'")
            if t.entries and t.degree != (k - 2 * i) % mod:
                raise ShapeMismatch(f"tau_{i} needs degree {k - 2 * i} mod {mod}")
        self.source = source
        self.target = target
        self.degree = k
        self.lam = lam
        self.mu = mu
        self.delta1 = delta1
        self.delta2 = delta2
        self.tau = {i: t for i, t in sorted(tau.items()) if not t.is_zero}
        self.height = height

    @classmethod
    def from_components(cls, source, target, degree, lam, mu, delta1, delta2,
                        declared_tau=None):
        """Fill positive taus from the closed formula; declared_tau supplies
        the data for i <= 0."""
        tau = dict(declared_tau or {})
        bound = _tau_bound(source, target)
        for i in range(1, bound + 1):
            t = tau_closed_formula(source, target, lam, mu, delta1, delta2, i)
            if not t.is_zero:
                tau[i] = t
        height = None
        for i in sorted(tau):
            if not tau[i].is_zero:
                height = i
                break
        if height is None:
            height = bound  # the zero morphism has every height; report the bound
        return cls(source, target, degree, lam, mu, delta1, delta2, tau, height)

    @classmethod
    def from_morphism(cls, f):
        """An ordinary even morphism as a height >= 0 datum (tau_0 = rho)."""
        return cls.from_components(f.source, f.target, f.degree,
                                   f.lam, f.mu, f.delta1, f.delta2,
                                   {0: f.rho} if not f.rho.is_zero else {})

    def to_morphism(self):
        """Forget positive taus; valid when height >= 0."""
        if self.height < 0:
            raise ShapeMismatch("negative-height data is not an S-morphism")
        rho = self.tau.get(0, GradedMatrix.zero(self.source.red, self.target.red, self.degree))
        return SMorphism(self.source, self.target, self.degree,
                         self.lam, self.mu, self.delta1, self.delta2, rho)

    def tau_at(self, i):
        if i in self.tau:
            return self.tau[i]
        return GradedMatrix.zero(self.source.red, self.target.red,
                                 self.degree - 2 * i)

    @property
    def is_strong(self):
        t = self.tau_at(self.height)
        if t.source.rank != t.target.rank:
            return False
        ring = t.ring
        if ring == Z:
            from .gradedlin import snf_diagonal
            diag = snf_diagonal(t.to_int_rows()) if t.source.rank else []
            return all(x == 1 for x in diag) and len(diag) == t.source.rank
        return field_is_invertible(t.to_dense(), ring)

    def verify(self, claimed_height=None):
        """All four relations, the tau closed formula, and the height claim.

        A height-n morphism is accepted as height m for every m <= n.
        """
        x, y = self.source, self.target
        bound = _tau_bound(x, y)
        vp = _powers(y.v, bound + 1)
        vs = _powers(x.v, bound + 1)
        neg = [i for i in self.tau if i <= 0]

        rel1 = y.d @ self.lam - self.lam @ x.d
        for i in [-i for i in neg if i < 0]:
            for j in range(i):
                rel1 = rel1 - vp[j] @ y.delta2 @ self.tau_at(-i) @ x.delta1 @ vs[i - 1 - j]
        rel2 = -(y.delta1 @ self.lam) + self.delta1 @ x.d
        for i in range(0, bound + 1):
            t = self.tau_at(-i)
            if not t.is_zero:
                rel2 = rel2 + t @ x.delta1 @ vs[i]
        rel3 = self.lam @ x.delta2 + y.d @ self.delta2
        for i in range(0, bound + 1):
            t = self.tau_at(-i)
            if not t.is_zero:
                rel3 = rel3 - vp[i] @ y.delta2 @ t
        rel4 = (self.mu @ x.d + y.d @ self.mu + self.lam @ x.v - y.v @ self.lam
                + self.delta2 @ x.delta1 - y.delta2 @ self.delta1)

        checks = [
            _rel("relation 1 (d'lambda - lambda d - tau corrections)", rel1),
            _rel("relation 2 (-delta1' lambda + Delta1 d + tau corrections)", rel2),
            _rel("relation 3 (lambda delta2 + d' Delta2 - tau corrections)", rel3),
            _rel("relation 4 (mu anticommutator)", rel4),
        ]
        for i in range(1, bound + 1):
            want = tau_closed_formula(x, y, self.lam, self.mu, self.delta1, self.delta2, i)
            got = self.tau_at(i)
            checks.append(_rel(f"tau_{i} closed formula", got - want))
        if claimed_height is not None:
            ok = all(self.tau_at(i).is_zero for i in range(-bound, min(claimed_height, bound + 1)))
            checks.append((f"height >= {claimed_height}", ok, None))
        return RelationReport(checks)


def verify_height(f, claimed_height=None):
    return f.verify(claimed_height)


def iota(x, n):
    """The strong height-n morphism X -> Sigma^n X (n >= 1)."""
    if n < 1:
        raise ShapeMismatch("iota is defined for n >= 1")
    x.require_r_perfect("iota")
    sx = suspend(x, n)
    nc, nr = x.irr.rank, x.red.rank
    one = x.ring.one()
    # C sits as the deepest block of C_{Sigma^n}; block 2 is R[-2n+1].
    lam = GradedMatrix(x.irr, sx.irr, 2 * n,
                       {(i, i): one for i in range(nc)})
    d2 = GradedMatrix(x.red, sx.irr, 2 * n - 1,
                      {(nc + j, j): one for j in range(nr)})
    return HeightMorphism.from_components(
        x, sx, 2 * n, lam,
        GradedMatrix.zero(x.irr, sx.irr, 2 * n - 1),
        GradedMatrix.zero(x.irr, sx.red, 2 * n),
        d2, {})


def kappa(x, n):
    """The strong height-(-n) morphism Sigma^n X -> X (n >= 1)."""
    if n < 1:
        raise ShapeMismatch("kappa is defined for n >= 1")
    x.require_r_perfect("kappa")
    sx = suspend(x, n)
    nc = x.irr.rank
    one = x.ring.one()
    lam = GradedMatrix(sx.irr, x.irr, -2 * n,
                       {(i, i): one for i in range(nc)})
    tau = {-n: GradedMatrix.identity(x.red)}
    return HeightMorphism.from_components(
        sx, x, -2 * n, lam,
        GradedMatrix.zero(sx.irr, x.irr, -2 * n - 1),
        GradedMatrix.zero(sx.irr, x.red, -2 * n),
        GradedMatrix.zero(sx.red, x.irr, -2 * n - 1),
        tau)


def compose_heights(g, f):
    """Composite of height morphisms (g after f), heights add."""
    if f.target.irr.gens != g.source.irr.gens or f.target.red.gens != g.source.red.gens:
        raise ShapeMismatch("heights composition endpoints disagree")
    x, ymid, z = f.source, f.target, g.target
    sup_f = max(0, -min([i for i in f.tau] or [0]))
    sup_g = max(0, -min([i for i in g.tau] or [0]))
    depth = sup_f + sup_g + 2
    vX = _powers(x.v, depth + 2)
    vY = _powers(ymid.v, depth + 2)
    vZ = _powers(z.v, depth + 2)

    def tg(i):
        return g.tau_at(i)

    def tf(i):
        return f.tau_at(i)

    k = (g.degree + f.degree) % x.modulus
    lam = g.lam @ f.lam
    for i in range(0, sup_g):
        for j in range(i + 1):
            lam = lam + vZ[j] @ z.delta2 @ tg(-(i + 1)) @ f.delta1 @ vX[i - j]
    for i in range(0, sup_f):
        for j in range(i + 1):
            lam = lam + vZ[j] @ g.delta2 @ tf(-(i + 1)) @ x.delta1 @ vX[i - j]
    for i in range(0, sup_g - 1):
        for j in range(i + 1):
            for kk in range(i - j + 1):
                lam = lam + vZ[j] @ z.delta2 @ tg(-(i + 2)) @ ymid.delta1 @ vY[kk] @ f.mu @ vX[i - j - kk]
    for i in range(0, sup_f - 1):
        for j in range(i + 1):
            for kk in range(i - j + 1):
                lam = lam + vZ[j] @ g.mu @ vY[kk] @ ymid.delta2 @ tf(-(i + 2)) @ x.delta1 @ vX[i - j - kk]

    mu = g.lam @ f.mu + g.mu @ f.lam + g.delta2 @ f.delta1

    d1 = g.delta1 @ f.lam
    for i in range(0, sup_g + 1):
        t = tg(-i)
        if not t.is_zero:
            d1 = d1 + t @ f.delta1 @ vX[i]
    for i in range(0, sup_g):
        for j in range(i + 1):
            t = tg(-(i + 1))
            if not t.is_zero:
                d1 = d1 + t @ ymid.delta1 @ vY[j] @ f.mu @ vX[i - j]

    d2 = g.lam @ f.delta2
    for i in range(0, sup_f + 1):
        t = tf(-i)
        if not t.is_zero:
            d2 = d2 + vZ[i] @ g.delta2 @ t
    for i in range(0, sup_f):
        for j in range(i + 1):
            t = tf(-(i + 1))
            if not t.is_zero:
                d2 = d2 + vZ[j] @ g.mu @ vY[i - j] @ ymid.delta2 @ t

    bound = _tau_bound(x, z)
    tau = {}
    for i in range(-bound, 0 + 1):
        acc = GradedMatrix.zero(x.red, z.red, k - 2 * i)
        for kk in f.tau:
            tgi = g.tau.get(i - kk)
            if tgi is not None:
                acc = acc + tgi @ f.tau[kk]
        if not acc.is_zero:
            tau[i] = acc
    return HeightMorphism.from_components(x, z, k, lam, mu, d1, d2,
                                          {i: t for i, t in tau.items() if i <= 0})


def factor_through_suspension(f):
    """Factor a height-n morphism through the suspension tower.

    n >= 1: returns a height-0 morphism Sigma^n X -> X' with rho' = tau_n,
    satisfying (returned) . iota_n = f.
    n <= -1: returns a height-0 morphism X -> Sigma^{|n|} X' with
    tau' = tau_n, satisfying kappa_{|n|} . (returned) = f.
    n = 0: returns f itself.
    """
    n = f.height
    x, y = f.source, f.target
    if n == 0:
        return f
    if n > 0:
        sx = suspend(x, n)
        nc, nr = x.irr.rank, x.red.rank
        k = (f.degree - 2 * n) % x.modulus
        vp = _powers(y.v, n + 1)
        vs = _powers(x.v, n + 1)
        mu_i = [GradedMatrix.zero(x.irr, y.irr, f.degree - 1 - 2 * 0)]
        # mu_i = sum_{j<i} v'^j mu v^{i-j-1}
        for i in range(1, n + 1):
            acc = GradedMatrix.zero(x.irr, y.irr, f.degree - 1 - 2 * (i - 1) - 0)
            for j in range(i):
                acc = acc + vp[j] @ f.mu @ vs[i - j - 1]
            mu_i.append(acc)
        lam_ent = {}
        place_block(lam_ent, f.lam, 0, 0)
        for i in range(1, n + 1):
            # lambda'_i acts on R[-2(n-i)-1], the (i-1)-st reducible block
            blockcol = nc + (i - 1) * nr
            li = mu_i[i - 1] @ x.delta2 + vp[i - 1] @ f.delta2
            place_block(lam_ent, li, 0, blockcol)
        lam = GradedMatrix(sx.irr, y.irr, k,
                           {kk: vv for kk, vv in lam_ent.items() if not vv.is_zero})
        mu_ent = {}
        place_block(mu_ent, f.mu, 0, 0)
        mu = GradedMatrix(sx.irr, y.irr, k - 1,
                          {kk: vv for kk, vv in mu_ent.items() if not vv.is_zero})
        d1_ent = {}
        place_block(d1_ent, f.delta1, 0, 0)
        d1 = GradedMatrix(sx.irr, y.red, k,
                          {kk: vv for kk, vv in d1_ent.items() if not vv.is_zero})
        d2 = mu_i[n] @ x.delta2 + vp[n] @ f.delta2
        d2 = GradedMatrix(sx.red, y.irr, k - 1, dict(d2.entries))
        rho = f.tau_at(n)
        rho = GradedMatrix(sx.red, y.red, k, dict(rho.entries))
        return HeightMorphism.from_components(sx, y, k, lam, mu, d1, d2,
                                              {0: rho} if not rho.is_zero else {})
    m = -n
    sy = suspend(y, m)
    mc, mr = y.irr.rank, y.red.rank
    k = (f.degree + 2 * m) % x.modulus
    vs = _powers(x.v, m + 1)
    lam_ent = {}
    place_block(lam_ent, f.lam, 0, 0)
    for t in range(m):  # row block R'[-2(m-t)+...]: sum_{i=t+1}^m tau_{-i} delta1 v^{i-1-t}
        acc = None
        for i in range(t + 1, m + 1):
            term = f.tau_at(-i) @ x.delta1 @ vs[i - 1 - t]
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero:
            place_block(lam_ent, acc, mc + t * mr, 0)
    lam = GradedMatrix(x.irr, sy.irr, k,
                       {kk: vv for kk, vv in lam_ent.items() if not vv.is_zero})
    mu_ent = {}
    place_block(mu_ent, f.mu, 0, 0)
    place_block(mu_ent, f.delta1, mc, 0)
    mu = GradedMatrix(x.irr, sy.irr, k - 1,
                      {kk: vv for kk, vv in mu_ent.items() if not vv.is_zero})
    d1 = GradedMatrix.zero(x.irr, sy.red, k)
    d2_ent = {}
    place_block(d2_ent, f.delta2, 0, 0)
    for t in range(m):  # R'[-2(m-t)-1] block gets tau_{-t}
        tt = f.tau_at(-t)
        if not tt.is_zero:
            place_block(d2_ent, tt, mc + t * mr, 0)
    d2 = GradedMatrix(x.red, sy.irr, k - 1,
                      {kk: vv for kk, vv in d2_ent.items() if not vv.is_zero})
    rho = GradedMatrix(x.red, sy.red, k, dict(f.tau_at(-m).entries))
    return HeightMorphism.from_components(x, sy, k, lam, mu, d1, d2,
                                          {0: rho} if not rho.is_zero else {})


def height_to_json(h):
    """The morphism document extended with height and tau keys (nonpositive
    taus only; positive ones are determined by the closed formula)."""
    from .scomplex import morphism_to_json

    rho = h.tau_at(0)
    base = SMorphism(h.source, h.target, h.degree, h.lam, h.mu, h.delta1,
                     h.delta2, rho)
    doc = morphism_to_json(base, include_complexes=True)
    doc.pop("rho", None)
    doc["height"] = h.height
    doc["tau"] = {str(i): [[t.target.name(a), t.source.name(b), str(v)]
                           for (a, b), v in sorted(t.entries.items())]
                  for i, t in h.tau.items() if i <= 0}
    return doc


def heights_equal(a, b):
    """Componentwise equality including the tau families."""
    keys = set(a.tau) | set(b.tau)
    return (a.lam == b.lam and a.mu == b.mu and a.delta1 == b.delta1
            and a.delta2 == b.delta2
            and all(a.tau_at(i) == b.tau_at(i) for i in keys))


# ---------------------------------------------------------------------------
# Odd-degree morphisms with their nu-map.


class OddMorphism:
    """An odd-degree morphism between r-perfect complexes plus nu_0."""

    def __init__(self, morphism, nu):
        morphism.source.require_r_perfect("odd morphism")
        morphism.target.require_r_perfect("odd morphism")
        if morphism.degree % 2 != 1:
            raise ShapeMismatch("odd morphism must have odd degree")
        mod = morphism.source.modulus
        if nu.source != morphism.source.red or nu.target != morphism.target.red:
            raise ShapeMismatch("nu maps R to R'")
        if nu.entries and nu.degree != (morphism.degree - 1) % mod:
            raise ShapeMismatch("nu has degree k - 1")
        self.morphism = morphism
        self.nu = nu

    def verify(self):
        return self.morphism.verify()


def compose_odd_after_height_minus1(g, f):
    """Odd g after a height-(-1) even f, with the nu-corrected components."""
    if any(i < -1 for i in f.tau):
        raise ShapeMismatch("f must have height >= -1")
    gm = g.morphism
    x, ymid, z = f.source, gm.source, gm.target
    if f.target.irr.gens != ymid.irr.gens or f.target.red.gens != ymid.red.gens:
        raise ShapeMismatch("composition endpoints disagree")
    t0, tm1 = f.tau_at(0), f.tau_at(-1)
    lam = gm.lam @ f.lam + gm.delta2 @ tm1 @ x.delta1
    mu = gm.lam @ f.mu + gm.mu @ f.lam + gm.delta2 @ f.delta1
    d1 = gm.delta1 @ f.lam + g.nu @ tm1 @ x.delta1
    d2 = (gm.lam @ f.delta2 + gm.delta2 @ t0 + z.delta2 @ g.nu @ tm1
          + z.v @ gm.delta2 @ tm1 + gm.mu @ ymid.delta2 @ tm1)
    k = (gm.degree + f.degree) % x.modulus
    rho = GradedMatrix.zero(x.red, z.red, k)
    return SMorphism(x, z, k, lam, mu, d1, d2, rho)


def odd_to_suspension_morphism(g):
    """The morphism Sigma X' -> X'' with lambda''.iota_1 = underlying g."""
    gm = g.morphism
    yp, z = gm.source, gm.target
    yp.require_r_perfect("odd-to-suspension")
    z.require_r_perfect("odd-to-suspension")
    syp = suspend_once(yp)
    nc = yp.irr.rank
    k = (gm.degree - 2) % yp.modulus

    ent = {}
    place_block(ent, gm.lam, 0, 0)
    place_block(ent, gm.delta2, 0, nc)
    lam = GradedMatrix(syp.irr, z.irr, k, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, gm.mu, 0, 0)
    mu = GradedMatrix(syp.irr, z.irr, k - 1, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    ent = {}
    place_block(ent, gm.delta1, 0, 0)
    place_block(ent, g.nu, 0, nc)
    d1 = GradedMatrix(syp.irr, z.red, k, {kk: vv for kk, vv in ent.items() if not vv.is_zero})

    d2 = gm.mu @ yp.delta2 + z.v @ gm.delta2 + z.delta2 @ g.nu
    d2 = GradedMatrix(syp.red, z.irr, k - 1, dict(d2.entries))
    rho = GradedMatrix.zero(syp.red, z.red, k)
    return SMorphism(syp, z, k, lam, mu, d1, d2, rho)
