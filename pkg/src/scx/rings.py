"""Exact coefficient rings: Z, Z/p, Q, Z[T^{+-1}] and the fraction field Q(T).

Every element is stored in a unique canonical form, so equality is structural:

* integers as Python ints,
* residues reduced into [0, p),
* rationals as reduced ``Fraction``-style pairs with positive denominator,
* Laurent polynomials as sorted (exponent, coefficient) tuples without zeros,
* rational functions as a reduced pair num/den with den an ordinary integer
  polynomial, positive leading coefficient, nonzero constant term, and the
  pair having coprime content; the monomial unit is folded into num.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivideByZero, DivisionUnsupported, RingMismatch, ScxError, SchemaError

# ---------------------------------------------------------------------------
# Laurent polynomial helpers.  A "lau" is a tuple of (exp, coeff) pairs,
# sorted by exponent, with no zero coefficients.  Coefficients are ints
# except where noted.

LAU_ZERO = ()
LAU_ONE = ((0, 1),)


def lau_from_dict(d):
    return tuple(sorted((e, c) for e, c in d.items() if c != 0))


def lau_add(a, b):
    d = dict(a)
    for e, c in b:
        d[e] = d.get(e, 0) + c
    return lau_from_dict(d)


def lau_neg(a):
    return tuple((e, -c) for e, c in a)


def lau_mul(a, b):
    d = {}
    for ea, ca in a:
        for eb, cb in b:
            e = ea + eb
            d[e] = d.get(e, 0) + ca * cb
    return lau_from_dict(d)


def lau_scale(a, k):
    if k == 0:
        return LAU_ZERO
    return tuple((e, c * k) for e, c in a)


def lau_shift(a, k):
    return tuple((e + k, c) for e, c in a)


def lau_min_exp(a):
    return a[0][0]


def lau_content(a):
    g = 0
    for _, c in a:
        g = gcd(g, abs(c))
    return g


def lau_is_monomial(a):
    return len(a) == 1


def _poly_coeffs(a):
    """Integer lau with min exp 0 -> dense ascending Fraction coefficient list."""
    deg = a[-1][0]
    out = [Fraction(0)] * (deg + 1)
    for e, c in a:
        out[e] = Fraction(c)
    return out


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Division of dense Fraction coefficient lists; returns (q, r)."""
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while _poly_trim(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def ratfun_normalize(num, den):
    """Canonical form of num/den for integer laus; den must be nonzero.

    The pair is reduced jointly: the polynomial gcd is cancelled over Q,
    denominators are cleared and the common integer content removed from the
    pair (never from one side alone), and the denominator gets a positive
    leading coefficient; the monomial unit is folded into the numerator.
    """
    if not den:
        raise DivideByZero("zero denominator in Q(T)")
    if not num:
        return (LAU_ZERO, LAU_ONE)
    a, b = lau_min_exp(num), lau_min_exp(den)
    p = _poly_coeffs(lau_shift(num, -a))
    q = _poly_coeffs(lau_shift(den, -b))
    g = _poly_gcd(p, q)
    if len(g) > 1:
        p, _ = _poly_divmod(p, g)
        q, _ = _poly_divmod(q, g)
    scale = 1
    for c in p + q:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ip = [int(c * scale) for c in p]
    iq = [int(c * scale) for c in q]
    content = 0
    for c in ip + iq:
        content = gcd(content, abs(c))
    ip = [c // content for c in ip]
    iq = [c // content for c in iq]
    if iq[-1] < 0:
        ip = [-c for c in ip]
        iq = [-c for c in iq]
    p0 = tuple((e, c) for e, c in enumerate(ip) if c)
    q0 = tuple((e, c) for e, c in enumerate(iq) if c)
    return (lau_shift(p0, a - b), q0)


# ---------------------------------------------------------------------------
# Rings.


class Ring:
    """A coefficient ring, identified by kind (and p for prime fields)."""

    INT = "Z"
    MODP = "Zp"
    RAT = "Q"
    LAURENT = "LaurentZ"
    FRAC = "FracLaurentQ"

    _KINDS = (INT, MODP, RAT, LAURENT, FRAC)

    def __init__(self, kind, p=None):
        if kind not in self._KINDS:
            raise SchemaError(f"unknown ring kind {kind!r}")
        if kind == self.MODP:
            if p is None or p < 2 or not _is_prime(p):
                raise ScxError(f"Z/p requires a prime p, got {p}")
        elif p is not None:
            raise ScxError("p only makes sense for prime fields")
        self.kind = kind
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"Z/{self.p}" if self.kind == self.MODP else self.kind

    @property
    def is_field(self):
        return self.kind in (self.MODP, self.RAT, self.FRAC)

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.kind == self.INT:
            return RingElement(self, n)
        if self.kind == self.MODP:
            return RingElement(self, n % self.p)
        if self.kind == self.RAT:
            return RingElement(self, (n, 1))
        if self.kind == self.LAURENT:
            return RingElement(self, ((0, n),) if n else LAU_ZERO)
        return RingElement(self, (((0, n),) if n else LAU_ZERO, LAU_ONE))

    def monomial(self, exp, coeff=1):
        """coeff * T^exp in Z[T^{+-1}] or Q(T)."""
        if self.kind == self.LAURENT:
            return RingElement(self, ((exp, coeff),) if coeff else LAU_ZERO)
        if self.kind == self.FRAC:
            return RingElement(self, ratfun_normalize(((exp, coeff),) if coeff else LAU_ZERO, LAU_ONE))
        raise UnsupportedRingOp(f"no T in {self!r}")

    def parse(self, text):
        return parse_element(self, text)


class UnsupportedRingOp(ScxError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


Z = Ring(Ring.INT)
Q = Ring(Ring.RAT)
LAURENT_Z = Ring(Ring.LAURENT)
FRAC_LAURENT_Q = Ring(Ring.FRAC)

_ZP_CACHE = {}


def Zp(p):
    if p not in _ZP_CACHE:
        _ZP_CACHE[p] = Ring(Ring.MODP, p)
    return _ZP_CACHE[p]


class RingElement:
    """An exact element of one of the supported rings.  Immutable."""

    __slots__ = ("ring", "val")

    def __init__(self, ring, val):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "val", val)

    def __setattr__(self, *a):
        raise AttributeError("RingElement is immutable")

    # -- predicates

    @property
    def is_zero(self):
        k = self.ring.kind
        if k in (Ring.INT, Ring.MODP):
            return self.val == 0
        if k == Ring.RAT:
            return self.val[0] == 0
        if k == Ring.LAURENT:
            return self.val == LAU_ZERO
        return self.val[0] == LAU_ZERO

    @property
    def is_one(self):
        return self == self.ring.one()

    @property
    def is_unit(self):
        k = self.ring.kind
        if k == Ring.INT:
            return self.val in (1, -1)
        if k == Ring.LAURENT:
            return lau_is_monomial(self.val) and self.val[0][1] in (1, -1)
        return not self.is_zero

    def _chk(self, other):
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    # -- arithmetic

    def __add__(self, other):
        self._chk(other)
        r, k = self.ring, self.ring.kind
        if k == Ring.INT:
            return RingElement(r, self.val + other.val)
        if k == Ring.MODP:
            return RingElement(r, (self.val + other.val) % r.p)
        if k == Ring.RAT:
            (a, b), (c, d) = self.val, other.val
            return RingElement(r, _rat_norm(a * d + c * b, b * d))
        if k == Ring.LAURENT:
            return RingElement(r, lau_add(self.val, other.val))
        (n1, d1), (n2, d2) = self.val, other.val
        return RingElement(r, ratfun_normalize(lau_add(lau_mul(n1, d2), lau_mul(n2, d1)), lau_mul(d1, d2)))

    def __neg__(self):
        r, k = self.ring, self.ring.kind
        if k == Ring.INT:
            return RingElement(r, -self.val)
        if k == Ring.MODP:
            return RingElement(r, (-self.val) % r.p)
        if k == Ring.RAT:
            return RingElement(r, (-self.val[0], self.val[1]))
        if k == Ring.LAURENT:
            return RingElement(r, lau_neg(self.val))
        return RingElement(r, (lau_neg(self.val[0]), self.val[1]))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._chk(other)
        r, k = self.ring, self.ring.kind
        if k == Ring.INT:
            return RingElement(r, self.val * other.val)
        if k == Ring.MODP:
            return RingElement(r, (self.val * other.val) % r.p)
        if k == Ring.RAT:
            (a, b), (c, d) = self.val, other.val
            return RingElement(r, _rat_norm(a * c, b * d))
        if k == Ring.LAURENT:
            return RingElement(r, lau_mul(self.val, other.val))
        (n1, d1), (n2, d2) = self.val, other.val
        return RingElement(r, ratfun_normalize(lau_mul(n1, n2), lau_mul(d1, d2)))

    def inverse(self):
        if not self.is_unit:
            raise DivideByZero(f"{self} is not invertible in {self.ring!r}")
        r, k = self.ring, self.ring.kind
        if k == Ring.INT:
            return RingElement(r, self.val)
        if k == Ring.MODP:
            return RingElement(r, pow(self.val, r.p - 2, r.p))
        if k == Ring.RAT:
            a, b = self.val
            return RingElement(r, _rat_norm(b, a))
        if k == Ring.LAURENT:
            e, c = self.val[0]
            return RingElement(r, ((-e, c),))
        n, d = self.val
        return RingElement(r, ratfun_normalize(d, n))

    def __truediv__(self, other):
        self._chk(other)
        if not self.ring.is_field:
            raise DivisionUnsupported(f"{self.ring!r} is not a field")
        if other.is_zero:
            raise DivideByZero("division by zero")
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, RingElement) and self.ring == other.ring and self.val == other.val

    def __hash__(self):
        return hash((self.ring, self.val))

    def __repr__(self):
        return f"<{self} over {self.ring!r}>"

    def __str__(self):
        return format_element(self)


def _rat_norm(a, b):
    if b == 0:
        raise DivideByZero("zero denominator")
    g = gcd(abs(a), abs(b))
    if g:
        a, b = a // g, b // g
    if b < 0:
        a, b = -a, -b
    return (a, b)


def ring_arith(a, b, op):
    """Spec-level entry point: op in {'add','sub','mul','div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ScxError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# The bit-exact text grammar: signed sums of terms, each an optional integer
# (or a/b fraction) coefficient, optional '*', optional T^e.


def _tokenize_terms(text):
    """Split into (sign, coeff_str|None, exp|None) triples."""
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise SchemaError("empty ring element string")
    terms, i, n = [], 0, len(s)
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        j = i
        while j < n and (s[j].isdigit() or s[j] == "/"):
            j += 1
        coeff = s[i:j] if j > i else None
        i = j
        if i < n and s[i] == "*":
            i += 1
            if i >= n or s[i] != "T":
                raise SchemaError(f"expected T after '*' in {text!r}")
        exp = None
        if i < n and s[i] == "T":
            i += 1
            if i < n and s[i] == "^":
                i += 1
                j = i
                if j < n and s[j] in "+-":
                    j += 1
                while j < n and s[j].isdigit():
                    j += 1
                if j == i or not s[i:j].lstrip("+-"):
                    raise SchemaError(f"bad exponent in {text!r}")
                exp = int(s[i:j])
                i = j
            else:
                exp = 1
        if coeff is None and exp is None:
            raise SchemaError(f"cannot parse term in {text!r}")
        terms.append((sign, coeff, exp))
    return terms


def parse_element(ring, text):
    """Parse the shared term grammar into an element of `ring`."""
    text = text.strip()
    if ring.kind == Ring.FRAC and text.startswith("("):
        # extension for true rational functions: "(num)/(den)"
        depth, split = 0, None
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = i
                break
        if split is not None:
            num = parse_element(LAURENT_Z, text[1:split - 1])
            den = parse_element(LAURENT_Z, text[split + 2:-1])
            return RingElement(ring, ratfun_normalize(num.val, den.val))
    terms = _tokenize_terms(text)
    allow_frac = ring.kind in (Ring.RAT, Ring.FRAC)
    allow_t = ring.kind in (Ring.LAURENT, Ring.FRAC)
    total = ring.zero()
    for sign, coeff, exp in terms:
        if exp is not None and not allow_t:
            raise SchemaError(f"variable T not allowed in {ring!r}")
        num, den = 1, 1
        if coeff is not None:
            if "/" in coeff:
                if not allow_frac:
                    raise SchemaError(f"fractions not allowed in {ring!r}")
                a, _, b = coeff.partition("/")
                if not a or not b:
                    raise SchemaError(f"bad fraction {coeff!r}")
                num, den = int(a), int(b)
            else:
                num = int(coeff)
        num *= sign
        if ring.kind == Ring.FRAC:
            t = RingElement(ring, ratfun_normalize(((exp or 0, num),), ((0, den),)))
        elif ring.kind == Ring.LAURENT:
            t = RingElement(ring, ((exp or 0, num),) if num else LAU_ZERO)
        elif ring.kind == Ring.RAT:
            t = RingElement(ring, _rat_norm(num, den))
        else:
            t = ring.from_int(num)
        total = total + t
    return total


def _format_lau(lau, den=1):
    if not lau:
        return "0"
    parts = []
    for e, c in sorted(lau, reverse=True):
        if e == 0:
            mono = None
        elif e == 1:
            mono = "T"
        else:
            mono = f"T^{e}"
        cd = den
        if cd != 1:
            g = gcd(abs(c), cd)
            cnum, cd = abs(c) // g, cd // g
            coeff = f"{cnum}/{cd}" if cd != 1 else str(cnum)
        else:
            coeff = str(abs(c))
        if mono is None:
            term = coeff
        elif abs(c) == 1 and den == 1:
            term = mono
        else:
            term = f"{coeff}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + term)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def format_element(x):
    k = x.ring.kind
    if k in (Ring.INT, Ring.MODP):
        return str(x.val)
    if k == Ring.RAT:
        a, b = x.val
        return str(a) if b == 1 else f"{a}/{b}"
    if k == Ring.LAURENT:
        return _format_lau(x.val)
    num, den = x.val
    if den == LAU_ONE:
        return _format_lau(num)
    if lau_is_monomial(den):
        e, c = den[0]
        shifted = lau_shift(num, -e) if c > 0 else lau_neg(lau_shift(num, -e))
        return _format_lau(shifted, den=abs(c)) if abs(c) != 1 else _format_lau(shifted)
    return f"({_format_lau(num)})/({_format_lau(den)})"


# ---------------------------------------------------------------------------
# Ring maps.


class RingMap:
    """A homomorphism between supported rings, one of five kinds."""

    IDENTITY = "identity"
    MOD_P = "reduce-mod-p"
    Z_TO_Q = "include-Z-in-Q"
    EVAL_T = "evaluate-T-at"
    LAURENT_TO_FRAC = "include-Laurent-in-fraction-field"

    def __init__(self, rule, source, target, unit=None):
        self.rule = rule
        self.source = source
        self.target = target
        self.unit = unit
        if rule == self.IDENTITY:
            if source != target:
                raise RingMismatch("identity map requires equal rings")
        elif rule == self.MOD_P:
            if source != Z or target.kind != Ring.MODP:
                raise RingMismatch("reduce-mod-p maps Z to Z/p")
        elif rule == self.Z_TO_Q:
            if source != Z or target != Q:
                raise RingMismatch("include-Z-in-Q maps Z to Q")
        elif rule == self.EVAL_T:
            if source != LAURENT_Z:
                raise RingMismatch("evaluate-T-at is defined on Z[T^{+-1}]")
            if unit is None or unit.ring != target or not unit.is_unit:
                raise ScxError("evaluate-T-at requires a unit of the target ring")
        elif rule == self.LAURENT_TO_FRAC:
            if source != LAURENT_Z or target != FRAC_LAURENT_Q:
                raise RingMismatch("inclusion maps Z[T^{+-1}] into Q(T)")
        else:
            raise ScxError(f"unknown ring map rule {rule!r}")

    def __call__(self, x):
        if x.ring != self.source:
            raise RingMismatch("element not in the source ring")
        if self.rule == self.IDENTITY:
            return x
        if self.rule == self.MOD_P:
            return self.target.from_int(x.val)
        if self.rule == self.Z_TO_Q:
            return self.target.from_int(x.val)
        if self.rule == self.LAURENT_TO_FRAC:
            return RingElement(self.target, ratfun_normalize(x.val, LAU_ONE))
        total = self.target.zero()
        uinv = self.unit.inverse()
        for e, c in x.val:
            power = self.target.one()
            base = self.unit if e >= 0 else uinv
            for _ in range(abs(e)):
                power = power * base
            total = total + power * self.target.from_int(c)
        return total


def identity_map(ring):
    return RingMap(RingMap.IDENTITY, ring, ring)


def eval_t_at_one():
    """The specialization T -> 1 from Z[T^{+-1}] to Z."""
    return RingMap(RingMap.EVAL_T, LAURENT_Z, Z, unit=Z.one())
