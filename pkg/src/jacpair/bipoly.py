"""Sparse bivariate polynomials over the rationals.

A :class:`BiPoly` is an immutable map ``(i, j) -> Fraction`` standing for
``sum c * x**i * y**j``.  Zero coefficients are never stored, so two
polynomials are equal exactly when their term maps are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .errors import ZeroPolynomial

Exp = Tuple[int, int]

__all__ = [
    "BiPoly",
    "DegreeData",
    "X",
    "Y",
    "compose",
    "degree_data",
    "derivative",
    "jacobian",
    "swap_xy",
]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def _graded_lex_key(exp: Exp):
    i, j = exp
    return (-(i + j), -i)


class BiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | Iterable[Tuple[Exp, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Exp, Fraction] = {}
        for (i, j), c in items:
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            c = clean.get((i, j), 0) + _as_fraction(c)
            if c:
                clean[(i, j)] = c
            else:
                clean.pop((i, j), None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, clean: Dict[Exp, Fraction]) -> "BiPoly":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj._terms = clean
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "BiPoly":
        return cls._wrap({})

    @classmethod
    def const(cls, c) -> "BiPoly":
        c = _as_fraction(c)
        return cls._wrap({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c, i: int, j: int) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls, power: int = 1) -> "BiPoly":
        return cls._wrap({(power, 0): Fraction(1)})

    @classmethod
    def y(cls, power: int = 1) -> "BiPoly":
        return cls._wrap({(0, power): Fraction(1)})

    @classmethod
    def coerce(cls, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return cls.const(other)

    # -- basic access -------------------------------------------------
    @property
    def terms(self) -> Mapping[Exp, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> list[Tuple[Exp, Fraction]]:
        """Terms in graded-lex order: total degree desc, then x-exponent desc."""
        return sorted(self._terms.items(), key=lambda kv: _graded_lex_key(kv[0]))

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Exp]:
        return iter(sorted(self._terms, key=_graded_lex_key))

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self._terms.get((0, 0), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == BiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"

    def __str__(self) -> str:
        from .parser import format_poly

        return format_poly(self)

    # -- ring operations ----------------------------------------------
    def __neg__(self) -> "BiPoly":
        return BiPoly._wrap({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "BiPoly":
        return self

    def __add__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            other = BiPoly.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def scalar_mul(self, c) -> "BiPoly":
        c = _as_fraction(c)
        if not c:
            return BiPoly.zero()
        return BiPoly._wrap({e: v * c for e, v in self._terms.items()})

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            return self.scalar_mul(other)
        return BiPoly._wrap(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a natural number, got {k!r}")
        result = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- degrees ------------------------------------------------------
    def _require_nonzero(self):
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial is undefined")

    @property
    def deg_x(self) -> int:
        self._require_nonzero()
        return max(i for i, _ in self._terms)

    @property
    def deg_y(self) -> int:
        self._require_nonzero()
        return max(j for _, j in self._terms)

    @property
    def total_degree(self) -> int:
        self._require_nonzero()
        return max(i + j for i, j in self._terms)

    def coeffs_in_y(self) -> Dict[int, "BiPoly"]:
        """Split ``p = sum a_j(x) y**j``; returns ``{j: a_j}`` for nonzero a_j."""
        parts: Dict[int, Dict[Exp, Fraction]] = {}
        for (i, j), c in self._terms.items():
            parts.setdefault(j, {})[(i, 0)] = c
        return {j: BiPoly._wrap(t) for j, t in parts.items()}

    def coeffs_in_x(self) -> Dict[int, "BiPoly"]:
        """Split ``p = sum b_i(y) x**i``; returns ``{i: b_i}`` for nonzero b_i."""
        parts: Dict[int, Dict[Exp, Fraction]] = {}
        for (i, j), c in self._terms.items():
            parts.setdefault(i, {})[(0, j)] = c
        return {i: BiPoly._wrap(t) for i, t in parts.items()}

    def lead_coeff_in_y(self) -> "BiPoly":
        n = self.deg_y
        return BiPoly._wrap({(i, 0): c for (i, j), c in self._terms.items() if j == n})

    def lead_coeff_in_x(self) -> "BiPoly":
        m = self.deg_x
        return BiPoly._wrap({(0, j): c for (i, j), c in self._terms.items() if i == m})

    def leading_form(self) -> "BiPoly":
        """The (1,1)-leading form: every term of maximal total degree."""
        d = self.total_degree
        return BiPoly._wrap({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def leading_term(self) -> Tuple[Exp, Fraction]:
        """First term in graded-lex order."""
        self._require_nonzero()
        e = min(self._terms, key=_graded_lex_key)
        return e, self._terms[e]

    def is_univariate_in_x(self) -> bool:
        return all(j == 0 for _, j in self._terms)

    def is_univariate_in_y(self) -> bool:
        return all(i == 0 for i, _ in self._terms)

    # -- calculus and substitution ------------------------------------
    def diff(self, var: str) -> "BiPoly":
        if var == "x":
            return BiPoly._wrap({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})
        if var == "y":
            return BiPoly._wrap({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})
        raise ValueError(f"unknown variable {var!r}")

    def swap_xy(self) -> "BiPoly":
        return BiPoly._wrap({(j, i): c for (i, j), c in self._terms.items()})

    def evaluate(self, x0, y0) -> Fraction:
        x0, y0 = _as_fraction(x0), _as_fraction(y0)
        return sum((c * x0**i * y0**j for (i, j), c in self._terms.items()), Fraction(0))

    def compose(self, sx: "BiPoly", sy: "BiPoly") -> "BiPoly":
        """Substitute ``x -> sx`` and ``y -> sy``."""
        if not self._terms:
            return self
        sx, sy = BiPoly.coerce(sx), BiPoly.coerce(sy)
        xpow = _PowerCache(sx)
        # Horner in sy over the y-coefficients, highest power first.
        rows = sorted(self.coeffs_in_y().items(), reverse=True)
        ypow = _PowerCache(sy)
        result = BiPoly.zero()
        prev = None
        for j, a_j in rows:
            inner = BiPoly.zero()
            for (i, _), c in a_j._terms.items():
                inner = inner + xpow(i).scalar_mul(c)
            if prev is not None:
                result = result * ypow(prev - j)
            result = result + inner
            prev = j
        if prev:
            result = result * ypow(prev)
        return result


class _PowerCache:
    __slots__ = ("base", "cache")

    def __init__(self, base: BiPoly):
        self.base = base
        self.cache = {0: BiPoly.const(1), 1: base}

    def __call__(self, k: int) -> BiPoly:
        hit = self.cache.get(k)
        if hit is None:
            if len(self.base) == 1:
                (e, c), = self.base._terms.items()
                hit = BiPoly._wrap({(e[0] * k, e[1] * k): c**k})
            else:
                half = self(k // 2)
                hit = half * half
                if k & 1:
                    hit = hit * self.base
            self.cache[k] = hit
        return hit


def _mul_terms(a: Dict[Exp, Fraction], b: Dict[Exp, Fraction]) -> Dict[Exp, Fraction]:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    # Clear denominators so the quadratic loop runs on plain ints.
    da = lcm(*(c.denominator for c in a.values()))
    db = lcm(*(c.denominator for c in b.values()))
    ia = [(i, j, c.numerator * (da // c.denominator)) for (i, j), c in a.items()]
    ib = [(i, j, c.numerator * (db // c.denominator)) for (i, j), c in b.items()]
    acc = _kronecker_mul(ia, ib)
    if acc is None:
        acc = _schoolbook_mul(ia, ib)
    den = da * db
    if den == 1:
        return {k: Fraction(v) for k, v in acc.items() if v}
    out = {}
    for k, v in acc.items():
        if v:
            g = gcd(v, den)
            out[k] = Fraction(v // g, den // g)
    return out


def _schoolbook_mul(ia, ib) -> Dict[Exp, int]:
    acc: Dict[Exp, int] = {}
    get = acc.get
    for i1, j1, c1 in ia:
        for i2, j2, c2 in ib:
            k = (i1 + i2, j1 + j2)
            acc[k] = get(k, 0) + c1 * c2
    return acc


KRONECKER_MIN_WORK = 2048
# Per-term cost of the plain loop (dict update, tuple build) in 30-bit limb
# multiplications; calibrated on binomial powers and random tame maps.
SCHOOLBOOK_OVERHEAD = 40


def _limbs(c: int) -> int:
    return c.bit_length() // 30 + 1


def _kronecker_mul(ia, ib):
    """Integer-coefficient product via packing into one big integer per factor.

    Slot ``i + j*W`` of a fixed byte width holds the coefficient of x^i y^j;
    the width leaves a sign bit above the largest possible product
    coefficient, so digits can be read back unambiguously.  Returns None when
    a rough cost model favours the plain loop: packing pays off for dense
    inputs with small coefficients and loses badly when most slots are zero
    padding around large coefficients.
    """
    work = len(ia) * len(ib)
    if work < KRONECKER_MIN_WORK:
        return None
    Ia = max(t[0] for t in ia)
    Ib = max(t[0] for t in ib)
    Ja = max(t[1] for t in ia)
    Jb = max(t[1] for t in ib)
    W = Ia + Ib + 1
    slots = (Ja + Jb) * W + W
    if slots > 4 * work:
        return None
    ca = max(abs(t[2]) for t in ia)
    cb = max(abs(t[2]) for t in ib)
    bound = ca * cb * min(len(ia), len(ib))
    nb = bound.bit_length() // 8 + 1
    # Karatsuba on the packed operands versus one small product per term pair
    la = (Ja * W + Ia + 1) * nb * 8 // 30 + 1
    lb = (Jb * W + Ib + 1) * nb * 8 // 30 + 1
    la, lb = max(la, lb), min(la, lb)
    packed_cost = (la / lb) * lb ** 1.585
    plain_cost = work * (SCHOOLBOOK_OVERHEAD + _limbs(ca) * _limbs(cb))
    if packed_cost > plain_cost:
        return None
    half = 1 << (8 * nb - 1)

    def pack(terms, nslots):
        pos = bytearray(nslots * nb)
        neg = bytearray(nslots * nb)
        for i, j, c in terms:
            k = (i + j * W) * nb
            if c > 0:
                pos[k:k + nb] = c.to_bytes(nb, "little")
            else:
                neg[k:k + nb] = (-c).to_bytes(nb, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    prod = pack(ia, Ja * W + Ia + 1) * pack(ib, Jb * W + Ib + 1)
    zero = bytes(nb - 1) + b"\x80"
    offset = int.from_bytes(zero * slots, "little")
    raw = (prod + offset).to_bytes(slots * nb, "little")
    acc: Dict[Exp, int] = {}
    for k in range(slots):
        chunk = raw[k * nb:(k + 1) * nb]
        if chunk != zero:
            j, i = divmod(k, W)
            acc[(i, j)] = int.from_bytes(chunk, "little") - half
    return acc


X = BiPoly.x()
Y = BiPoly.y()


@dataclass(frozen=True)
class DegreeData:
    deg_x: int
    deg_y: int
    total_deg: int
    lead_coeff_in_y: BiPoly
    lead_coeff_in_x: BiPoly
    leading_form_11: BiPoly


def degree_data(p: BiPoly) -> DegreeData:
    """Degrees of ``p`` together with a_n, b_m and the (1,1)-leading form.

    Raises :class:`ZeroPolynomial` for ``p == 0``.
    """
    return DegreeData(
        deg_x=p.deg_x,
        deg_y=p.deg_y,
        total_deg=p.total_degree,
        lead_coeff_in_y=p.lead_coeff_in_y(),
        lead_coeff_in_x=p.lead_coeff_in_x(),
        leading_form_11=p.leading_form(),
    )


def derivative(p: BiPoly, var: str) -> BiPoly:
    return p.diff(var)


def jacobian(p: BiPoly, q: BiPoly) -> BiPoly:
    """``p_x q_y - p_y q_x``."""
    return p.diff("x") * q.diff("y") - p.diff("y") * q.diff("x")


def compose(p: BiPoly, sx, sy) -> BiPoly:
    return p.compose(BiPoly.coerce(sx), BiPoly.coerce(sy))


def swap_xy(p: BiPoly) -> BiPoly:
    return p.swap_xy()
