"""Inversion of Jacobian pairs by elementary leading-form reduction.

A pair (p, q) whose higher-degree member has leading form equal to
``lam * l(lower)**t`` is reduced by ``hi <- hi - lam * lo**t``.  Repeating
this until both members are affine yields a factorization of the map into
shears and one affine map, from which the inverse is read off.

Maps are composed geometrically: ``compose_maps(F, G)`` is ``F o G``, the
point map ``(x, y) -> F(G(x, y))``.  With this convention the inverse of
``(x + (x-y)**15, y + (x-y)**15)`` is ``(x - (x-y)**15, y - (x-y)**15)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .bipoly import BiPoly, jacobian
from .errors import NotJacobianPair, NotReducible, NotTriangular, StepLimitExceeded

__all__ = [
    "Decomposition",
    "ElementaryStep",
    "PolyMap",
    "StepKind",
    "compose_maps",
    "invert_tame",
    "invert_triangular",
    "verify_factored_inverse",
    "verify_inverse",
]

_X, _Y = BiPoly.x(), BiPoly.y()


@dataclass(frozen=True)
class PolyMap:
    """Images of x and y."""

    px: BiPoly
    py: BiPoly

    @classmethod
    def identity(cls) -> "PolyMap":
        return cls(_X, _Y)

    def is_identity(self) -> bool:
        return self.px == _X and self.py == _Y

    def swap_outputs(self) -> "PolyMap":
        return PolyMap(self.py, self.px)

    def conjugate_swap(self) -> "PolyMap":
        """``s o F o s`` with ``s(x, y) = (y, x)``."""
        return PolyMap(self.py.swap_xy(), self.px.swap_xy())

    def __iter__(self):
        return iter((self.px, self.py))


def compose_maps(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """``outer o inner`` by direct substitution."""
    return PolyMap(
        outer.px.compose(inner.px, inner.py),
        outer.py.compose(inner.px, inner.py),
    )


def verify_inverse(f: PolyMap, g: PolyMap, f_steps: Optional["Decomposition"] = None) -> bool:
    """True iff ``f o g`` and ``g o f`` are both the identity, computed exactly.

    With ``f_steps`` the composites are formed through that factorization of
    ``f`` (see :func:`verify_factored_inverse`); without it by direct
    substitution, whose cost grows like ``(deg f * deg g)**2``.
    """
    if f_steps is not None:
        return verify_factored_inverse(f, f_steps, g)
    return compose_maps(f, g).is_identity() and compose_maps(g, f).is_identity()


class StepKind(enum.Enum):
    AFFINE = "affine"
    SHEAR_X = "shear_x"  # (x + h(y), y)
    SHEAR_Y = "shear_y"  # (x, y + h(x))


@dataclass(frozen=True)
class ElementaryStep:
    kind: StepKind
    matrix: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]] = (
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    )
    shift: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    h: BiPoly = field(default_factory=BiPoly.zero)

    def __post_init__(self):
        if self.kind is StepKind.AFFINE:
            (a, b), (c, d) = self.matrix
            if a * d - b * c == 0:
                raise ValueError("affine step with singular matrix")
        elif self.kind is StepKind.SHEAR_Y and not self.h.is_univariate_in_x():
            raise ValueError("SHEAR_Y needs h in k[x]")
        elif self.kind is StepKind.SHEAR_X and not self.h.is_univariate_in_y():
            raise ValueError("SHEAR_X needs h in k[y]")

    @classmethod
    def affine(cls, a, b, c, d, e=0, f=0) -> "ElementaryStep":
        F = Fraction
        return cls(StepKind.AFFINE, ((F(a), F(b)), (F(c), F(d))), (F(e), F(f)))

    @classmethod
    def shear_x(cls, h: BiPoly) -> "ElementaryStep":
        return cls(StepKind.SHEAR_X, h=h)

    @classmethod
    def shear_y(cls, h: BiPoly) -> "ElementaryStep":
        return cls(StepKind.SHEAR_Y, h=h)

    def as_map(self) -> PolyMap:
        return self.apply(PolyMap.identity())

    def apply(self, inner: PolyMap) -> PolyMap:
        """``self o inner``; cheap because the outer map is elementary."""
        u, w = inner.px, inner.py
        if self.kind is StepKind.AFFINE:
            (a, b), (c, d) = self.matrix
            e, f = self.shift
            return PolyMap(u * a + w * b + e, u * c + w * d + f)
        if self.kind is StepKind.SHEAR_X:
            return PolyMap(u + self.h.compose(_X, w), w)
        return PolyMap(u, w + self.h.compose(u, _Y))

    def inverse(self) -> "ElementaryStep":
        if self.kind is StepKind.AFFINE:
            (a, b), (c, d) = self.matrix
            e, f = self.shift
            det = a * d - b * c
            ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
            return ElementaryStep(
                StepKind.AFFINE,
                ((ia, ib), (ic, id_)),
                (-(ia * e + ib * f), -(ic * e + id_ * f)),
            )
        return ElementaryStep(self.kind, h=-self.h)


@dataclass(frozen=True)
class Decomposition:
    """Steps applied in list order: the map is ``steps[-1] o ... o steps[0]``."""

    steps: Tuple[ElementaryStep, ...] = ()

    def apply(self, inner: PolyMap) -> PolyMap:
        """``self o inner``, one elementary step at a time."""
        out = inner
        for s in self.steps:
            out = s.apply(out)
        return out

    def to_map(self) -> PolyMap:
        return self.apply(PolyMap.identity())

    def inverse(self) -> "Decomposition":
        return Decomposition(tuple(s.inverse() for s in reversed(self.steps)))

    def __len__(self):
        return len(self.steps)


def verify_factored_inverse(f: PolyMap, f_steps: Decomposition, g: PolyMap) -> bool:
    """Exact check that ``g`` inverts ``f`` using a factorization of ``f``.

    Both composites are computed exactly, routing every substitution through
    an elementary map, so high-degree pairs stay cheap.  The factorization
    itself is checked to reproduce ``f`` and its inverse to reproduce ``g``.
    """
    g_steps = f_steps.inverse()
    if f_steps.to_map() != f or g_steps.to_map() != g:
        return False
    return f_steps.apply(g).is_identity() and g_steps.apply(f).is_identity()


# -- triangular maps ---------------------------------------------------------

def _linear_in_x(p: BiPoly):
    """(lam, mu) if p == lam*x + mu with lam != 0, else None."""
    if not p.is_univariate_in_x() or p.is_zero or p.deg_x != 1:
        return None
    return p.coeff(1, 0), p.coeff(0, 0)


def _invert_standard(p: BiPoly, q: BiPoly) -> Tuple[PolyMap, Decomposition]:
    """Inverse of ``(lam*x + mu, nu*y + H(x))``."""
    lm = _linear_in_x(p)
    if lm is None:
        raise NotTriangular("first component is not lam*x + mu")
    lam, mu = lm
    H = BiPoly({e: c for e, c in q.terms.items() if e[1] == 0})
    rest = q - H
    if set(rest.terms) != {(0, 1)}:
        raise NotTriangular("second component is not nu*y + H(x)")
    nu = rest.coeff(0, 1)
    # f = shear_y(H) o diag(lam, nu) + (mu, 0)
    steps = Decomposition((
        ElementaryStep.affine(lam, 0, 0, nu, mu, 0),
        ElementaryStep.shear_y(H.compose((_X - mu) * (1 / lam), _Y)),
    ))
    xs = (_X - mu) * (1 / lam)
    inv = PolyMap(xs, (_Y - H.compose(xs, _Y)) * (1 / nu))
    return inv, steps


def _triangular(p: BiPoly, q: BiPoly) -> Tuple[PolyMap, Decomposition]:
    if p.is_constant or q.is_constant:
        raise NotTriangular("constant component")
    if p.is_univariate_in_x() and not p.is_constant:
        return _invert_standard(p, q)
    if q.is_univariate_in_x() and not q.is_constant:
        # (p, q) = swap o (q, p)
        inv, steps = _invert_standard(q, p)
        swap = ElementaryStep.affine(0, 1, 1, 0)
        return PolyMap(inv.px.swap_xy(), inv.py.swap_xy()), Decomposition(steps.steps + (swap,))
    if p.is_univariate_in_y() or q.is_univariate_in_y():
        # conjugate by the coordinate swap s: F = s o F' o s
        F2 = PolyMap(p, q).conjugate_swap()
        inv, steps = _triangular(F2.px, F2.py)
        swap = ElementaryStep.affine(0, 1, 1, 0)
        return inv.conjugate_swap(), Decomposition((swap,) + steps.steps + (swap,))
    raise NotTriangular("no component is a polynomial in one variable")


def invert_triangular(p: BiPoly, q: BiPoly) -> PolyMap:
    """Inverse of a triangular map ``(lam*x + mu, nu*y + H(x))`` or a variant
    obtained by exchanging components and/or variables."""
    return _triangular(p, q)[0]


def triangular_decomposition(p: BiPoly, q: BiPoly) -> Tuple[PolyMap, Decomposition]:
    return _triangular(p, q)


# -- tame inversion ----------------------------------------------------------

def _reduction(hi: BiPoly, lo: BiPoly) -> Optional[Tuple[Fraction, int]]:
    """(lam, t) with l(hi) == lam * l(lo)**t, or None."""
    dh, dl = hi.total_degree, lo.total_degree
    if dl == 0 or dh % dl:
        return None
    t = dh // dl
    target = hi.leading_form()
    power = lo.leading_form() ** t
    (e_t, c_t), (e_p, c_p) = target.leading_term(), power.leading_term()
    if e_t != e_p:
        return None
    lam = c_t / c_p
    if target != power.scalar_mul(lam):
        return None
    return lam, t


def _affine_step(p: BiPoly, q: BiPoly) -> ElementaryStep:
    return ElementaryStep.affine(
        p.coeff(1, 0), p.coeff(0, 1), q.coeff(1, 0), q.coeff(0, 1),
        p.coeff(0, 0), q.coeff(0, 0),
    )


def invert_tame(p: BiPoly, q: BiPoly, max_steps: Optional[int] = None
                ) -> Tuple[PolyMap, Decomposition]:
    """Inverse of ``(p, q)`` and a factorization of ``(p, q)`` into elementary steps.

    Raises NotJacobianPair if Jac(p, q) is not a nonzero constant,
    NotReducible if some intermediate pair admits no leading-form reduction,
    and StepLimitExceeded after ``max_steps`` reductions (default
    ``deg p + deg q + 2``).
    """
    jac = jacobian(p, q)
    if jac.is_zero or not jac.is_constant:
        raise NotJacobianPair(jac)
    if max_steps is None:
        max_steps = p.total_degree + q.total_degree + 2
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")

    reductions: List[ElementaryStep] = []
    while max(p.total_degree, q.total_degree) > 1:
        if len(reductions) >= max_steps:
            raise StepLimitExceeded(f"no affine pair reached after {max_steps} reductions")
        dp, dq = p.total_degree, q.total_degree
        order = [(1, 0), (0, 1)] if dq >= dp else [(0, 1), (1, 0)]
        for hi_idx, lo_idx in order:
            pair = (p, q)
            found = _reduction(pair[hi_idx], pair[lo_idx])
            if found is None:
                continue
            lam, t = found
            if hi_idx == 0:
                step = ElementaryStep.shear_x(BiPoly.y(t).scalar_mul(-lam))
            else:
                step = ElementaryStep.shear_y(BiPoly.x(t).scalar_mul(-lam))
            p, q = step.apply(PolyMap(p, q))
            reductions.append(step)
            break
        else:
            raise NotReducible(
                f"no leading-form reduction for degrees ({dp}, {dq})"
            )

    # original = R_1^-1 o ... o R_k^-1 o base; an identity base is dropped
    base = () if PolyMap(p, q).is_identity() else (_affine_step(p, q),)
    decomp = Decomposition(base + tuple(r.inverse() for r in reversed(reductions)))
    inverse = Decomposition(tuple(reductions) + tuple(b.inverse() for b in base)).to_map()
    return inverse, decomp
