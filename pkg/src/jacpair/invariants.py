"""Degree invariants of a pair (p, q) in both variable orientations.

Orientation ``ac`` reads p and q as polynomials in y over k[x] and yields
A = gcd(n, u), C = gcd(r, v).  Orientation ``bd`` does the same after
exchanging x and y, which yields B and D of the original pair.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .bipoly import BiPoly
from .errors import ZeroPolynomial

__all__ = ["DegreeInvariants", "OrientationProfile", "compute_invariants", "orientation_profile"]


def _split(n: int, u: int):
    """(gcd, n/gcd, u/gcd) with gcd(t, 0) = t; both zero gives (0, 0, 0)."""
    g = gcd(n, u)
    if g == 0:
        return 0, 0, 0
    return g, n // g, u // g


@dataclass(frozen=True)
class OrientationProfile:
    n: int
    r: int
    u: int
    v: int
    A: int
    C: int
    n_t: int
    u_t: int
    r_t: int
    v_t: int
    M1: int
    M2: int
    M: int
    cond_i: bool
    cond_ii: bool

    def as_dict(self) -> dict:
        return asdict(self)


def orientation_profile(p: BiPoly, q: BiPoly) -> OrientationProfile:
    """Profile of (p, q) read as polynomials in y with coefficients in k[x]."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("invariants need p != 0 and q != 0")
    n, r = p.deg_y, q.deg_y
    u = p.lead_coeff_in_y().deg_x
    v = q.lead_coeff_in_y().deg_x
    A, n_t, u_t = _split(n, u)
    C, r_t, v_t = _split(r, v)
    # a_j = 0 are skipped: coeffs_in_y only returns nonzero coefficients
    M1 = max(a.deg_x for a in p.coeffs_in_y().values())
    M2 = max(c.deg_x for c in q.coeffs_in_y().values())
    return OrientationProfile(
        n=n, r=r, u=u, v=v, A=A, C=C,
        n_t=n_t, u_t=u_t, r_t=r_t, v_t=v_t,
        M1=M1, M2=M2, M=max(M1, M2),
        cond_i=u * v != 0,
        cond_ii=(u_t != v_t) or (n_t != r_t),
    )


@dataclass(frozen=True)
class DegreeInvariants:
    ac: OrientationProfile
    bd: OrientationProfile
    total_p: int
    total_q: int
    gcd_total: int

    # names used for the original pair
    @property
    def n(self): return self.ac.n
    @property
    def r(self): return self.ac.r
    @property
    def m(self): return self.bd.n
    @property
    def s(self): return self.bd.r
    @property
    def u(self): return self.ac.u
    @property
    def v(self): return self.ac.v
    @property
    def A(self): return self.ac.A
    @property
    def C(self): return self.ac.C
    @property
    def B(self): return self.bd.A
    @property
    def D(self): return self.bd.C

    def profile(self, orientation: str) -> OrientationProfile:
        if orientation == "ac":
            return self.ac
        if orientation == "bd":
            return self.bd
        raise ValueError(f"orientation must be 'ac' or 'bd', got {orientation!r}")

    def summary(self) -> dict:
        return {k: getattr(self, k) for k in ("n", "m", "r", "s", "u", "v", "A", "B", "C", "D")}

    def as_dict(self) -> dict:
        return {
            **self.summary(),
            "deg_p": self.total_p,
            "deg_q": self.total_q,
            "gcd_total": self.gcd_total,
            "ac": self.ac.as_dict(),
            "bd": self.bd.as_dict(),
        }


def compute_invariants(p: BiPoly, q: BiPoly) -> DegreeInvariants:
    ac = orientation_profile(p, q)
    bd = orientation_profile(p.swap_xy(), q.swap_xy())
    dp, dq = p.total_degree, q.total_degree
    return DegreeInvariants(ac=ac, bd=bd, total_p=dp, total_q=dq, gcd_total=gcd(dp, dq))
