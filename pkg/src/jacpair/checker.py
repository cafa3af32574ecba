"""Decision pipeline for Jacobian pairs.

``decide`` runs, cheapest first: unit-Jacobian check, triangular maps,
total-degree criteria, the (A, C) / (B, D) criteria with an explicit shear
witness, and finally the tame inverter.  Every positive verdict carries a
certificate that :func:`recheck_certificate` re-validates from scratch.

The (A, C) criteria all work the same way: pick L > M, compose with the
shear ``g(x, y) = (x, y + x**L)`` and show the total degrees of
``(p(x, y + x**L), q(x, y + x**L))`` fall under a total-degree criterion.
The witness records L and the composed degrees, and the degree identities
are checked against the actual composition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .bipoly import BiPoly, jacobian
from .errors import (
    InternalInconsistency,
    NotJacobianPair,
    NoWitness,
    NotReducible,
    NotTriangular,
    PreconditionViolated,
    SearchExhausted,
    StepLimitExceeded,
    WitnessCheckFailed,
)
from .invariants import DegreeInvariants, OrientationProfile, compute_invariants, orientation_profile
from .inverter import (
    Decomposition,
    PolyMap,
    invert_tame,
    triangular_decomposition,
    verify_factored_inverse,
)
from .numtheory import (
    DEFAULT_L_MAX,
    DegreeSet,
    LemmaWitness,
    classify,
    find_L,
    find_prime_in_progression,
    is_prime,
    lemma_obstructed,
    next_prime_above,
)

_X, _Y = BiPoly.x(), BiPoly.y()


class TheoremTag(enum.Enum):
    PROP_TRIANGULAR = "PROP_TRIANGULAR"
    THM1_TOTAL = "THM1_TOTAL"
    THM2_TOTAL = "THM2_TOTAL"
    THM_IMPROVED = "THM_IMPROVED"
    THM_I_YES_II_NO = "THM_I_YES_II_NO"
    THM_MY = "THM_MY"
    INVERTER = "INVERTER"


def _in_1_4_p(t: int) -> bool:
    return classify(t, DegreeSet.ONE_4_P)


# -- total degree criteria ---------------------------------------------------

def total_degree_theorem(deg_p: int, deg_q: int) -> Optional[TheoremTag]:
    """Which total-degree criterion covers a pair with these degrees, if any."""
    if classify(gcd(deg_p, deg_q), DegreeSet.ONE_8_P_2P):
        return TheoremTag.THM1_TOTAL
    for d in (deg_p, deg_q):
        if (classify(d, DegreeSet.P_SET) or classify(d, DegreeSet.P2_SET)
                or classify(d, DegreeSet.FOUR_P)):
            return TheoremTag.THM2_TOTAL
    return None


def check_total_degree(p: BiPoly, q: BiPoly) -> Optional[TheoremTag]:
    return total_degree_theorem(p.total_degree, q.total_degree)


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class CompositionWitness:
    orientation: str  # "ac" or "bd"
    L: int
    lemma: Optional[LemmaWitness]
    deg_gfx: int
    deg_gfy: int
    gcd_composed: int
    case_label: str
    w: Optional[int] = None
    # total-degree criterion that covers the composed pair
    composed_theorem: Optional[TheoremTag] = None
    gfx: Optional[BiPoly] = field(default=None, compare=False, repr=False)
    gfy: Optional[BiPoly] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Certificate:
    theorem: TheoremTag
    witness: Optional[CompositionWitness] = None
    inverse: Optional[PolyMap] = None
    decomposition: Optional[Decomposition] = field(default=None, compare=False)
    orientation: Optional[str] = None


class Outcome(enum.Enum):
    AUTOMORPHISM = "automorphism"
    NOT_JACOBIAN_PAIR = "not_jacobian_pair"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    jacobian: BiPoly
    certificate: Optional[Certificate] = None
    report: Optional[DegreeInvariants] = None
    reduction_note: str = ""

    @property
    def is_automorphism(self) -> bool:
        return self.outcome is Outcome.AUTOMORPHISM


# -- pipeline stages ---------------------------------------------------------

def check_unit_jacobian(p: BiPoly, q: BiPoly) -> Fraction:
    """The Jacobian constant; raises NotJacobianPair if it is zero or not constant."""
    jac = jacobian(p, q)
    if jac.is_zero or not jac.is_constant:
        raise NotJacobianPair(jac)
    return jac.constant_value()


def check_proposition(p: BiPoly, q: BiPoly) -> Optional[Certificate]:
    """Triangular certificate when one of deg_y p, deg_y q, deg_x p, deg_x q is 0.

    Assumes a unit Jacobian has already been verified.
    """
    if 0 not in (p.deg_y, q.deg_y, p.deg_x, q.deg_x):
        return None
    try:
        inverse, steps = triangular_decomposition(p, q)
    except NotTriangular as exc:
        raise InternalInconsistency(f"unit-Jacobian pair with a zero degree is not triangular: {exc}")
    return Certificate(TheoremTag.PROP_TRIANGULAR, inverse=inverse, decomposition=steps)


def shear_compose(p: BiPoly, L: int) -> BiPoly:
    """``p(x, y + x**L)``."""
    return p.compose(_X, _Y + BiPoly.x(L))


def _pure_x_power(form: BiPoly) -> bool:
    return len(form) == 1 and next(iter(form))[1] == 0


def _orient(p: BiPoly, q: BiPoly, orientation: str) -> Tuple[BiPoly, BiPoly]:
    if orientation == "ac":
        return p, q
    if orientation == "bd":
        return p.swap_xy(), q.swap_xy()
    raise ValueError(f"orientation must be 'ac' or 'bd', got {orientation!r}")


def _choose_L(prof: OrientationProfile, theorem: TheoremTag, L_max: int):
    """(L, lemma witness or None, w or None, case label) following the proofs."""
    A, C, M = prof.A, prof.C, prof.M
    if M >= L_max:
        raise SearchExhausted(L_max, f"L > M = {M}")
    if theorem is TheoremTag.THM_MY and prof.cond_i:
        # first case of the proof: defer to the two sharper results
        theorem = TheoremTag.THM_IMPROVED if prof.cond_ii else TheoremTag.THM_I_YES_II_NO

    if theorem is TheoremTag.THM_IMPROVED:
        if not (prof.cond_i and prof.cond_ii):
            raise PreconditionViolated("THM_IMPROVED needs uv != 0 and (u~,n~) != (v~,r~)")
        if lemma_obstructed(prof.u_t, prof.n_t, prof.v_t, prof.r_t, A * C):
            L = _improved_L_without_lemma(prof, L_max)
            return L, None, None, "improved: eps=AC blocked mod 2, L with gcd(A a', C c') = gcd(A, C)"
        L_min = M
        while True:
            lw = find_L(prof.u_t, prof.n_t, prof.v_t, prof.r_t, A * C, L_min, L_max)
            # equal progressions at this L would leave a common factor w
            if lw.valA != lw.valC:
                return lw.L, lw, None, "improved: L from coprime-progression lemma"
            L_min = lw.L
            if L_min >= L_max:
                raise SearchExhausted(L_max, "lemma witness")

    if theorem is TheoremTag.THM_I_YES_II_NO:
        if not prof.cond_i or prof.cond_ii:
            raise PreconditionViolated("THM_I_YES_II_NO needs uv != 0, u~ = v~ and n~ = r~")
        lw = find_L(prof.u_t, prof.n_t, prof.u_t, prof.n_t, 1, M, L_max)
        return lw.L, lw, lw.valA, "i-yes-ii-no: w = u~ + L n~ prime"

    if theorem is not TheoremTag.THM_MY:
        raise ValueError(f"{theorem} has no shear witness")

    def prime_L():
        L = next_prime_above(M)
        if L > L_max:
            raise SearchExhausted(L_max, "prime L")
        return L

    u, v = prof.u, prof.v
    A_ok, C_ok = _in_1_4_p(A), _in_1_4_p(C)
    if not (A_ok or C_ok):
        raise PreconditionViolated("THM_MY needs A or C in {1,4} u P")
    if u == 0 and v == 0:
        return prime_L(), None, None, "u=v=0: L prime, deg = L*A or L*C"
    if u == 0:
        if A_ok:
            return prime_L(), None, None, "u=0: L prime, deg gfx = L*A"
        L = find_prime_in_progression(prof.v_t, prof.r_t, M, L_max)
        return L, None, prof.v_t + L * prof.r_t, "u=0: w = v~ + L r~ prime, deg gfy = C*w"
    # v == 0, u != 0
    if C_ok:
        return prime_L(), None, None, "v=0: L prime, deg gfy = L*C"
    L = find_prime_in_progression(prof.u_t, prof.n_t, M, L_max)
    return L, None, prof.u_t + L * prof.n_t, "v=0: w = u~ + L n~ prime, deg gfx = A*w"


def _improved_L_without_lemma(prof: OrientationProfile, L_max: int) -> int:
    """Smallest L > M with max(a', c') prime and gcd(A*a', C*c') = gcd(A, C).

    Here a' = u~ + L*n~ and c' = v~ + L*r~.  This is all the degree argument
    needs; coprimality of both values with A*C is stronger and can fail for
    every L.  Parity alone may still rule out all large L, which is detected
    so the search ends at once instead of running to ``L_max``.
    """
    A, C, M = prof.A, prof.C, prof.M
    ut, nt, vt, rt = prof.u_t, prof.n_t, prof.v_t, prof.r_t
    g = gcd(A, C)
    Ap, Cp = A // g, C // g

    # past this L the larger progression no longer changes
    if nt != rt:
        settled = M + 1 + abs(ut - vt) // abs(nt - rt) + 1
    else:
        settled = M + 1
    a_wins = (nt, ut) > (rt, vt)

    def parity_ok(L):
        a, c = (ut + L * nt) % 2, (vt + L * rt) % 2
        top = a if a_wins else c
        return top == 1 and (Ap % 2 or c == 1) and (Cp % 2 or a == 1)

    blocked = not (parity_ok(settled) or parity_ok(settled + 1))
    end = min(L_max, settled) if blocked else L_max
    for L in range(M + 1, end + 1):
        a, c = ut + L * nt, vt + L * rt
        if a != c and gcd(A * a, C * c) == g and is_prime(max(a, c)):
            return L
    if blocked:
        raise NoWitness(
            f"no L > {M} gives gcd(A*a', C*c') = gcd(A, C) = {g} with a prime maximum: "
            f"parity forbids it once L >= {settled}"
        )
    raise SearchExhausted(L_max, "witness L")


def build_witness(p: BiPoly, q: BiPoly, orientation: str, theorem: TheoremTag,
                  L: Optional[int] = None, L_max: int = DEFAULT_L_MAX) -> CompositionWitness:
    """Pick L per ``theorem``, compose with ``(x, y + x**L)`` and check the degree claims.

    ``L`` may be forced, in which case only the degree claims are checked
    (it must still exceed M).  Raises SearchExhausted when no L <= L_max
    works and WitnessCheckFailed if a composed degree disagrees with the
    predicted one.
    """
    pp, qq = _orient(p, q, orientation)
    prof = orientation_profile(pp, qq)
    if prof.n < 1 or prof.r < 1:
        raise PreconditionViolated("witness needs deg_y p >= 1 and deg_y q >= 1")
    lemma, w = None, None
    if L is None:
        L, lemma, w, label = _choose_L(prof, theorem, L_max)
    else:
        if L <= prof.M:
            raise PreconditionViolated(f"L={L} must exceed M={prof.M}")
        label = "forced L"

    gfx, gfy = shear_compose(pp, L), shear_compose(qq, L)
    deg_x_side, deg_y_side = gfx.total_degree, gfy.total_degree
    if deg_x_side != prof.u + L * prof.n or deg_y_side != prof.v + L * prof.r:
        raise WitnessCheckFailed(
            f"composed degrees ({deg_x_side}, {deg_y_side}) != "
            f"({prof.u + L * prof.n}, {prof.v + L * prof.r})"
        )
    if not (_pure_x_power(gfx.leading_form()) and _pure_x_power(gfy.leading_form())):
        raise WitnessCheckFailed("leading forms of the composed pair are not pure x-powers")
    g = gcd(deg_x_side, deg_y_side)
    gAC = gcd(prof.A, prof.C)
    if lemma is not None and not lemma.verify():
        raise WitnessCheckFailed(f"lemma witness does not verify: {lemma}")
    if label.startswith("improved") and g != gAC:
        raise WitnessCheckFailed(f"gcd of composed degrees {g} != gcd(A, C) = {gAC}")
    if label.startswith("i-yes-ii-no") and (g != gAC * w or not is_prime(w)):
        raise WitnessCheckFailed(f"gcd of composed degrees {g} != gcd(A, C) * w = {gAC * w}")
    return CompositionWitness(
        orientation=orientation, L=L, lemma=lemma,
        deg_gfx=deg_x_side, deg_gfy=deg_y_side, gcd_composed=g,
        case_label=label, w=w,
        composed_theorem=total_degree_theorem(deg_x_side, deg_y_side),
        gfx=gfx, gfy=gfy,
    )


def criterion_for(prof: OrientationProfile) -> Optional[TheoremTag]:
    """First of the three (A, C) criteria whose hypotheses hold, if any."""
    if prof.n < 1 or prof.r < 1:
        return None
    A, C = prof.A, prof.C
    g = gcd(A, C)
    if prof.cond_i and prof.cond_ii and classify(g, DegreeSet.ONE_8_P_2P):
        return TheoremTag.THM_IMPROVED
    if prof.cond_i and not prof.cond_ii and (_in_1_4_p(A) or _in_1_4_p(C) or g in (1, 2)):
        return TheoremTag.THM_I_YES_II_NO
    if _in_1_4_p(A) or _in_1_4_p(C):
        return TheoremTag.THM_MY
    return None


def check_paper_theorems(p: BiPoly, q: BiPoly, inv: Optional[DegreeInvariants] = None,
                         L_max: int = DEFAULT_L_MAX,
                         orientations: Tuple[str, ...] = ("ac", "bd"),
                         notes: Optional[List[str]] = None) -> Optional[Certificate]:
    """First certificate from the (A, C) criteria, trying orientations in order.

    An orientation whose hypotheses hold but for which no shear exponent can
    exist (:class:`NoWitness`) is skipped; the reason is appended to ``notes``.
    """
    if inv is None:
        inv = compute_invariants(p, q)
    for orientation in orientations:
        tag = criterion_for(inv.profile(orientation))
        if tag is None:
            continue
        try:
            wit = build_witness(p, q, orientation, tag, L_max=L_max)
        except NoWitness as exc:
            if notes is not None:
                notes.append(f"{tag.value} in {orientation}: {exc}")
            continue
        if wit.composed_theorem is None:
            raise WitnessCheckFailed(f"composed degrees {wit.deg_gfx}, {wit.deg_gfy} "
                                     f"are not covered by a total-degree criterion")
        return Certificate(tag, witness=wit, orientation=orientation)
    return None


def decide(p: BiPoly, q: BiPoly, use_inverter_fallback: bool = True,
           L_max: int = DEFAULT_L_MAX, orientation: str = "auto") -> Verdict:
    """Run the full pipeline; the first stage that succeeds wins."""
    jac = jacobian(p, q)
    if jac.is_zero or not jac.is_constant:
        return Verdict(Outcome.NOT_JACOBIAN_PAIR, jac)

    cert = check_proposition(p, q)
    if cert is not None:
        return Verdict(Outcome.AUTOMORPHISM, jac, cert)

    inv = compute_invariants(p, q)
    tag = total_degree_theorem(inv.total_p, inv.total_q)
    if tag is not None:
        return Verdict(Outcome.AUTOMORPHISM, jac, Certificate(tag), report=inv)

    orientations = ("ac", "bd") if orientation == "auto" else (orientation,)
    skipped: List[str] = []
    cert = check_paper_theorems(p, q, inv, L_max=L_max, orientations=orientations, notes=skipped)
    if cert is not None:
        return Verdict(Outcome.AUTOMORPHISM, jac, cert, report=inv)

    note = "; ".join(["no degree criterion applies"] + [f"skipped {s}" for s in skipped])
    if use_inverter_fallback:
        try:
            inverse, steps = invert_tame(p, q)
        except (NotReducible, StepLimitExceeded) as exc:
            note = f"{note}; inverter: {exc}"
        else:
            if not verify_factored_inverse(PolyMap(p, q), steps, inverse):
                raise InternalInconsistency("inverter produced a map that does not invert")
            cert = Certificate(TheoremTag.INVERTER, inverse=inverse, decomposition=steps)
            return Verdict(Outcome.AUTOMORPHISM, jac, cert, report=inv)
    else:
        note = f"{note}; inverter disabled"
    return Verdict(Outcome.INCONCLUSIVE, jac, report=inv, reduction_note=note)


# -- independent re-verification --------------------------------------------

def recheck_certificate(p: BiPoly, q: BiPoly, cert: Certificate) -> bool:
    """Re-derive a certificate's claims without reusing pipeline results."""
    jac = p.diff("x") * q.diff("y") - p.diff("y") * q.diff("x")
    if jac.is_zero or not jac.is_constant:
        return False
    f = PolyMap(p, q)
    tag = cert.theorem

    if cert.inverse is not None:
        if cert.decomposition is None:
            from .inverter import verify_inverse

            if not verify_inverse(f, cert.inverse):
                return False
        elif not verify_factored_inverse(f, cert.decomposition, cert.inverse):
            return False

    if tag is TheoremTag.PROP_TRIANGULAR:
        return cert.inverse is not None and 0 in (p.deg_x, p.deg_y, q.deg_x, q.deg_y)
    if tag is TheoremTag.INVERTER:
        return cert.inverse is not None
    if tag in (TheoremTag.THM1_TOTAL, TheoremTag.THM2_TOTAL):
        dp, dq = p.total_degree, q.total_degree
        if tag is TheoremTag.THM1_TOTAL:
            return classify(gcd(dp, dq), DegreeSet.ONE_8_P_2P)
        return any(classify(d, s) for d in (dp, dq)
                   for s in (DegreeSet.P_SET, DegreeSet.P2_SET, DegreeSet.FOUR_P))

    wit = cert.witness
    if wit is None:
        return False
    pp, qq = (p, q) if wit.orientation == "ac" else (p.swap_xy(), q.swap_xy())
    n, r = pp.deg_y, qq.deg_y
    if n < 1 or r < 1:
        return False
    u, v = pp.lead_coeff_in_y().deg_x, qq.lead_coeff_in_y().deg_x
    A, C = gcd(n, u), gcd(r, v)
    M = max(pp.deg_x, qq.deg_x)
    if wit.L <= M:
        return False
    # hypotheses of the cited result
    A_ok = A in (1, 4) or is_prime(A)
    C_ok = C in (1, 4) or is_prime(C)
    if tag is TheoremTag.THM_MY and not (A_ok or C_ok):
        return False
    if tag is TheoremTag.THM_I_YES_II_NO:
        if u * v == 0 or (u // A, n // A) != (v // C, r // C):
            return False
        if not (A_ok or C_ok or gcd(A, C) in (1, 2)):
            return False
    if tag is TheoremTag.THM_IMPROVED:
        if u * v == 0 or (u // A, n // A) == (v // C, r // C):
            return False
        g = gcd(A, C)
        if not (g in (1, 8) or is_prime(g) or (g % 2 == 0 and is_prime(g // 2))):
            return False
    if wit.lemma is not None and not wit.lemma.verify():
        return False
    # the composed pair itself must fall under a total-degree criterion
    shear = _Y + BiPoly.x(wit.L)
    dx = pp.compose(_X, shear).total_degree
    dy = qq.compose(_X, shear).total_degree
    if (dx, dy) != (wit.deg_gfx, wit.deg_gfy):
        return False
    return total_degree_theorem(dx, dy) is not None


# -- counterexample shape ----------------------------------------------------

@dataclass(frozen=True)
class ShapeParams:
    """Exponents of the leading forms ``x^(alpha*mu) y^(beta*mu)``, ``x^(alpha*nu) y^(beta*nu)``."""

    alpha: int
    beta: int
    mu: int
    nu: int
    d: int = field(init=False)
    alpha_p: int = field(init=False)
    beta_p: int = field(init=False)
    A: int = field(init=False)
    C: int = field(init=False)

    def __post_init__(self):
        a, b, mu, nu = self.alpha, self.beta, self.mu, self.nu
        if not 1 < a < b:
            raise PreconditionViolated(f"need 1 < alpha < beta, got {a}, {b}")
        if not 1 < nu < mu:
            raise PreconditionViolated(f"need 1 < nu < mu, got nu={nu}, mu={mu}")
        if gcd(mu, nu) != 1:
            raise PreconditionViolated(f"need gcd(mu, nu) = 1, got {gcd(mu, nu)}")
        d = gcd(a, b)
        if d == 1:
            raise PreconditionViolated("gcd(alpha, beta) = 1 is already excluded (d != 1)")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "alpha_p", a // d)
        object.__setattr__(self, "beta_p", b // d)
        object.__setattr__(self, "A", d * mu)
        object.__setattr__(self, "C", d * nu)


@dataclass(frozen=True)
class ShapeReport:
    params: ShapeParams
    excluded: bool
    reasons: List[str]
    gcd_AC: int
    cond_i: bool
    cond_ii: bool


def shape_constraints(sp: ShapeParams) -> ShapeReport:
    """Is a counterexample with these leading-form exponents ruled out?

    A and C are recomputed from the monomials themselves, not from the
    closed forms d*mu and d*nu, and checked against them.
    """
    P = BiPoly.monomial(1, sp.alpha * sp.mu, sp.beta * sp.mu)
    Q = BiPoly.monomial(1, sp.alpha * sp.nu, sp.beta * sp.nu)
    prof = orientation_profile(P, Q)
    if (prof.A, prof.C) != (sp.A, sp.C):
        raise InternalInconsistency(f"A, C = {prof.A}, {prof.C}; expected {sp.A}, {sp.C}")
    g = gcd(prof.A, prof.C)
    reasons = []
    if g in (1, 2):
        reasons.append(f"gcd(A, C) = {g} in {{1, 2}}")
    if _in_1_4_p(prof.A):
        reasons.append(f"A = {prof.A} in {{1, 4}} u P")
    if _in_1_4_p(prof.C):
        reasons.append(f"C = {prof.C} in {{1, 4}} u P")
    # the criterion needs uv != 0 and failure of the second condition
    applicable = prof.cond_i and not prof.cond_ii
    return ShapeReport(
        params=sp, excluded=applicable and bool(reasons), reasons=reasons,
        gcd_AC=g, cond_i=prof.cond_i, cond_ii=prof.cond_ii,
    )


@dataclass(frozen=True)
class GcdCase:
    d: int
    s: int  # alpha' + beta'
    rejected: bool
    reason: str


def exclude_gcd(target: int) -> List[GcdCase]:
    """Every split ``d * (alpha' + beta') = target`` and whether it is impossible."""
    if target < 1:
        raise PreconditionViolated("target must be positive")
    cases = []
    for d in range(1, target + 1):
        if target % d:
            continue
        s = target // d
        if d == 1:
            case = GcdCase(d, s, True, "d != 1")
        elif d == 2:
            case = GcdCase(d, s, True, "d > 2")
        elif s == 1:
            case = GcdCase(d, s, True, "alpha' + beta' = 1 is impossible")
        elif s == 2:
            case = GcdCase(d, s, True, "0 < alpha' < beta' forces alpha' + beta' >= 3")
        else:
            case = GcdCase(d, s, False, "not excluded by these rules")
        cases.append(case)
    return cases


def exclude_gcd8() -> List[GcdCase]:
    return exclude_gcd(8)
