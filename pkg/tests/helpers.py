"""Random generators and independent oracles shared by the test modules."""

import random
from fractions import Fraction
from math import isqrt

from jacpair.bipoly import BiPoly
from jacpair.inverter import ElementaryStep, StepKind


def trial_division_is_prime(t):
    if t < 2:
        return False
    for f in range(2, isqrt(t) + 1):
        if t % f == 0:
            return False
    return True


def factorize(t):
    out, f = [], 2
    while f * f <= t:
        while t % f == 0:
            out.append(f)
            t //= f
        f += 1
    if t > 1:
        out.append(t)
    return out


def random_poly(rng, max_deg=6, max_terms=6, coeff=9, rational=False):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        c = rng.randint(-coeff, coeff)
        if rational:
            c = Fraction(c, rng.randint(1, 7))
        terms[(i, j)] = c
    return BiPoly(terms)


def random_univariate(rng, var, max_deg=4, coeff=5):
    deg = rng.randint(1, max_deg)
    c = {k: rng.randint(-coeff, coeff) for k in range(deg + 1)}
    c[deg] = rng.choice([v for v in range(-coeff, coeff + 1) if v])
    if var == "x":
        return BiPoly({(k, 0): v for k, v in c.items()})
    return BiPoly({(0, k): v for k, v in c.items()})


def random_step(rng, max_deg=4, coeff=5):
    kind = rng.choice(list(StepKind))
    if kind is StepKind.AFFINE:
        while True:
            a, b, c, d = (rng.randint(-coeff, coeff) for _ in range(4))
            if a * d - b * c:
                break
        return ElementaryStep.affine(a, b, c, d, rng.randint(-coeff, coeff), rng.randint(-coeff, coeff))
    if kind is StepKind.SHEAR_X:
        return ElementaryStep.shear_x(random_univariate(rng, "y", max_deg, coeff))
    return ElementaryStep.shear_y(random_univariate(rng, "x", max_deg, coeff))


def random_tame_steps(rng, max_steps=5, max_deg=4, coeff=5):
    return [random_step(rng, max_deg, coeff) for _ in range(rng.randint(1, max_steps))]


def random_point(rng):
    return Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(-50, 50), rng.randint(1, 9))


def shear_oracle(p, L):
    """p(x, y + x^L) expanded monomial by monomial with binomial coefficients."""
    from math import comb

    out = {}
    for (i, j), c in p.terms.items():
        for k in range(j + 1):
            e = (i + L * (j - k), k)
            out[e] = out.get(e, 0) + c * comb(j, k)
    return BiPoly(out)


def random_sparse_pair(rng, max_deg=12, max_terms=10):
    """Nonzero pair with deg_y >= 1 on both sides."""
    while True:
        p = random_poly(rng, max_deg, max_terms)
        q = random_poly(rng, max_deg, max_terms)
        if not p.is_zero and not q.is_zero and p.deg_y >= 1 and q.deg_y >= 1:
            return p, q
