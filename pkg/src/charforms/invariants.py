"""Invariant polynomials on the Lie algebra and their polarizations.

Built-ins: power traces tr(X^n), the trace form tr(X^2) and the Killing form
computed from structure constants of the fixed basis (so the proportionality
to the trace form on sl(n) is a checkable fact, not an input).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeMismatch
from .matgroup import LieAlgebraBasis, _ad_matrix
from .numeric import matrix_exp, matrix_inverse

__all__ = [
    "InvariantPolynomial",
    "trace_form",
    "power_trace",
    "killing_form",
    "combination",
    "evaluate",
    "polarize",
    "check_invariance",
    "polynomial_to_json",
    "polynomial_from_json",
]


@dataclass(frozen=True)
class InvariantPolynomial:
    kind: str           # "trace_form" | "power_trace" | "killing" | "combo"
    degree: int
    terms: tuple = ()   # for "combo": tuple of (complex coeff, InvariantPolynomial)

    def __post_init__(self):
        if self.kind not in ("trace_form", "power_trace", "killing", "combo"):
            raise ValueError(f"unknown polynomial kind {self.kind!r}")
        if self.kind == "combo":
            for _, t in self.terms:
                if t.degree != self.degree:
                    raise DegreeMismatch(
                        "combination terms must share a common degree")


def trace_form() -> InvariantPolynomial:
    return InvariantPolynomial("trace_form", 2)


def power_trace(n: int) -> InvariantPolynomial:
    if n < 1:
        raise ValueError("power_trace degree must be >= 1")
    return InvariantPolynomial("power_trace", n)


def killing_form() -> InvariantPolynomial:
    return InvariantPolynomial("killing", 2)


def combination(terms) -> InvariantPolynomial:
    terms = tuple((complex(c), t) for c, t in terms)
    if not terms:
        raise ValueError("empty combination")
    return InvariantPolynomial("combo", terms[0][1].degree, terms)


def _ad_of(basis: LieAlgebraBasis, m: np.ndarray) -> np.ndarray:
    cols = [basis.coords_from_matrix(m @ b - b @ m) for b in basis.matrices]
    return np.stack(cols, axis=1)


def evaluate(phi: InvariantPolynomial, basis: LieAlgebraBasis, x) -> complex:
    """Evaluate on a coordinate vector in the fixed basis."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (basis.dim,):
        raise DegreeMismatch(
            f"coordinate vector of length {x.shape} != dim g = {basis.dim}")
    if phi.kind == "combo":
        return sum(c * evaluate(t, basis, x) for c, t in phi.terms)
    m = basis.matrix_from_coords(x)
    if phi.kind == "trace_form":
        return complex(np.trace(m @ m))
    if phi.kind == "power_trace":
        return complex(np.trace(np.linalg.matrix_power(m, phi.degree)))
    ad = _ad_of(basis, m)
    return complex(np.trace(ad @ ad))


def polarize(phi: InvariantPolynomial, basis: LieAlgebraBasis):
    """Symmetric n-linear evaluator with tilde-Phi(X,...,X) = Phi(X).

    Uses the finite polarization formula (inclusion-exclusion over nonempty
    subsets); 2^n - 1 evaluations, fine for the small degrees used here.
    """
    n = phi.degree
    fact = math.factorial(n)
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    signs = [(-1) ** (n - len(s)) for s in subsets]

    def evaluator(*args) -> complex:
        if len(args) != n:
            raise DegreeMismatch(f"expected {n} arguments, got {len(args)}")
        xs = [np.asarray(a, dtype=np.complex128) for a in args]
        total = 0.0 + 0.0j
        for s, sign in zip(subsets, signs):
            acc = xs[s[0]].copy()
            for i in s[1:]:
                acc = acc + xs[i]
            total += sign * evaluate(phi, basis, acc)
        return total / fact

    return evaluator


def check_invariance(phi: InvariantPolynomial, basis: LieAlgebraBasis,
                     samples: int, rng) -> float:
    """Max |Phi(Ad_g X) - Phi(X)| over random unit X and bounded random g."""
    worst = 0.0
    d = basis.dim
    for _ in range(samples):
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        x = x / np.linalg.norm(x)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = y / max(np.linalg.norm(y), 1.0)
        g = matrix_exp(basis.matrix_from_coords(y))
        g_inv = matrix_inverse(g)
        ad_g = _ad_matrix(basis, g, g_inv)
        dev = abs(evaluate(phi, basis, ad_g @ x) - evaluate(phi, basis, x))
        worst = max(worst, dev)
    return worst


def polynomial_to_json(phi: InvariantPolynomial) -> dict:
    if phi.kind == "combo":
        return {"kind": "combo",
                "terms": [{"coeff": [c.real, c.imag], **polynomial_to_json(t)}
                          for c, t in phi.terms]}
    if phi.kind == "power_trace":
        return {"kind": "power_trace", "n": phi.degree}
    return {"kind": phi.kind}


def polynomial_from_json(data: dict) -> InvariantPolynomial:
    kind = data["kind"]
    if kind == "trace_form":
        return trace_form()
    if kind == "killing":
        return killing_form()
    if kind == "power_trace":
        return power_trace(int(data["n"]))
    if kind == "combo":
        terms = []
        for t in data["terms"]:
            c = complex(t["coeff"][0], t["coeff"][1])
            terms.append((c, polynomial_from_json({k: v for k, v in t.items()
                                                   if k != "coeff"})))
        return combination(terms)
    raise ValueError(f"unknown polynomial kind {kind!r}")
