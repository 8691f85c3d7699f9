"""Twisted cocycle/coboundary spaces, bar-resolution chains and pairings.

Group elements inside bar chains are carried by fixed reduced free words.
Boundary computations compare words through a deterministic normal-form map
that deletes literal relator subwords; no word-problem machinery is involved
because all evaluators used in pairings are genuine functions on the group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSurfacePresentation, RankInstability
from .matgroup import (
    Representation,
    TangentVector,
    adjoint_operator,
    coboundary,
    evaluate_groupring,
)
from .numeric import DEFAULT_TOL, Tolerances, nullspace_basis, orth_basis
from .words import GroupRingElement, Presentation, Word, fox_derivative

__all__ = [
    "CocycleSpace",
    "BarChain",
    "FundamentalCycle",
    "fox_jacobian",
    "cocycle_space",
    "extend_cocycle",
    "fundamental_two_cycle",
    "bar_boundary",
    "verify_cycle",
    "normal_form",
    "pair",
]


def fox_jacobian(rho: Representation) -> np.ndarray:
    """Stacked Ad-evaluated Fox derivatives of the relators.

    Shape (R * dim g, p * dim g); the kernel of this matrix is Z^1(Gamma, Ad rho)
    in stacked generator coordinates.
    """
    p, d = rho.p, rho.dim_g
    rows = []
    for r in rho.presentation.relators:
        row = np.zeros((d, p * d), dtype=np.complex128)
        for k in range(p):
            row[:, k * d:(k + 1) * d] = evaluate_groupring(rho, fox_derivative(r, k))
        rows.append(row)
    if not rows:
        return np.zeros((0, p * d), dtype=np.complex128)
    return np.concatenate(rows, axis=0)


@dataclass(frozen=True)
class CocycleSpace:
    """Bases of Z^1, B^1 and H^1-representatives at a representation."""

    rho: Representation
    basis_z1: tuple  # TangentVectors
    basis_b1: tuple
    basis_h1: tuple
    rank_gap: float  # smallest-kept / largest-dropped singular value ratio

    @property
    def dims(self):
        return (len(self.basis_z1), len(self.basis_b1), len(self.basis_h1))

    def h2_dim(self):
        """dim H^2 as the cokernel of the Fox Jacobian.

        Only meaningful for single-relator (aspherical) presentations; None
        for multi-relator input.
        """
        if len(self.rho.presentation.relators) != 1:
            return None
        jac = fox_jacobian(self.rho)
        rank = len(self.basis_z1)
        return jac.shape[0] - (jac.shape[1] - rank)

    def report(self) -> dict:
        zi, bi, hi = self.dims
        gap = self.rank_gap
        return {"dims": [zi, bi, hi],
                "rank_gap": gap if np.isfinite(gap) else None}


def _gap_of(singvals: np.ndarray, rank: int) -> float:
    if rank == 0 or rank >= len(singvals) or singvals[0] == 0.0:
        return np.inf
    if singvals[rank] == 0.0:
        return np.inf
    return float(singvals[rank - 1] / singvals[rank])


def _checked_rank(m: np.ndarray, tol: Tolerances, what: str):
    """Rank with instability detection: no singular value may sit within a
    factor 10 of the cutoff."""
    if m.size == 0:
        return 0, np.inf, np.zeros(0)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0, np.inf, s
    cutoff = tol.rank_rel * s[0]
    near = np.sum((s > cutoff / 10) & (s < cutoff * 10))
    if near:
        raise RankInstability(
            f"{what}: {near} singular value(s) within a factor 10 of cutoff")
    rank = int(np.sum(s > cutoff))
    return rank, _gap_of(s, rank), s


def cocycle_space(rho: Representation, tol: Tolerances = DEFAULT_TOL) -> CocycleSpace:
    p, d = rho.p, rho.dim_g
    jac = fox_jacobian(rho)
    if jac.shape[0] == 0:
        z1 = np.eye(p * d, dtype=np.complex128)
        gap_z = np.inf
    else:
        rank_j, gap_z, _ = _checked_rank(jac, tol, "fox_jacobian")
        z1 = nullspace_basis(jac, tol)
        assert z1.shape[1] == p * d - rank_j
    # B^1: image of v -> (v - Ad rho(x_k) v)_k
    cob = np.stack([coboundary(rho, np.eye(d)[:, j]).stacked for j in range(d)],
                   axis=1)
    rank_b, gap_b, _ = _checked_rank(cob, tol, "coboundary map")
    b1 = orth_basis(cob, tol)
    # H^1 representatives: orthonormal complement of B^1 inside Z^1
    resid = z1 - b1 @ (b1.conj().T @ z1)
    if resid.size:
        rank_h, gap_h, _ = _checked_rank(resid, tol, "H1 complement")
    else:
        gap_h = np.inf
    h1 = orth_basis(resid, tol)
    gap = min(gap_z, gap_b, gap_h)
    return CocycleSpace(
        rho,
        tuple(TangentVector.from_stacked(z1[:, j], p) for j in range(z1.shape[1])),
        tuple(TangentVector.from_stacked(b1[:, j], p) for j in range(b1.shape[1])),
        tuple(TangentVector.from_stacked(h1[:, j], p) for j in range(h1.shape[1])),
        gap,
    )


def extend_cocycle(rho: Representation, sigma: TangentVector):
    """Extend generator values to a function on words by the cocycle rule
    sigma(uv) = sigma(u) + Ad rho(u) sigma(v)."""
    ad, ad_inv = rho._generator_ad()
    d = rho.dim_g
    cache: dict = {}

    def value(w: Word) -> np.ndarray:
        if w in cache:
            return cache[w]
        total = np.zeros(d, dtype=np.complex128)
        acc = np.eye(d, dtype=np.complex128)
        for g, s in w.letters:
            if s == 1:
                total = total + acc @ sigma.values[g]
                acc = acc @ ad[g]
            else:
                total = total - acc @ (ad_inv[g] @ sigma.values[g])
                acc = acc @ ad_inv[g]
        cache[w] = total
        return total

    return value


# ---------------------------------------------------------------------------
# Bar chains


@dataclass(frozen=True)
class BarChain:
    """Integer combination of bar tuples [g1|...|gn]."""

    degree: int
    terms: tuple  # tuple of ((Word, ..., Word), int), no zero coefficients

    @staticmethod
    def of(degree: int, mapping) -> "BarChain":
        items = []
        for tup, c in dict(mapping).items():
            tup = tuple(tup)
            if len(tup) != degree:
                raise ValueError(f"tuple {tup} does not match degree {degree}")
            if c != 0:
                items.append((tup, int(c)))
        items.sort(key=lambda t: tuple((len(w.letters), w.letters) for w in t[0]))
        return BarChain(degree, tuple(items))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "BarChain") -> "BarChain":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        acc = self.as_dict()
        for tup, c in other.terms:
            acc[tup] = acc.get(tup, 0) + c
        return BarChain.of(self.degree, acc)

    def __neg__(self) -> "BarChain":
        return BarChain(self.degree, tuple((t, -c) for t, c in self.terms))

    def __sub__(self, other: "BarChain") -> "BarChain":
        return self + (-other)

    def drop_term(self, index: int) -> "BarChain":
        return BarChain(self.degree,
                        self.terms[:index] + self.terms[index + 1:])

    def is_zero(self) -> bool:
        return not self.terms


def normal_form(w: Word, presentation: Presentation | None) -> Word:
    """Deterministic normal form: freely reduced, with literal relator
    subwords (and their inverses) deleted repeatedly, leftmost first."""
    if presentation is None:
        return w
    patterns = []
    for r in presentation.relators:
        if r.letters:
            patterns.append(r.letters)
            inv = r.inverse().letters
            if inv != r.letters:
                patterns.append(inv)
    changed = True
    letters = w.letters
    while changed:
        changed = False
        for pat in patterns:
            L = len(pat)
            for i in range(len(letters) - L + 1):
                if letters[i:i + L] == pat:
                    letters = Word.of(letters[:i] + letters[i + L:]).letters
                    changed = True
                    break
            if changed:
                break
    return Word(letters)


def bar_boundary(chain: BarChain, presentation: Presentation | None = None) -> BarChain:
    """Boundary with trivial coefficients; degree 2 -> 1 and 3 -> 2."""
    if chain.degree == 2:
        acc: dict = {}

        def add(w, c):
            key = (normal_form(w, presentation),)
            acc[key] = acc.get(key, 0) + c

        for (g1, g2), c in chain.terms:
            add(g2, c)
            add(g1 * g2, -c)
            add(g1, c)
        return BarChain.of(1, acc)
    if chain.degree == 3:
        acc = {}

        def add2(t, c):
            key = tuple(normal_form(w, presentation) for w in t)
            acc[key] = acc.get(key, 0) + c

        for (g1, g2, g3), c in chain.terms:
            add2((g2, g3), c)
            add2((g1 * g2, g3), -c)
            add2((g1, g2 * g3), c)
            add2((g1, g2), -c)
        return BarChain.of(2, acc)
    raise ValueError(f"boundary implemented for degrees 2 and 3, not {chain.degree}")


def verify_cycle(chain: BarChain, presentation: Presentation | None = None) -> bool:
    """True iff the degree-2 boundary vanishes identically (exact integers)."""
    if chain.degree != 2:
        raise ValueError("verify_cycle expects a degree-2 chain")
    return bar_boundary(chain, presentation).is_zero()


@dataclass(frozen=True)
class FundamentalCycle:
    chain: BarChain
    presentation: Presentation
    orientation_sign: int = 1


def _surface_genus(presentation: Presentation) -> int:
    """Genus if the presentation is the standard surface one, else raise."""
    p = presentation.p
    if p == 0 or p % 2 != 0 or len(presentation.relators) != 1:
        raise NotSurfacePresentation("need 2g generators and a single relator")
    g = p // 2
    expected = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        expected += [(a, 1), (b, 1), (a, -1), (b, -1)]
    if presentation.relators[0].letters != tuple(expected):
        raise NotSurfacePresentation(
            "relator is not the standard product of commutators")
    return g


def fundamental_two_cycle(presentation: Presentation) -> FundamentalCycle:
    """Bar 2-cycle representing the fundamental class of the genus-g surface.

    z = sum_{j=1}^{4g-1} [w_j | y_{j+1}] - sum_i ([a_i|a_i^-1] + [b_i|b_i^-1])
        - (2g-1) [e|e],
    with w_j the reduced relator prefixes.  The boundary vanishes exactly once
    the full relator word is collapsed to e by the normal-form map.
    """
    g = _surface_genus(presentation)
    letters = presentation.relators[0].letters
    acc: dict = {}

    def add(t, c):
        acc[t] = acc.get(t, 0) + c

    prefix = Word.of(letters[:1])
    for j in range(1, 4 * g):
        y = Word.generator(*letters[j])
        add((prefix, y), 1)
        prefix = prefix * y
    for i in range(g):
        a = Word.generator(2 * i, 1)
        b = Word.generator(2 * i + 1, 1)
        add((a, a.inverse()), -1)
        add((b, b.inverse()), -1)
    e = Word.identity()
    add((e, e), -(2 * g - 1))
    chain = BarChain.of(2, acc)
    if not verify_cycle(chain, presentation):
        raise NotSurfacePresentation("constructed chain is not a cycle")
    return FundamentalCycle(chain, presentation, 1)


def pair(evaluator, chain: BarChain) -> complex:
    """Pairing sum over terms: coefficient * evaluator(*tuple)."""
    total = 0.0 + 0.0j
    for tup, c in chain.terms:
        total += c * evaluator(*tup)
    return total
