"""Characteristic n-forms at a representation: cup products of 1-cocycles
weighted by a polarized invariant polynomial, paired against a bar n-cycle.

For degree 2 and a surface group this is the Goldman symplectic form.  The
module also hosts the structural checks: vanishing on coboundaries (the form
descends to the conjugation quotient), skew-symmetry, nondegeneracy on H^1,
conjugation invariance and pullback along group endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cohomology import (
    BarChain,
    cocycle_space,
    extend_cocycle,
    fundamental_two_cycle,
    pair,
)
from .errors import DegreeMismatch, NotEndomorphism
from .matgroup import (
    Representation,
    TangentVector,
    _ad_matrix,
    adjoint_operator,
    coboundary,
    conjugate_representation,
    evaluate_word,
    matrix_inverse,
)
from .invariants import InvariantPolynomial, polarize
from .numeric import DEFAULT_TOL, Tolerances, svd_rank
from .words import Word

__all__ = [
    "EtaContext",
    "make_context",
    "cup_cocycle",
    "eta",
    "contraction_suite",
    "gram_matrix",
    "conjugation_invariance",
    "endomorphism_pullback",
    "random_cocycle",
]


@dataclass(frozen=True)
class EtaContext:
    rho: Representation
    phi: InvariantPolynomial
    phi_polarized: object  # symmetric n-linear evaluator on coordinate vectors
    cycle: BarChain

    @property
    def degree(self) -> int:
        return self.phi.degree


def make_context(rho: Representation, phi: InvariantPolynomial,
                 cycle: BarChain | None = None) -> EtaContext:
    """Build a context; a degree-2 surface presentation gets its fundamental
    cycle automatically."""
    if cycle is None:
        if phi.degree != 2:
            raise DegreeMismatch(
                "automatic cycle only available in degree 2; supply one")
        cycle = fundamental_two_cycle(rho.presentation).chain
    if cycle.degree != phi.degree:
        raise DegreeMismatch(
            f"cycle degree {cycle.degree} != polynomial degree {phi.degree}")
    return EtaContext(rho, phi, polarize(phi, rho.basis), cycle)


def cup_cocycle(ctx: EtaContext, *sigmas: TangentVector):
    """Evaluator of the cup product of n cocycles weighted by polarized Phi.

    (g_1,...,g_n) -> Phi~(s_1(g_1), Ad(g_1) s_2(g_2), ...,
                          Ad(g_1...g_{n-1}) s_n(g_n)).
    Vanishes whenever an argument is the identity (cocycles kill e).
    """
    n = ctx.degree
    if len(sigmas) != n:
        raise DegreeMismatch(f"expected {n} cocycles, got {len(sigmas)}")
    exts = [extend_cocycle(ctx.rho, s) for s in sigmas]

    def evaluator(*gammas: Word) -> complex:
        if len(gammas) != n:
            raise DegreeMismatch(f"expected {n} words, got {len(gammas)}")
        args = []
        acc = None
        for i, g in enumerate(gammas):
            v = exts[i](g)
            if acc is not None:
                v = acc @ v
            args.append(v)
            if i < n - 1:
                ad_g = adjoint_operator(ctx.rho, g)
                acc = ad_g if acc is None else acc @ ad_g
        return ctx.phi_polarized(*args)

    return evaluator


def eta(ctx: EtaContext, *sigmas: TangentVector) -> complex:
    return pair(cup_cocycle(ctx, *sigmas), ctx.cycle)


def random_cocycle(space, rng) -> TangentVector:
    """Random complex combination of a cocycle-space basis."""
    basis = space.basis_z1
    c = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    acc = c[0] * basis[0]
    for i in range(1, len(basis)):
        acc = acc + c[i] * basis[i]
    return acc


def contraction_suite(ctx: EtaContext, trials: int, rng,
                      tol: Tolerances = DEFAULT_TOL) -> dict:
    """Max |eta| with a coboundary in the first slot, over random trials.

    The form is basic for the conjugation action, so the report should show a
    deviation below 1e-9 times the scale (the max |eta| over the same trial
    cocycles)."""
    space = cocycle_space(ctx.rho, tol)
    n = ctx.degree
    d = ctx.rho.dim_g
    worst = 0.0
    scale = 0.0
    for _ in range(trials):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        db = coboundary(ctx.rho, v)
        rest = [random_cocycle(space, rng) for _ in range(n - 1)]
        extra = random_cocycle(space, rng)
        worst = max(worst, abs(eta(ctx, db, *rest)))
        scale = max(scale, abs(eta(ctx, extra, *rest)))
    passed = worst <= 1e-9 * scale if scale > 0 else worst == 0.0
    return {"check": "contraction", "max_dev": worst, "scale": scale,
            "pass": bool(passed), "trials": trials}


def gram_matrix(ctx: EtaContext, basis, tol: Tolerances = DEFAULT_TOL):
    """Antisymmetric matrix G_ij = eta(s_i, s_j) and its SVD rank (degree 2)."""
    if ctx.degree != 2:
        raise DegreeMismatch("gram_matrix requires a degree-2 context")
    k = len(basis)
    g = np.zeros((k, k), dtype=np.complex128)
    for i in range(k):
        for j in range(i + 1, k):
            val = eta(ctx, basis[i], basis[j])
            g[i, j] = val
            g[j, i] = eta(ctx, basis[j], basis[i])
    rank = svd_rank(g, tol)
    return g, rank


def conjugation_invariance(ctx: EtaContext, g, trials: int, rng,
                           tol: Tolerances = DEFAULT_TOL) -> float:
    """Max |eta_{g rho g^-1}(Ad_g s, Ad_g t) - eta_rho(s, t)| over random
    cocycle pairs."""
    if ctx.degree != 2:
        raise DegreeMismatch("conjugation_invariance requires degree 2")
    rho = ctx.rho
    rho_c = conjugate_representation(rho, g)
    ad_g = _ad_matrix(rho.basis, np.asarray(g, dtype=np.complex128),
                      matrix_inverse(np.asarray(g, dtype=np.complex128), tol))
    ctx_c = EtaContext(rho_c, ctx.phi, ctx.phi_polarized, ctx.cycle)
    space = cocycle_space(rho, tol)
    worst = 0.0
    for _ in range(trials):
        s = random_cocycle(space, rng)
        t = random_cocycle(space, rng)
        s = (1.0 / np.linalg.norm(s.stacked)) * s
        t = (1.0 / np.linalg.norm(t.stacked)) * t
        s_c = TangentVector.of(s.values @ ad_g.T)
        t_c = TangentVector.of(t.values @ ad_g.T)
        dev = abs(eta(ctx_c, s_c, t_c) - eta(ctx, s, t))
        worst = max(worst, dev)
    return worst


def pullback_cocycle(ctx: EtaContext, images: tuple, sigma: TangentVector) -> TangentVector:
    """(phi* sigma)(x_k) = sigma(phi(x_k)) via the cocycle extension."""
    ext = extend_cocycle(ctx.rho, sigma)
    return TangentVector.of(np.stack([ext(w) for w in images]))


def endomorphism_pullback(ctx: EtaContext, images, pairs=None, trials: int = 5,
                          rng=None, tol: Tolerances = DEFAULT_TOL):
    """Pull the context back along the endomorphism x_k -> images[k].

    Checks numerically that every relator maps to a word acting trivially at
    rho.  Returns the pulled-back context together with a report comparing
    eta at rho∘phi on pulled-back cocycles against eta at rho.
    """
    rho = ctx.rho
    images = tuple(images)
    if len(images) != rho.p:
        raise NotEndomorphism("need one image word per generator")
    n_mat = rho.group.n
    for r in rho.presentation.relators:
        mapped = Word.identity()
        for g, s in r.letters:
            w = images[g] if s == 1 else images[g].inverse()
            mapped = mapped * w
        res = np.linalg.norm(evaluate_word(rho, mapped) - np.eye(n_mat))
        if res > 1e-8:
            raise NotEndomorphism(
                f"relator maps to a word with residual {res:.3e} at rho")
    new_images = [evaluate_word(rho, w) for w in images]
    rho_new = Representation(rho.presentation, rho.group, new_images, tol=rho.tol)
    ctx_new = EtaContext(rho_new, ctx.phi, ctx.phi_polarized, ctx.cycle)
    if pairs is None:
        if rng is None:
            raise ValueError("supply cocycle pairs or an rng")
        space = cocycle_space(rho, tol)
        pairs = [(random_cocycle(space, rng), random_cocycle(space, rng))
                 for _ in range(trials)]
    ratios = []
    for s, t in pairs:
        base = eta(ctx, s, t)
        pulled = eta(ctx_new, pullback_cocycle(ctx, images, s),
                     pullback_cocycle(ctx, images, t))
        if abs(base) > 1e-12:
            ratios.append(pulled / base)
    report = {
        "ratios": ratios,
        "ratio": complex(np.mean(ratios)) if ratios else None,
        "pairs": len(pairs),
    }
    return ctx_new, report
