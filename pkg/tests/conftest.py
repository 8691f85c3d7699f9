import numpy as np
import pytest

from charforms import GroupSpec, Presentation, Representation
from charforms.families import FamilySpec, Poly

SL2 = GroupSpec("SL", 2)
GL2 = GroupSpec("GL", 2)


@pytest.fixture(scope="session")
def torus_rep():
    """Generic diagonal point on the torus: commuting hyperbolics."""
    pres = Presentation.surface(1)
    return Representation(pres, SL2, [np.diag([2.0, 0.5]), np.diag([3.0, 1.0 / 3.0])])


@pytest.fixture(scope="session")
def genus2_rep():
    """Irreducible genus-2 point: the doubled pair (A, B, B, A).

    [B, A] = [A, B]^-1, so the surface relator holds exactly in floating
    point; A and B share no eigenvector, making the point irreducible.
    """
    pres = Presentation.surface(2)
    a = np.array([[2.0, 1.0], [1.0, 1.0]])
    b = np.array([[1.0, 1.0], [1.0, 2.0]])
    return Representation(pres, SL2, [a, b, b, a])


@pytest.fixture(scope="session")
def f2_rep():
    """Irreducible pair of SL(2) matrices on the free group F_2."""
    pres = Presentation.free(["a", "b"])
    a = np.diag([2.0, 0.5])
    b = np.array([[1.0, 1.0], [1.0, 2.0]])
    return Representation(pres, SL2, [a, b])


def diagonal_family():
    """Three-parameter genus-2 family of commuting diagonal GL(2) images.

    Commuting images satisfy the product-of-commutators relator identically,
    so the family is exactly polynomial with zero relator residual, while the
    pulled-back 2-form has nonconstant coefficients of order-one size.
    """
    pres = Presentation.surface(2)
    m = 3
    s1, s2, s3 = (Poly.var(m, k) for k in range(m))
    c = lambda v: Poly.const(m, v)
    zero = Poly(m)

    def diag(p, q):
        return [[p, zero], [zero, q]]

    images = {
        "a1": diag(c(2.0) + s1, c(0.5) + s2 + s3 * s3),
        "b1": diag(c(3.0) + s2 + s1 * s3, c(1.0 / 3.0) + s1),
        "a2": diag(c(1.0) + s3, c(1.0) - s3 + s1 * s1),
        "b2": diag(c(1.0) + s1 - s3, c(2.0) + s2 * s3),
    }
    return FamilySpec(pres, GL2, ("s1", "s2", "s3"), (0.2, 0.2, 0.2), images)


@pytest.fixture(scope="session")
def family():
    return diagonal_family()
