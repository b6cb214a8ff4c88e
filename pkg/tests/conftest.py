from __future__ import annotations

import pytest

from gl2deform.quantum import a_q, build_appendix_system
from gl2deform.scalar import BaseField, ScalarField


@pytest.fixture(scope="session")
def Fqp():
    """Q(q, p1), the field of the two-parameter appendix instance."""
    return ScalarField(("p1", "q"))


@pytest.fixture(scope="session")
def appendix_instance(Fqp):
    """``(q, C, D, system)`` with ``(C, D) = (A_p1, A_p2)`` and ``p1 p2 = q^2``."""
    F = Fqp
    q, p1 = F.param("q"), F.param("p1")
    C, D = a_q(F, p1), a_q(F, q * q / p1)
    return q, C, D, build_appendix_system(q, C, D)


@pytest.fixture(scope="session")
def Fq():
    return ScalarField(("q",))


@pytest.fixture(scope="session")
def Fiq():
    return ScalarField(("q",), BaseField.GAUSSIAN_RATIONALS)
