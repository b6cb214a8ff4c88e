"""
The invariant kappa and the corepresentation semiring.

kappa = mu^2 / lambda decides monoidal equivalence; when it is rational it
also decides whether q is a root of unity.  In the generic case the
tensor products of simple comodules follow the Clebsch-Gordan rule, and
the relabeling U(n,e) -> U(n,-n-e) is a semiring automorphism.
"""

from __future__ import annotations

from fractions import Fraction

from gl2deform.fusion import (GenericLabel as U, RootLabel, RootOfUnityCase, SemiringElement,
                              relabel_automorphism, tensor_generic, tensor_root_partial)
from gl2deform.invariants import genericity_of_kappa, invariant_report, monoidal_equivalent
from gl2deform.quantum import a_q, jordanian_pair
from gl2deform.scalar import ScalarField

F = ScalarField(("p", "q"))
r = invariant_report(a_q(F, F.param("p")), a_q(F, F.param("q")))
print(f"(A_p, A_q): lambda = {r.lam}, mu = {r.mu}, kappa = {r.kappa}")

Q = ScalarField(())
J = jordanian_pair(Q, Q(3), Q(-1))
print("Jordanian pair: kappa =", invariant_report(*J).kappa, "->", invariant_report(*J).genericity)
print("GL_{2,3} vs GL_{1,6}:", monoidal_equivalent(a_q(Q, Q(2)), a_q(Q, Q(3)),
                                                    a_q(Q, Q(1)), a_q(Q, Q(6)))[0])
for k in (0, 1, 2, 3, 4, Fraction(9, 2)):
    print(f"  kappa = {k}: {genericity_of_kappa(Q(k))}")

print("\nU(1,0) x U(1,0) =", tensor_generic(U(1, 0), U(1, 0)))
x = tensor_generic(U(2, 0), U(3, -1))
print("U(2,0) x U(3,-1) =", x, f"(dim {x.dim})")
print("relabeled:", relabel_automorphism(-1, x))

cube = SemiringElement.of(U(1, 0))
print("U(1,0)^3 =", cube * cube * cube)

case = RootOfUnityCase(6)
print(f"\nq of order 6 (N0 = {case.N0}):")
print("  V(2) x V(1) =", tensor_root_partial(RootLabel(2), RootLabel(1), case))
print("  U(1) x U(1) =", tensor_root_partial(RootLabel(0, 1), RootLabel(0, 1), case))
print("  U(2) x U(1) =", tensor_root_partial(RootLabel(0, 2), RootLabel(0, 1), case))
