"""
Hopf structure of O(GL_q(2)) = G(A_q, A_q), checked by reduction.

Every relation is pushed through the comultiplication, counit and antipode
and reduced in the target; the antipode axioms are checked on generators.
Then a few of the explicit isomorphisms between presented algebras are
certified, along with the *-structure for real q.
"""

from __future__ import annotations

from gl2deform.quantum import (a_q, antipode, build_gab, comultiplication, counit,
                               congruence_morphism, hopf_inversion_morphism,
                               inversion_morphism, verify_hopf_identities, verify_morphism,
                               verify_star_structure, verify_structural_map)
from gl2deform.scalar import BaseField, ScalarField, ScalarMatrix

F = ScalarField(("q",))
q = F.param("q")
G = build_gab(a_q(F, q), a_q(F, q))
print(G.name, "has", len(G.relations), "relations; reduction system:", end=" ")
G.reduction_system()
print(G.system_kind)

for f in (comultiplication(G), counit(G), antipode(G)):
    print(verify_structural_map(f).summary())
print(verify_hopf_identities(G).summary())

P = ScalarMatrix(F, [[F(1), F(2)], [F(0), F(1)]])
Q = ScalarMatrix(F, [[F(2), F(1)], [F(1), F(1)]])
for spec in (congruence_morphism(G, P, Q), inversion_morphism(G), hopf_inversion_morphism(G, Q)):
    print(verify_morphism(spec).summary())

Fi = ScalarField(("q",), BaseField.GAUSSIAN_RATIONALS)
cert = verify_star_structure(a_q(Fi, Fi.param("q")))
print(cert.summary(), f"(lambda = {cert.info['lambda']}, {cert.info['lambda_status']})")
