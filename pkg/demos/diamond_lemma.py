"""
Confluence of the normal presentation of G(A_q, A_q | A_p1, A_p2).

Builds the oriented rules for ``(C, D) = (A_p1, A_p2)`` with ``p1 p2 = q^2``,
lists every ambiguity with its resolution, then adds ``d^-1`` and checks
again.  The irreducible words of length <= 2 form a basis of that part of
the algebra.
"""

from __future__ import annotations

from gl2deform.ncpoly import NCPoly, d, format_ncpoly, format_word, x
from gl2deform.quantum import a_q, build_appendix_system, extend_with_localization
from gl2deform.rewrite import check_diamond, irreducible_words, normal_form
from gl2deform.scalar import ScalarField

F = ScalarField(("p1", "q"))
q, p1 = F.param("q"), F.param("p1")
C, D = a_q(F, p1), a_q(F, q * q / p1)

system = build_appendix_system(q, C, D)
print("rules:")
for r in system.rules:
    print(f"  {r.label:12} {format_word(r.lhs):8} -> {format_ncpoly(r.rhs)}")

report = check_diamond(system)
print("\n" + report.summary())
for cert in report.certificates:
    print(f"  {cert.ambiguity.describe(system)}")
    print(f"      both sides -> {format_ncpoly(cert.left_normal_form)}")

words = irreducible_words(system, 2)
print(f"\n{len(words)} irreducible words of length <= 2:")
print("  " + ", ".join(format_word(w) for w in words))

# d never creates a zero: d*w stays irreducible
w = (x(1, 2), x(2, 2), x(1, 1))
print("\nNF(x12*x22*x11 * d) =", format_ncpoly(normal_form(NCPoly.word(F, w + (d(),)), system).poly))

localized = extend_with_localization(system, q, C, D)
print("\nwith d^-1:", check_diamond(localized).summary())
