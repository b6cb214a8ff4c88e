"""
Explicit isomorphisms between presentations and their certificates.

Congruence:   G(A,B|C,D) -> G(P^t A P, P^-1 B P^-t | Q^t C Q, Q^-1 D Q^-t),  x -> P y Q^-1
Inversion:    G(A,B|C,D) -> G(B^-1, A^-1 | D^-1, C^-1),  x -> y d^-1,  d^{+-1} -> d^{-+1}
Hopf twist:   G(A,B) -> G(Q^t B^-1 Q, Q^-1 A^-1 Q^-t),  x -> Q y d^-1 Q^-1,  d^{+-1} -> d^{-+1}
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ncpoly import NCMatrix, NCPoly, d, d_inv, generator_matrix, x
from ..scalar import ScalarMatrix
from .maps import AlgebraMap, Certificate, _check
from .presentation import Presentation, build_gabcd

__all__ = [
    "MorphismSpec", "matrix_map", "congruence_morphism", "inversion_morphism",
    "hopf_congruence_morphism", "hopf_inversion_morphism", "identity_morphism",
    "verify_morphism",
]


@dataclass
class MorphismSpec:
    map: AlgebraMap
    inverse: AlgebraMap | None = None

    @property
    def source(self) -> Presentation:
        return self.map.source

    @property
    def target(self) -> Presentation:
        return self.map.target


def matrix_map(kind: str, source: Presentation, target: Presentation, image: NCMatrix,
               d_image: NCPoly, dinv_image: NCPoly) -> AlgebraMap:
    images = {}
    for i in range(source.n_rows):
        for j in range(source.n_cols):
            images[x(i + 1, j + 1)] = image[i, j]
    images[d()] = d_image
    images[d_inv()] = dinv_image
    return AlgebraMap(kind, source, target, images)


def _gens(F):
    return NCPoly.gen(F, d()), NCPoly.gen(F, d_inv())


def congruence_morphism(source: Presentation, P: ScalarMatrix, Q: ScalarMatrix) -> MorphismSpec:
    """``psi(x) = P y Q^-1`` with inverse ``y -> P^-1 x Q``."""
    g = source.data
    F = source.field
    Pi, Qi = P.inverse(), Q.inverse()
    target = build_gabcd(P.T @ g.A @ P, Pi @ g.B @ Pi.T, Q.T @ g.C @ Q, Qi @ g.D @ Qi.T,
                         source.with_d_inv, name="G(P^tAP,P^-1BP^-t|Q^tCQ,Q^-1DQ^-t)")
    Y = generator_matrix(F, g.n, g.m)
    dp, dm = _gens(F)
    fwd = matrix_map("congruence", source, target, P @ Y @ Qi, dp, dm)
    back = matrix_map("congruence^-1", target, source, Pi @ Y @ Q, dp, dm)
    return MorphismSpec(fwd, back)


def inversion_morphism(source: Presentation) -> MorphismSpec:
    """``psi(x) = y d^-1``, ``psi(d^{+-1}) = d^{-+1}``; the inverse has the same shape."""
    g = source.data
    F = source.field
    target = build_gabcd(g.B.inverse(), g.A.inverse(), g.D.inverse(), g.C.inverse(),
                         True, name="G(B^-1,A^-1|D^-1,C^-1)")
    Y = generator_matrix(F, g.n, g.m)
    dp, dm = _gens(F)
    fwd = matrix_map("inversion", source, target, Y * dm, dm, dp)
    back = matrix_map("inversion^-1", target, source, Y * dm, dm, dp)
    return MorphismSpec(fwd, back)


def hopf_congruence_morphism(source: Presentation, P: ScalarMatrix) -> MorphismSpec:
    """``f(x) = P y P^-1`` from ``G(A,B)`` to ``G(P^tAP, P^-1BP^-t)``."""
    spec = congruence_morphism(source, P, P)
    spec.map.kind = "hopf congruence"
    spec.map.target.name = "G(P^tAP,P^-1BP^-t)"
    return spec


def hopf_inversion_morphism(source: Presentation, Q: ScalarMatrix) -> MorphismSpec:
    """``f(x) = Q y d^-1 Q^-1``, ``f(d^{+-1}) = d^{-+1}`` into ``G(Q^tB^-1Q, Q^-1A^-1Q^-t)``."""
    g = source.data
    F = source.field
    Qi = Q.inverse()
    Ai, Bi = g.A.inverse(), g.B.inverse()
    A2, B2 = Q.T @ Bi @ Q, Qi @ Ai @ Qi.T
    target = build_gabcd(A2, B2, A2, B2, True, name="G(Q^tB^-1Q,Q^-1A^-1Q^-t)")
    Y = generator_matrix(F, g.n, g.n)
    dp, dm = _gens(F)
    fwd = matrix_map("hopf inversion", source, target, Q @ (Y * dm) @ Qi, dm, dp)
    back = matrix_map("hopf inversion^-1", target, source, Qi @ (Y * dm) @ Q, dm, dp)
    return MorphismSpec(fwd, back)


def identity_morphism(source: Presentation) -> MorphismSpec:
    F = source.field
    images = {g: NCPoly.gen(F, g) for g in source.generators}
    f = AlgebraMap("identity", source, source, images)
    return MorphismSpec(f, f)


def verify_morphism(spec: MorphismSpec, bound: int = 8, check_inverse: bool = True) -> Certificate:
    """Relations map into the target ideal; optionally both composites fix generators."""
    f = spec.map
    cert = Certificate(f"{f.kind}: {f.source.name} -> {f.target.name}")
    for lab, r in zip(f.source.labels, f.source.relations):
        cert.add(_check(f.target, lab, f.apply(r), bound))
    if spec.inverse is not None and check_inverse:
        g = spec.inverse
        for lab, r in zip(g.source.labels, g.source.relations):
            cert.add(_check(g.target, f"inverse {lab}", g.apply(r), bound))
        for h in f.source.generators:
            p = NCPoly.gen(f.source.field, h)
            cert.add(_check(f.source, f"f^-1 f {h}", g.apply(f.apply(p)) - p, bound))
        for h in g.source.generators:
            p = NCPoly.gen(g.source.field, h)
            cert.add(_check(g.source, f"f f^-1 {h}", f.apply(g.apply(p)) - p, bound))
    cert.info["target_system"] = f.target.system_kind
    return cert
