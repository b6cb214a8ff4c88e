"""
Oriented reduction systems over the free algebra and the diamond lemma.

A rule ``W -> f`` replaces the word ``W`` (its *leading word*) by a
polynomial whose words are all strictly smaller in the degree-lex order.
Since that order is a well-order compatible with concatenation, every
sequence of reductions terminates.  When every overlap and inclusion
ambiguity resolves, Bergman's diamond lemma says the irreducible words form
a basis of the quotient algebra; :func:`check_diamond` produces that
certificate.

Normal forms use one fixed strategy so traces replay exactly: reduce the
largest reducible word, at its leftmost match, with the lowest-index rule.

Examples
========

>>> from gl2deform.scalar import ScalarField
>>> from gl2deform.ncpoly import NCPoly, parse_ncpoly
>>> F = ScalarField(["q"])
>>> sys = autoreduce([parse_ncpoly("x21*x11 - q*x11*x21", F)], F)
>>> str(normal_form(parse_ncpoly("x21*x21*x11", F), sys).poly)
'q^2*x11*x21*x21'
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import FuelExhaustedError
from .ncpoly import Gen, NCPoly, Word, format_ncpoly, format_word, word_key
from .scalar import ScalarField

__all__ = [
    "DEFAULT_FUEL", "RewriteRule", "ReductionSystem", "TraceStep", "Reduction",
    "normal_form", "normal_form_random", "replay",
    "Ambiguity", "ResolutionCertificate", "ConfluenceReport",
    "find_ambiguities", "resolve_ambiguity", "check_diamond",
    "irreducible_words", "autoreduce", "MembershipResult",
    "ideal_membership_search", "saturate", "VERIFIED_ZERO", "UNKNOWN", "OVERLAP", "INCLUSION",
]

DEFAULT_FUEL = 10 ** 6


class RewriteRule:
    """``lhs -> rhs`` with every word of ``rhs`` strictly below ``lhs``."""

    __slots__ = ("lhs", "rhs", "label")

    def __init__(self, lhs: Iterable[Gen], rhs: NCPoly, label: str = ""):
        self.lhs = tuple(lhs)
        self.rhs = rhs
        self.label = label
        top = word_key(self.lhs)
        for w in rhs.terms:
            if not word_key(w) < top:
                raise ValueError(
                    f"rule {format_word(self.lhs)} -> {rhs} is not order-decreasing "
                    f"(word {format_word(w)})")

    @classmethod
    def from_relation(cls, p: NCPoly, label: str = "") -> "RewriteRule":
        """Orient ``p = 0`` by its leading word."""
        lw = p.leading_word()
        c = p.terms[lw]
        rest = NCPoly(p.field, {w: v for w, v in p.terms.items() if w != lw}, _trusted=True)
        return cls(lw, (-rest).scale(c.inverse()), label)

    def relation(self) -> NCPoly:
        return NCPoly.word(self.rhs.field, self.lhs) - self.rhs

    def __eq__(self, other):
        if not isinstance(other, RewriteRule):
            return NotImplemented
        return self.lhs == other.lhs and self.rhs == other.rhs

    def __hash__(self):
        return hash((self.lhs, self.rhs))

    def __str__(self):
        return f"{format_word(self.lhs)} -> {self.rhs}"

    def __repr__(self):
        tag = f"{self.label}: " if self.label else ""
        return f"RewriteRule({tag}{self})"


class ReductionSystem:
    """An immutable list of rules with pairwise distinct left-hand sides."""

    def __init__(self, rules: Sequence[RewriteRule], field: ScalarField,
                 alphabet: Iterable[Gen] | None = None):
        self.rules = tuple(rules)
        self.field = field
        self._index: dict = {}
        for k, r in enumerate(self.rules):
            if r.rhs.field is not field:
                raise TypeError("rule over a different scalar field")
            if r.lhs in self._index:
                raise ValueError(f"two rules share the left-hand side {format_word(r.lhs)}")
            self._index[r.lhs] = k
        self._lengths = sorted({len(r.lhs) for r in self.rules})
        letters = set(alphabet or ())
        for r in self.rules:
            letters.update(r.lhs)
            letters.update(r.rhs.letters())
        self.alphabet = tuple(sorted(letters))
        self._match_cache: dict = {}

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, k):
        return self.rules[k]

    def rule_for(self, lhs: Word) -> int | None:
        return self._index.get(tuple(lhs))

    def extend(self, rules: Iterable[RewriteRule], alphabet: Iterable[Gen] = ()) -> "ReductionSystem":
        return ReductionSystem(self.rules + tuple(rules), self.field,
                               set(self.alphabet) | set(alphabet))

    def relations(self) -> list:
        return [r.relation() for r in self.rules]

    def first_match(self, w: Word):
        """``(position, rule_index)`` of the leftmost match, lowest rule; or None."""
        try:
            return self._match_cache[w]
        except KeyError:
            pass
        found = None
        n = len(w)
        for i in range(n + 1):
            best = None
            for L in self._lengths:
                if i + L > n:
                    break
                k = self._index.get(w[i:i + L])
                if k is not None and (best is None or k < best):
                    best = k
            if best is not None:
                found = (i, best)
                break
        self._match_cache[w] = found
        return found

    def all_matches(self, w: Word) -> list:
        out = []
        n = len(w)
        for i in range(n + 1):
            for L in self._lengths:
                if i + L > n:
                    break
                k = self._index.get(w[i:i + L])
                if k is not None:
                    out.append((i, k))
        return out

    def is_irreducible(self, w: Word) -> bool:
        return self.first_match(tuple(w)) is None

    def nf(self, p: NCPoly, fuel: int = DEFAULT_FUEL) -> NCPoly:
        return normal_form(p, self, fuel=fuel, record=False).poly

    def __repr__(self):
        return f"ReductionSystem({len(self.rules)} rules)"


@dataclass(frozen=True)
class TraceStep:
    rule: int
    word: Word
    position: int

    def to_json(self):
        return [self.rule, self.position]


@dataclass
class Reduction:
    poly: NCPoly
    trace: list = dc_field(default_factory=list)
    steps: int = 0


class _Desc:
    """Heap entry ordering words from largest to smallest."""

    __slots__ = ("key", "word")

    def __init__(self, word):
        self.word = word
        self.key = word_key(word)

    def __lt__(self, other):
        return self.key > other.key


def _apply(terms: dict, w: Word, pos: int, rule: RewriteRule, coeff) -> list:
    """Replace ``coeff*w`` in ``terms`` using ``rule`` at ``pos``; return new words."""
    del terms[w]
    left, right = w[:pos], w[pos + len(rule.lhs):]
    top = word_key(w)
    fresh = []
    for rw, rc in rule.rhs.terms.items():
        nw = left + rw + right
        assert word_key(nw) < top, "reduction step did not decrease the word"
        v = terms.get(nw)
        add = coeff * rc
        if v is None:
            terms[nw] = add
            fresh.append(nw)
        else:
            v = v + add
            if v:
                terms[nw] = v
            else:
                del terms[nw]
    return fresh


def normal_form(p: NCPoly, sys: ReductionSystem, *, fuel: int = DEFAULT_FUEL,
                record: bool = True) -> Reduction:
    """Fully reduce ``p`` with the deterministic strategy.

    Raises :class:`FuelExhaustedError` after ``fuel`` steps.
    """
    terms = dict(p.terms)
    heap = [_Desc(w) for w in terms]
    heapq.heapify(heap)
    trace = []
    steps = 0
    done = set()
    while heap:
        w = heapq.heappop(heap).word
        if w in done or w not in terms:
            continue
        m = sys.first_match(w)
        if m is None:
            done.add(w)
            continue
        if steps >= fuel:
            raise FuelExhaustedError(f"normal form needed more than {fuel} steps")
        steps += 1
        pos, k = m
        if record:
            trace.append(TraceStep(k, w, pos))
        for nw in _apply(terms, w, pos, sys.rules[k], terms[w]):
            heapq.heappush(heap, _Desc(nw))
    return Reduction(NCPoly(p.field, terms, _trusted=True), trace, steps)


def normal_form_random(p: NCPoly, sys: ReductionSystem, rng: random.Random, *,
                       fuel: int = DEFAULT_FUEL) -> NCPoly:
    """Reduce with random choices of word, position and rule at every step."""
    terms = dict(p.terms)
    steps = 0
    while True:
        reducible = [w for w in terms if sys.first_match(w) is not None]
        if not reducible:
            return NCPoly(p.field, terms, _trusted=True)
        if steps >= fuel:
            raise FuelExhaustedError(f"normal form needed more than {fuel} steps")
        steps += 1
        reducible.sort(key=word_key)
        w = rng.choice(reducible)
        pos, k = rng.choice(sys.all_matches(w))
        _apply(terms, w, pos, sys.rules[k], terms[w])


def replay(p: NCPoly, trace: Sequence[TraceStep], sys: ReductionSystem) -> NCPoly:
    """Re-run a recorded trace; each step must hit an existing term."""
    terms = dict(p.terms)
    for st in trace:
        rule = sys.rules[st.rule]
        if st.word not in terms:
            raise ValueError(f"trace step on absent word {format_word(st.word)}")
        if st.word[st.position:st.position + len(rule.lhs)] != rule.lhs:
            raise ValueError(f"rule {st.rule} does not match at position {st.position}")
        _apply(terms, st.word, st.position, rule, terms[st.word])
    return NCPoly(p.field, terms, _trusted=True)


# -- ambiguities ---------------------------------------------------------

OVERLAP = "Overlap"
INCLUSION = "Inclusion"


@dataclass(frozen=True)
class Ambiguity:
    """A word reducible by two rules.

    For an overlap, ``rule_a`` matches at 0 and ``rule_b`` at ``position``.
    For an inclusion, the witness is ``rule_a``'s lhs and ``rule_b`` matches
    inside it at ``position``.
    """

    kind: str
    rule_a: int
    rule_b: int
    witness: Word
    position: int

    def describe(self, sys: ReductionSystem) -> str:
        a, b = sys.rules[self.rule_a].lhs, sys.rules[self.rule_b].lhs
        return f"{self.kind}({format_word(a)}, {format_word(b)})"


def find_ambiguities(sys: ReductionSystem) -> list:
    """All overlap and inclusion ambiguities, ordered by (rule_a, rule_b, position)."""
    out = []
    rules = sys.rules
    for ia, ra in enumerate(rules):
        a = ra.lhs
        for ib, rb in enumerate(rules):
            b = rb.lhs
            if ia != ib and len(b) < len(a):
                for pos in range(len(a) - len(b) + 1):
                    if a[pos:pos + len(b)] == b:
                        out.append(Ambiguity(INCLUSION, ia, ib, a, pos))
            for k in range(min(len(a), len(b)) - 1, 0, -1):
                if a[-k:] == b[:k]:
                    out.append(Ambiguity(OVERLAP, ia, ib, a + b[k:], len(a) - k))
    out.sort(key=lambda m: (m.rule_a, m.rule_b, m.position, m.kind))
    return out


@dataclass
class ResolutionCertificate:
    ambiguity: Ambiguity
    left_normal_form: NCPoly
    right_normal_form: NCPoly
    left_trace: list
    right_trace: list

    @property
    def resolvable(self) -> bool:
        return self.left_normal_form == self.right_normal_form

    def check_replay(self, sys: ReductionSystem) -> bool:
        w = NCPoly.word(sys.field, self.ambiguity.witness)
        return (replay(w, self.left_trace, sys) == self.left_normal_form
                and replay(w, self.right_trace, sys) == self.right_normal_form)

    def to_json(self, sys: ReductionSystem) -> dict:
        a = self.ambiguity
        return {
            "kind": a.kind,
            "rule_a": a.rule_a,
            "rule_b": a.rule_b,
            "witness": format_word(a.witness),
            "position": a.position,
            "left_normal_form": format_ncpoly(self.left_normal_form),
            "right_normal_form": format_ncpoly(self.right_normal_form),
            "left_trace": [s.to_json() for s in self.left_trace],
            "right_trace": [s.to_json() for s in self.right_trace],
            "resolvable": self.resolvable,
        }


def resolve_ambiguity(amb: Ambiguity, sys: ReductionSystem, *,
                      fuel: int = DEFAULT_FUEL) -> ResolutionCertificate:
    w = amb.witness
    start = NCPoly.word(sys.field, w)
    sides = []
    for k, pos in ((amb.rule_a, 0), (amb.rule_b, amb.position)):
        terms = dict(start.terms)
        _apply(terms, w, pos, sys.rules[k], terms[w])
        first = TraceStep(k, w, pos)
        red = normal_form(NCPoly(sys.field, terms, _trusted=True), sys, fuel=fuel)
        sides.append((red.poly, [first] + red.trace))
    (lp, lt), (rp, rt) = sides
    return ResolutionCertificate(amb, lp, rp, lt, rt)


@dataclass
class ConfluenceReport:
    system: ReductionSystem
    certificates: list

    @property
    def confluent(self) -> bool:
        return all(c.resolvable for c in self.certificates)

    @property
    def resolved(self) -> int:
        return sum(c.resolvable for c in self.certificates)

    @property
    def failures(self) -> list:
        return [c for c in self.certificates if not c.resolvable]

    def summary(self) -> str:
        n = len(self.certificates)
        verdict = "confluent" if self.confluent else "NOT confluent"
        return f"ambiguities: {n}, resolved: {self.resolved} ({verdict})"

    def to_json(self) -> dict:
        sys = self.system
        return {
            "rules": [{"index": k, "label": r.label, "lhs": format_word(r.lhs),
                       "rhs": format_ncpoly(r.rhs)} for k, r in enumerate(sys.rules)],
            "ambiguities": [c.to_json(sys) for c in self.certificates],
            "counts": {
                "rules": len(sys.rules),
                "ambiguities": len(self.certificates),
                "overlaps": sum(c.ambiguity.kind == OVERLAP for c in self.certificates),
                "inclusions": sum(c.ambiguity.kind == INCLUSION for c in self.certificates),
                "resolved": self.resolved,
            },
            "verdict": "confluent" if self.confluent else "not_confluent",
            # diamond lemma: irreducible words form a basis of the quotient
            "irreducible_words_form_basis": self.confluent,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def check_diamond(sys: ReductionSystem, *, fuel: int = DEFAULT_FUEL) -> ConfluenceReport:
    certs = [resolve_ambiguity(a, sys, fuel=fuel) for a in find_ambiguities(sys)]
    return ConfluenceReport(sys, certs)


def irreducible_words(sys: ReductionSystem, max_len: int,
                      alphabet: Iterable[Gen] | None = None) -> list:
    """Words of length ``<= max_len`` with no rule lhs as a factor, ascending."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    letters = sorted(alphabet if alphabet is not None else sys.alphabet)
    if sys.rule_for(()) is not None:
        return []
    out = [()]
    level = [()]
    lengths = sys._lengths
    for _ in range(max_len):
        nxt = []
        for w in level:
            for g in letters:
                nw = w + (g,)
                # only factors ending at the new letter can be new matches
                if not any(0 < L <= len(nw) and sys.rule_for(nw[len(nw) - L:]) is not None
                           for L in lengths):
                    nxt.append(nw)
        out.extend(nxt)
        level = nxt
    return out


# -- building systems from relations ------------------------------------

def _insert(rules: list, p: NCPoly, field: ScalarField, label: str) -> bool:
    """Reduce ``p`` by ``rules`` and add it as a new rule if nonzero.

    Rules whose lhs becomes reducible are pulled out and re-inserted, so the
    list stays a valid system with distinct left-hand sides.
    """
    pending = [(p, label)]
    changed = False
    while pending:
        p, label = pending.pop()
        p = ReductionSystem(rules, field).nf(p)
        if not p:
            continue
        new = RewriteRule.from_relation(p, label)
        keep = []
        for r in rules:
            lw = r.lhs
            n, L = len(lw), len(new.lhs)
            if any(lw[i:i + L] == new.lhs for i in range(n - L + 1)):
                pending.append((r.relation(), r.label))
            else:
                keep.append(r)
        keep.append(new)
        rules[:] = keep
        changed = True
    return changed


def _interreduce(rules: list, field: ScalarField) -> list:
    out = []
    for k, r in enumerate(rules):
        others = ReductionSystem(rules[:k] + rules[k + 1:], field)
        out.append(RewriteRule(r.lhs, others.nf(r.rhs), r.label))
    return out


def autoreduce(relations: Iterable[NCPoly], field: ScalarField,
               alphabet: Iterable[Gen] = (), labels: Sequence[str] | None = None) -> ReductionSystem:
    """Orient and interreduce relations into a system generating the same ideal."""
    rules: list = []
    for k, p in enumerate(relations):
        _insert(rules, p, field, labels[k] if labels else f"r{k}")
    rules = _interreduce(rules, field)
    rules.sort(key=lambda r: word_key(r.lhs))
    return ReductionSystem(rules, field, alphabet)


VERIFIED_ZERO = "VerifiedZero"
UNKNOWN = "Unknown"


@dataclass
class MembershipResult:
    """Outcome of a membership search; ``Unknown`` is never a disproof."""

    verdict: str
    residue: NCPoly
    system: ReductionSystem
    rounds: int = 0
    trace: list = dc_field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED_ZERO

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "residue": format_ncpoly(self.residue),
            "saturation_rounds": self.rounds,
            "rules_used": len(self.system.rules),
            "trace": [s.to_json() for s in self.trace],
        }


def _critical_pairs(sys: ReductionSystem, max_degree: int) -> list:
    out = []
    for amb in find_ambiguities(sys):
        if len(amb.witness) > max_degree:
            continue
        c = resolve_ambiguity(amb, sys)
        if not c.resolvable:
            out.append(c.left_normal_form - c.right_normal_form)
    return out


def saturate(sys: ReductionSystem, rounds: int, max_degree: int) -> tuple:
    """Add reduced critical pairs of bounded degree for up to ``rounds`` rounds.

    Every added rule is a difference of two reductions of one word, hence
    lies in the ideal; the result presents the same quotient.  Returns the
    new system and the number of rounds that added something.
    """
    rules = list(sys.rules)
    used = 0
    for _ in range(rounds):
        cur = ReductionSystem(rules, sys.field, sys.alphabet)
        new = _critical_pairs(cur, max_degree)
        changed = False
        for p in new:
            changed |= _insert(rules, p, sys.field, "cp")
        if not changed:
            break
        used += 1
    rules = _interreduce(rules, sys.field)
    return ReductionSystem(rules, sys.field, sys.alphabet), used


def ideal_membership_search(p: NCPoly, relations: Sequence[NCPoly] | ReductionSystem,
                            bound: int = 8, *, max_degree: int | None = None) -> MembershipResult:
    """Try to certify that ``p`` lies in the two-sided ideal of ``relations``.

    The relations are first interreduced into an oriented system; if ``p``
    does not reduce to zero, bounded critical-pair saturation adds further
    ideal elements for at most ``bound`` rounds, considering overlap words
    of length at most ``max_degree``.  Only ideal elements are ever
    subtracted, so ``VerifiedZero`` is a sound certificate.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    F = p.field
    if isinstance(relations, ReductionSystem):
        sys = relations
    else:
        sys = autoreduce(relations, F, alphabet=p.letters())
    red = normal_form(p, sys)
    if not red.poly:
        return MembershipResult(VERIFIED_ZERO, red.poly, sys, 0, red.trace)
    if max_degree is None:
        top = max((len(r.lhs) for r in sys.rules), default=1)
        max_degree = max(p.degree(), top) + 1
    cur = sys
    for rnd in range(1, bound + 1):
        nxt, used = saturate(cur, 1, max_degree)
        red = normal_form(p, nxt)
        if not red.poly:
            return MembershipResult(VERIFIED_ZERO, red.poly, nxt, rnd, red.trace)
        if not used:
            break
        cur = nxt
    return MembershipResult(UNKNOWN, red.poly, cur, rnd)
