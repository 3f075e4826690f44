"""Concrete exact-real realizers, a finite multifunction algebra, and checks.

All real-number arithmetic is exact rational arithmetic; no floating point
appears anywhere on a correctness path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .alphabets import OPT_NONE, NameOracle, encode_value, parse_rational
from .machines import ContinuousMachine, evaluate
from .spaces import RepresentedSpace


# ---------------------------------------------------------------------------
# Inversion on rationally approximated reals


def inversion_machine() -> ContinuousMachine:
    """Multiplicative inverse, driven by a positivity margin at scale 2^-n.

    At effort n the machine asks for a 2^-n approximation; if its absolute
    value exceeds 2^-n the margin delta is positive, the input is certainly
    nonzero, and one more question at accuracy min(delta, eps*delta^2)/2
    pins the answer within eps.  Otherwise it stays silent.  The operator is
    properly multivalued: different efforts may return different answers.

    On any name of a nonzero real the queried approximation is at least
    delta/2 away from zero, so the division is safe; a zero denominator can
    only come from an oracle that is not a name of a nonzero real and
    surfaces as a ZeroDivisionError.
    """

    def query_point(phi, effort, accuracy):
        scale = Fraction(1, 2 ** effort)
        margin = abs(Fraction(phi(scale))) - scale
        if margin <= 0:
            return scale, None
        return scale, min(margin, accuracy * margin * margin) / 2

    def machine(phi, effort, accuracy):
        _, point = query_point(phi, effort, accuracy)
        if point is None:
            return None
        return 1 / Fraction(phi(point))

    def modulus(phi, effort, accuracy):
        scale, point = query_point(phi, effort, accuracy)
        if point is None:
            return [scale]
        return [scale, point]

    return ContinuousMachine(machine, modulus, "rational_reals", "rational_reals")


# ---------------------------------------------------------------------------
# Sign into the Kleeneans


def sign_machine() -> ContinuousMachine:
    """Kleenean sign of a rationally approximated real.

    The output name's entry at index k is settled as soon as the 2^-k
    approximation clears three times the scale, which also forces the output
    names to be monotone.  The machine is total and effort-independent: the
    entry value itself carries the partial information.
    """

    def machine(phi, effort, index):
        scale = Fraction(1, 2 ** index)
        approx = Fraction(phi(scale))
        if abs(approx) > 3 * scale:
            return approx > 0
        return OPT_NONE

    def modulus(phi, effort, index):
        return [Fraction(1, 2 ** index)]

    return ContinuousMachine(machine, modulus, "rational_reals", "kleenean_names")


# ---------------------------------------------------------------------------
# Name corpus


@dataclass(frozen=True)
class CorpusSample:
    point: Fraction
    name: NameOracle
    kind: str


def exact_name(x) -> NameOracle:
    """The name that answers every accuracy question exactly."""
    value = Fraction(x)
    return lambda accuracy: value


def grid_name(x) -> NameOracle:
    """Round to the nearest multiple of half the requested accuracy.

    Exercises name non-uniqueness: answers depend on the question but stay
    within a quarter of it.  Non-positive questions are answered exactly to
    keep the name total.
    """
    value = Fraction(x)

    def oracle(accuracy):
        accuracy = Fraction(accuracy)
        if accuracy <= 0:
            return value
        unit = accuracy / 2
        return unit * math.floor(value / unit + Fraction(1, 2))

    return oracle


_NAME_BUILDERS = {"exact": exact_name, "grid": grid_name}


def corpus_sample(point, kind: str) -> CorpusSample:
    point = Fraction(point)
    return CorpusSample(point, _NAME_BUILDERS[kind](point), kind)


def standard_corpus(points: Sequence, kinds: Sequence[str] = ("exact", "grid")):
    return [corpus_sample(p, k) for p in points for k in kinds]


def load_corpus(doc) -> list:
    """Corpus from a JSON array of {"point": "p/q", "name_kind": …} records."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return [corpus_sample(parse_rational(entry["point"]), entry["name_kind"])
            for entry in doc]


#: Nonzero points exercised by the inversion checks (exact and grid names).
INVERSION_POINTS = (Fraction(2), Fraction(-3), Fraction(1, 3), Fraction(7, 5),
                    Fraction(1, 10 ** 6))

#: Points exercised by the sign checks; zero names bottom.
SIGN_POINTS = (Fraction(1), Fraction(-1), Fraction(1, 1000),
               Fraction(-1, 1000), Fraction(0))


# ---------------------------------------------------------------------------
# Finite multifunctions


@dataclass(frozen=True)
class FiniteMultifunction:
    """Explicit assignment of finite value sets to finitely many points."""

    source: tuple
    table: Mapping

    @staticmethod
    def from_pairs(source: Sequence, pairs) -> "FiniteMultifunction":
        return FiniteMultifunction(tuple(source), dict(pairs))

    def values(self, point) -> tuple:
        return tuple(self.table.get(point, ()))

    def domain(self) -> tuple:
        return tuple(x for x in self.source if self.table.get(x))


def tightens(tighter: FiniteMultifunction, looser: FiniteMultifunction) -> bool:
    """Every point the looser constrains, the tighter constrains harder.

    The looser's domain must be contained in the tighter's, and on it the
    tighter's value sets must be subsets.
    """
    for point in looser.source:
        allowed = looser.values(point)
        if not allowed:
            continue
        chosen = tighter.values(point)
        if not chosen:
            return False
        if not set(chosen) <= set(allowed):
            return False
    return True


def mf_compose(outer: FiniteMultifunction,
               inner: FiniteMultifunction) -> FiniteMultifunction:
    """Directed composition: defined only where every inner value is usable."""
    outer_dom = set(outer.domain())
    table = {}
    for point in inner.source:
        mids = inner.values(point)
        if mids and all(m in outer_dom for m in mids):
            collected = []
            for mid in mids:
                for value in outer.values(mid):
                    if value not in collected:
                        collected.append(value)
            table[point] = tuple(collected)
        else:
            table[point] = ()
    return FiniteMultifunction(inner.source, table)


def chooses_through(partial_map: Mapping, mf: FiniteMultifunction) -> bool:
    """Is the partial map defined and eligible wherever the multifunction is?"""
    for point in mf.domain():
        if point not in partial_map:
            return False
        if partial_map[point] not in mf.values(point):
            return False
    return True


# ---------------------------------------------------------------------------
# Realizer checking


@dataclass(frozen=True)
class RealizerReport:
    samples: int
    failures: tuple
    undecided: tuple

    def to_json(self) -> dict:
        return {"samples": self.samples,
                "failures": list(self.failures),
                "undecided": list(self.undecided)}


def check_realizer(machine_like, point_map: Callable, space_in: RepresentedSpace,
                   space_out: RepresentedSpace, samples: Sequence[CorpusSample],
                   fuel_cap: int, questions: Optional[Sequence] = None,
                   schedule: str = "linear") -> RealizerReport:
    """Check that the machine maps names of x to names of point_map(x).

    For spaces with a per-answer correctness predicate, every sampled output
    question is evaluated and its answer judged in isolation.  Otherwise the
    machine's answers over the space's question sample are assembled into a
    candidate name and judged as a whole.  Fuel exhaustion lands in the
    undecided list, never among the failures.
    """
    if questions is None:
        questions = space_out.test_questions
    failures = []
    undecided = []
    for sample in samples:
        target = point_map(sample.point)
        answers = {}
        incomplete = False
        for question in questions:
            result = evaluate(machine_like, sample.name, question, fuel_cap,
                              schedule)
            if result is None:
                undecided.append({"point": encode_value(sample.point),
                                  "name_kind": sample.kind,
                                  "question": encode_value(question)})
                incomplete = True
                continue
            answers[question] = result.value
            if space_out.answer_ok is not None:
                if not space_out.answer_ok(target, question, result.value):
                    failures.append({"point": encode_value(sample.point),
                                     "name_kind": sample.kind,
                                     "question": encode_value(question),
                                     "answer": encode_value(result.value)})
        if space_out.answer_ok is None and not incomplete:
            candidate = lambda q, table=answers: table[q]
            if not space_out.is_name(candidate, target):
                failures.append({"point": encode_value(sample.point),
                                 "name_kind": sample.kind,
                                 "question": "name_check",
                                 "answer": [encode_value(answers[q])
                                            for q in questions]})
    return RealizerReport(len(samples), tuple(failures), tuple(undecided))
