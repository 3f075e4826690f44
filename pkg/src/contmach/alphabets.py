"""Countable question/answer alphabets, finite sub-functions, and name oracles.

A name space is the set of total functions from a question alphabet Q into an
answer alphabet A.  Names ("oracles") are plain callables; finite
sub-functions are ordered lists of question/answer pairs with first-match
lookup, so duplicated questions are harmless and transcripts can simply be
appended to.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

EqFn = Callable[[object, object], bool]
NameOracle = Callable[[object], object]

#: Canonical element of the one-point question alphabet.
STAR = "*"


class _OptNone:
    """The "no answer" element of an optional answer alphabet.

    Deliberately distinct from Python ``None``, which machines use for "no
    output at this effort".  Equality is identity; there is exactly one
    instance, ``OPT_NONE``.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "OPT_NONE"


OPT_NONE = _OptNone()


@dataclass(frozen=True)
class Alphabet:
    """A countable set with enumeration, decidable equality and a default.

    ``enumerate`` must reach every element tests care about; ``index_of`` is
    the optional inverse and is present for all alphabets shipped here.
    """

    name: str
    enumerate: Callable[[int], object]
    default: object
    eq: EqFn = operator.eq
    index_of: Optional[Callable[[object], int]] = None

    def prefix(self, count: int) -> list:
        return [self.enumerate(i) for i in range(count)]


# ---------------------------------------------------------------------------
# Shipped alphabets


def one_point_alphabet() -> Alphabet:
    return Alphabet("one_point", lambda i: STAR, STAR, index_of=lambda e: 0)


def booleans_alphabet() -> Alphabet:
    values = (False, True)
    return Alphabet("booleans", lambda i: values[i], False,
                    index_of=lambda b: int(b))


def naturals_alphabet() -> Alphabet:
    return Alphabet("naturals", lambda i: i, 0, index_of=lambda n: n)


def _calkin_wilf(index: int) -> Fraction:
    # Positive rationals; the binary digits of the 1-based index after the
    # leading 1 encode the path from the root 1/1.
    num, den = 1, 1
    for bit in bin(index)[3:]:
        if bit == "1":
            num += den
        else:
            den += num
    return Fraction(num, den)


def _calkin_wilf_index(value: Fraction) -> int:
    num, den = value.numerator, value.denominator
    bits = []
    while (num, den) != (1, 1):
        if num > den:
            bits.append("1")
            num -= den
        else:
            bits.append("0")
            den -= num
    return int("1" + "".join(reversed(bits)), 2)


def _rational_at(i: int) -> Fraction:
    if i == 0:
        return Fraction(0)
    value = _calkin_wilf((i + 1) // 2)
    return value if i % 2 == 1 else -value


def _rational_index(x) -> int:
    x = Fraction(x)
    if x == 0:
        return 0
    k = _calkin_wilf_index(abs(x))
    return 2 * k - 1 if x > 0 else 2 * k


def rationals_alphabet() -> Alphabet:
    return Alphabet("rationals", _rational_at, Fraction(0),
                    index_of=_rational_index)


def opt_alphabet(base: Alphabet) -> Alphabet:
    """Adjoin OPT_NONE to ``base``; index 0 is OPT_NONE, the rest shift up.

    The encoding is flat (elements are OPT_NONE or bare base elements), so
    the base alphabet must not itself contain OPT_NONE.
    """
    if base.default is OPT_NONE:
        raise ValueError("cannot iterate the optional construction: "
                         "base alphabet already contains OPT_NONE")

    def enum(i: int):
        return OPT_NONE if i == 0 else base.enumerate(i - 1)

    def eq(a, b) -> bool:
        if a is OPT_NONE or b is OPT_NONE:
            return a is b
        return base.eq(a, b)

    index = None
    if base.index_of is not None:
        index = lambda e: 0 if e is OPT_NONE else base.index_of(e) + 1
    return Alphabet(f"opt_{base.name}", enum, OPT_NONE, eq, index)


def _cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _cantor_unpair(k: int) -> tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    y = k - w * (w + 1) // 2
    return w - y, y


def pair_alphabet(left: Alphabet, right: Alphabet) -> Alphabet:
    """Cartesian product enumerated along Cantor's zigzag."""

    def enum(i: int):
        x, y = _cantor_unpair(i)
        return (left.enumerate(x), right.enumerate(y))

    def eq(a, b) -> bool:
        return left.eq(a[0], b[0]) and right.eq(a[1], b[1])

    index = None
    if left.index_of is not None and right.index_of is not None:
        index = lambda e: _cantor_pair(left.index_of(e[0]), right.index_of(e[1]))
    return Alphabet(f"{left.name}_x_{right.name}", enum,
                    (left.default, right.default), eq, index)


# ---------------------------------------------------------------------------
# Finite sub-functions


@dataclass(frozen=True)
class FiniteFunction:
    """An ordered list of (question, answer) pairs.

    ``size`` counts list entries, not distinct questions; lookups return the
    answer of the first entry whose question matches.
    """

    entries: tuple = ()

    @property
    def size(self) -> int:
        return len(self.entries)

    def questions(self) -> tuple:
        return tuple(q for q, _ in self.entries)

    def append_pairs(self, pairs: Sequence) -> "FiniteFunction":
        return FiniteFunction(self.entries + tuple(pairs))


def lookup(finite_fn: FiniteFunction, question, eq: EqFn = operator.eq):
    """First-match lookup; returns None when the question is unbound."""
    for bound, answer in finite_fn.entries:
        if eq(bound, question):
            return answer
    return None


def extend_with_default(finite_fn: FiniteFunction, default_answer,
                        eq: EqFn = operator.eq) -> NameOracle:
    """Totalize a finite sub-function by answering everything else with a default."""

    def oracle(question):
        for bound, answer in finite_fn.entries:
            if eq(bound, question):
                return answer
        return default_answer

    return oracle


def restriction_eq(phi: NameOracle, psi: NameOracle, questions: Sequence,
                   answer_eq: EqFn = operator.eq) -> bool:
    """Do the two oracles agree on every question in the list?"""
    return all(answer_eq(phi(q), psi(q)) for q in questions)


def sublist(part: Sequence, whole: Sequence, eq: EqFn = operator.eq) -> bool:
    """Membership-based inclusion; order and multiplicity are ignored."""
    return all(any(eq(p, w) for w in whole) for p in part)


def list_diff(items: Sequence, remove: Sequence, eq: EqFn = operator.eq) -> list:
    """Elements of ``items`` with no match in ``remove``; order and duplicates kept."""
    return [x for x in items if not any(eq(x, r) for r in remove)]


# ---------------------------------------------------------------------------
# Reproducible test oracles


def constant_oracle(value) -> NameOracle:
    return lambda question: value


def table_oracle(table: Sequence, fallback, eq: EqFn = operator.eq) -> NameOracle:
    """Total oracle backed by a first-match table with a constant fallback."""
    entries = tuple(table)

    def oracle(question):
        for bound, answer in entries:
            if eq(bound, question):
                return answer
        return fallback

    return oracle


def override_oracle(base: NameOracle, table: Sequence,
                    eq: EqFn = operator.eq) -> NameOracle:
    """Splice finitely many answers over a base oracle."""
    entries = tuple(table)

    def oracle(question):
        for bound, answer in entries:
            if eq(bound, question):
                return answer
        return base(question)

    return oracle


# ---------------------------------------------------------------------------
# Rational parsing and JSON-friendly value encoding


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an exact decimal literal; no floating point anywhere."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational: {text!r}") from exc


def format_rational(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def encode_value(value):
    """Encode an alphabet element as a JSON-compatible value.

    Rationals become canonical "p/q" strings, OPT_NONE becomes "none",
    booleans and naturals pass through, pairs become two-element lists.
    """
    if value is None:
        return None
    if value is OPT_NONE:
        return "none"
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (tuple, list)):
        return [encode_value(v) for v in value]
    if isinstance(value, str):
        return value
    return str(value)


def oracle_fixture(alphabet_name: str, table: Sequence, fallback) -> dict:
    """Serialize a table-backed oracle: {"alphabet": …, "table": …, "fallback": …}."""
    return {
        "alphabet": alphabet_name,
        "table": [[encode_value(q), encode_value(a)] for q, a in table],
        "fallback": encode_value(fallback),
    }


def oracle_from_fixture(doc: dict, decode_question: Callable,
                        decode_answer: Callable,
                        eq: EqFn = operator.eq) -> NameOracle:
    table = [(decode_question(q), decode_answer(a)) for q, a in doc["table"]]
    return table_oracle(table, decode_answer(doc["fallback"]), eq)
