"""The function-space encoding: dialogues between an oracle and an associate.

An associate is a total, deterministic callable on (finite sub-function,
output question) pairs that either asks for more input values (Query) or
commits to an output value (Answer).  Running the dialogue against an oracle
turns an associate into a machine; the reverse construction turns any machine
with a self-modulating modulus into an associate of its operator.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Union

from .alphabets import (EqFn, FiniteFunction, NameOracle, encode_value,
                        extend_with_default, list_diff)
from .machines import ContinuousMachine, _machine_fn, _modulus_fn


@dataclass(frozen=True)
class Query:
    questions: tuple


@dataclass(frozen=True)
class Answer:
    value: object


AssociateFn = Callable[[FiniteFunction, object], Union[Query, Answer]]


def _dialogue_state(associate: AssociateFn, phi: NameOracle, question,
                    rounds: int) -> FiniteFunction:
    # Grow the transcript by answering queries from phi; an Answer freezes it.
    state = FiniteFunction()
    for _ in range(rounds):
        step = associate(state, question)
        if isinstance(step, Answer):
            break
        state = state.append_pairs(tuple((q, phi(q)) for q in step.questions))
    return state


def dialogue_machine(associate: AssociateFn, in_space: str = "",
                     out_space: str = "") -> ContinuousMachine:
    """The machine that runs the dialogue for as many rounds as it has effort.

    Answers exactly when the associate commits within the effort budget; the
    modulus is the list of questions recorded in the transcript so far, which
    is self-modulating by construction (oracles agreeing on the transcript
    questions replay the same dialogue).
    """

    def machine(phi, effort, question):
        state = _dialogue_state(associate, phi, question, effort)
        step = associate(state, question)
        return step.value if isinstance(step, Answer) else None

    def modulus(phi, effort, question):
        return list(_dialogue_state(associate, phi, question, effort).questions())

    return ContinuousMachine(machine, modulus, in_space, out_space)


def machine_to_associate(machine_like, question_default, answer_default,
                         question_eq: EqFn = operator.eq,
                         use_first_listed_answer: bool = False) -> AssociateFn:
    """Build an associate of the given machine's operator.

    On a transcript of size s, pad the transcript into a total oracle with the
    default answer, then walk the efforts 0..s.  At each effort the modulus is
    inspected first: if it lists questions the transcript does not bind, ask
    for exactly those (the padding may have influenced the machine there, so
    its value must not be trusted and is not even computed).  Only when the
    modulus is fully bound is the machine consulted, and its answer — now
    determined by genuine oracle data — is final.  If every effort up to s is
    covered but silent, ask the default question: this grows the transcript,
    which is what buys the next effort level.

    ``use_first_listed_answer`` pads with the first answer recorded in the
    transcript instead of a fixed default (asking the default question first
    when the transcript is empty).
    """
    machine = _machine_fn(machine_like)
    modulus = _modulus_fn(machine_like)
    if modulus is None:
        raise ValueError("machine_to_associate needs a machine with a modulus")

    def associate(state: FiniteFunction, question):
        if use_first_listed_answer:
            if not state.entries:
                return Query((question_default,))
            padding = state.entries[0][1]
        else:
            padding = answer_default
        padded = extend_with_default(state, padding, question_eq)
        bound = state.questions()
        for effort in range(state.size + 1):
            needed = modulus(padded, effort, question)
            missing = list_diff(needed, bound, question_eq)
            if missing:
                return Query(tuple(missing))
            value = machine(padded, effort, question)
            if value is not None:
                return Answer(value)
        return Query((question_default,))

    return associate


# ---------------------------------------------------------------------------
# Observability


@dataclass(frozen=True)
class DialogueRound:
    size: int
    tag: str
    payload: object


@dataclass(frozen=True)
class DialogueTranscript:
    rounds: tuple
    answered: bool

    @property
    def final_answer(self):
        if self.answered:
            return self.rounds[-1].payload
        return None

    def to_json(self, encode: Callable = encode_value) -> dict:
        return {
            "rounds": [{"size": r.size, "tag": r.tag,
                        "payload": encode(r.payload)} for r in self.rounds],
            "answered": self.answered,
        }


def dialogue_trace(associate: AssociateFn, phi: NameOracle, question,
                   max_rounds: int) -> DialogueTranscript:
    """Record each consultation of the associate until it answers or the cap."""
    state = FiniteFunction()
    rounds = []
    for _ in range(max_rounds):
        step = associate(state, question)
        if isinstance(step, Answer):
            rounds.append(DialogueRound(state.size, "answer", step.value))
            return DialogueTranscript(tuple(rounds), True)
        rounds.append(DialogueRound(state.size, "query", list(step.questions)))
        state = state.append_pairs(tuple((q, phi(q)) for q in step.questions))
    return DialogueTranscript(tuple(rounds), False)
