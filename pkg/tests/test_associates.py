import itertools
from fractions import Fraction

import pytest

from _families import all_small_oracles, monotone_threshold, ThresholdSpec
from contmach import (Answer, ContinuousMachine, FiniteFunction, Query,
                      constant_oracle, dialogue_machine, dialogue_trace,
                      evaluate, exact_name, grid_name, in_F_M,
                      inversion_machine, lookup, machine_to_associate,
                      override_oracle, sign_machine, use_first)


def constant_answer_associate(value):
    return lambda state, question: Answer(value)


def head_associate(question0):
    def associate(state, question):
        found = lookup(state, question0)
        if found is None:
            return Query((question0,))
        return Answer(found)
    return associate


def divergent_associate(question0):
    return lambda state, question: Query((question0,))


# ---------------------------------------------------------------------------
# dialogue_machine


def test_zero_query_associate():
    cm = dialogue_machine(constant_answer_associate("a"))
    assert cm.machine(constant_oracle(0), 0, "q") == "a"
    assert cm.modulus(constant_oracle(0), 0, "q") == []


def test_head_associate_two_step_dialogue():
    cm = dialogue_machine(head_associate("q0"))
    phi = constant_oracle(42)
    assert cm.machine(phi, 0, "q") is None
    assert cm.machine(phi, 1, "q") == 42
    assert cm.modulus(phi, 1, "q") == ["q0"]


def test_divergent_associate_accumulates_questions():
    cm = dialogue_machine(divergent_associate("q0"))
    phi = constant_oracle(3)
    for effort in range(6):
        assert cm.machine(phi, effort, "q") is None
        assert cm.modulus(phi, effort, "q") == ["q0"] * effort


def test_dialogue_modulus_self_modulation_by_perturbation():
    cm = dialogue_machine(head_associate("q0"))
    phi = constant_oracle(1)
    # Changing the oracle off the recorded transcript changes nothing.
    perturbed = override_oracle(phi, [("elsewhere", 99)])
    for effort in range(4):
        assert (cm.modulus(phi, effort, "q")
                == cm.modulus(perturbed, effort, "q"))
        assert (cm.machine(phi, effort, "q")
                == cm.machine(perturbed, effort, "q"))


def test_dialogue_machines_freeze_after_answering():
    cm = dialogue_machine(head_associate("q0"))
    phi = constant_oracle(42)
    for effort in range(2, 7):
        assert cm.machine(phi, effort, "q") == 42
        assert cm.modulus(phi, effort, "q") == ["q0"]


# ---------------------------------------------------------------------------
# machine_to_associate


def oblivious_machine(value="a"):
    return ContinuousMachine(lambda phi, n, q: value, lambda phi, n, q: [])


def echo_machine(answer_on_default):
    # Answers with the oracle's value at question 0; the variant controls
    # whether the all-default oracle satisfies the answering guard.
    def machine(phi, effort, question):
        if not answer_on_default and phi(0) == 0:
            return None
        return phi(0)

    return ContinuousMachine(machine, lambda phi, n, q: [0])


def test_associate_of_oblivious_machine_answers_immediately():
    associate = machine_to_associate(oblivious_machine(), 0, 0)
    assert associate(FiniteFunction(), "q") == Answer("a")


def test_associate_queries_before_trusting_padded_data():
    # Both echo variants must ask for question 0 on the empty transcript:
    # the modulus is uncovered, so the machine's output on padded data is
    # not consulted, whether or not it would answer.
    for variant in (True, False):
        associate = machine_to_associate(echo_machine(variant), 9, 0)
        assert associate(FiniteFunction(), "q") == Query((0,))
        bound = FiniteFunction(((0, 5),))
        assert associate(bound, "q") == Answer(5)


def test_associate_case_selection_exhaustive_two_point():
    # Exhaustive over transcripts of size <= 2 with answers in {0, 5}:
    # uncovered modulus asks, covered-and-answering answers, and a covered
    # but silent machine falls back to the default question.
    entries = [(0, 0), (0, 5)]
    transcripts = [FiniteFunction(c) for n in range(3)
                   for c in itertools.product(entries, repeat=n)]
    for variant in (True, False):
        associate = machine_to_associate(echo_machine(variant), 9, 0)
        for state in transcripts:
            step = associate(state, "q")
            if state.size == 0:
                assert step == Query((0,))
                continue
            first_answer = state.entries[0][1]
            if variant or first_answer != 0:
                assert step == Answer(first_answer)
            else:
                assert step == Query((9,))


def test_associate_stalls_with_default_question_when_covered_but_silent():
    silent = ContinuousMachine(lambda phi, n, q: None, lambda phi, n, q: [])
    associate = machine_to_associate(silent, "qd", 0)
    assert associate(FiniteFunction(), "q") == Query(("qd",))
    grown = FiniteFunction((("qd", 0), ("qd", 0)))
    assert associate(grown, "q") == Query(("qd",))


def test_associate_query_preserves_modulus_order():
    cm = ContinuousMachine(lambda phi, n, q: None,
                           lambda phi, n, q: [3, 1, 2, 1])
    associate = machine_to_associate(cm, 0, 0)
    assert associate(FiniteFunction(((1, 0),)), "q") == Query((3, 2))


def test_associate_first_listed_answer_variant():
    # Padding comes from the transcript's first recorded answer.
    def machine(phi, effort, question):
        return phi(1)

    cm = ContinuousMachine(machine, lambda phi, n, q: [1])
    associate = machine_to_associate(cm, 0, 99, use_first_listed_answer=True)
    assert associate(FiniteFunction(), "q") == Query((0,))
    state = FiniteFunction(((0, 7),))
    assert associate(state, "q") == Query((1,))
    state = state.append_pairs(((1, 8),))
    assert associate(state, "q") == Answer(8)


def test_associate_effort_is_bounded_by_transcript_size():
    mm = monotone_threshold(ThresholdSpec(0, 1, base=2, spread=1, salt=0))
    associate = machine_to_associate(mm, 0, 0)
    # Threshold 2 machine: the dialogue needs the transcript to grow to
    # size 2 before the machine is allowed enough effort to answer.
    phi = all_small_oracles()[14]
    trace = dialogue_trace(associate, phi, 0, 10)
    assert trace.answered
    assert trace.final_answer == mm.machine(phi, 2, 0)


def test_dialogue_progress_on_finite_alphabets():
    # Wherever the machine eventually answers, the dialogue answers too, and
    # every query round either binds fresh questions or is the default
    # question buying one more effort level.
    from contmach import list_diff

    specs = [ThresholdSpec(0, 1, base=2, spread=2, salt=1),
             ThresholdSpec(2, 0, base=1, spread=3, salt=0, dead_stride=4),
             ThresholdSpec(1, 1, base=4, spread=1, salt=2)]
    default_question = 0
    for spec in specs:
        mm = monotone_threshold(spec)
        associate = machine_to_associate(mm, default_question, 0)
        for phi in all_small_oracles():
            for question in range(3):
                answers = any(mm.machine(phi, n, question) is not None
                              for n in range(9))
                trace = dialogue_trace(associate, phi, question, 16)
                assert trace.answered == answers
                bound = []
                for r in trace.rounds[:-1]:
                    fresh = list_diff(r.payload, bound)
                    assert fresh == list(r.payload) or r.payload == [default_question]
                    bound.extend(r.payload)
                if answers:
                    assert trace.final_answer == evaluate(
                        mm, phi, question, 16).value


# ---------------------------------------------------------------------------
# dialogue_trace


def test_trace_zero_query():
    trace = dialogue_trace(constant_answer_associate("a"), constant_oracle(0),
                           "q", 8)
    assert trace.answered and len(trace.rounds) == 1
    assert trace.rounds[0].tag == "answer"


def test_trace_head_associate():
    trace = dialogue_trace(head_associate("q0"), constant_oracle(5), "q", 8)
    assert trace.answered and len(trace.rounds) == 2
    assert trace.rounds[0].tag == "query"
    assert trace.final_answer == 5


def test_trace_respects_round_cap():
    trace = dialogue_trace(divergent_associate("q0"), constant_oracle(0), "q", 5)
    assert not trace.answered
    assert len(trace.rounds) == 5
    assert all(r.tag == "query" for r in trace.rounds)
    doc = trace.to_json()
    assert doc["answered"] is False
    assert [r["size"] for r in doc["rounds"]] == [0, 1, 2, 3, 4]


# ---------------------------------------------------------------------------
# Round trips through the shipped machines


def test_round_trip_inversion_answers_are_operator_values():
    mm = use_first(inversion_machine())
    associate = machine_to_associate(mm, Fraction(0), Fraction(0))
    for name in (exact_name(Fraction(7, 5)), grid_name(Fraction(-3))):
        for eps in (Fraction(1), Fraction(1, 2 ** 10)):
            trace = dialogue_trace(associate, name, eps, 64)
            assert trace.answered
            membership = in_F_M(mm, name, constant_oracle(trace.final_answer),
                                [eps], 2 ** 10)
            assert membership.holds


def test_round_trip_through_dialogue_machine():
    mm = use_first(inversion_machine())
    associate = machine_to_associate(mm, Fraction(0), Fraction(0))
    rebuilt = dialogue_machine(associate)
    phi = exact_name(Fraction(2))
    result = evaluate(rebuilt, phi, Fraction(1), 16)
    assert result is not None
    assert result.value == Fraction(1, 2)


def test_round_trip_sign_machine():
    mm = use_first(sign_machine())
    associate = machine_to_associate(mm, Fraction(0), Fraction(0))
    phi = exact_name(Fraction(1))
    for index in (0, 1, 2, 6):
        trace = dialogue_trace(associate, phi, index, 8)
        assert trace.answered
        assert trace.final_answer == mm.machine(phi, 0, index)
