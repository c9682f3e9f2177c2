import math
import random

import pytest

from conftest import corpus, make_a1, make_a2, naive_moore
from wfamin.automaton import WeightedAutomaton, augment
from wfamin.generators import fibonacci_automaton, railroad_automaton, random_automaton
from wfamin.partition import Partition, coarser_or_equal
from wfamin.quotient import brute_force_coarsest_congruence, is_congruence, quotient
from wfamin.refine import (
    NotSimplifiable, dsa_minimise, fpcsa_minimise, global_signature_pass, minimise,
    pcsa_minimise, predecessor_signatures, signature, simplifiable_signatures, true_classes,
)
from wfamin.semiring import BOOLEAN, INTEGERS, MIN_PLUS

P_, Q_, R_ = 0, 1, 2
I1, T1 = 3, 4
A1_RESULT = [(0,), (1, 2), (3,), (4,)]


def test_signature_goldens(aug1):
    assert signature(aug1, P_, [P_, Q_, R_]) == {"a": -1, "b": 1}
    assert signature(aug1, I1, [P_, Q_, R_]) == {"$": 3}
    assert signature(aug1, P_, []) == {}
    # q reads a into p and r, b into q and r
    assert signature(aug1, Q_, [P_, Q_, R_]) == {"a": 2, "b": 1}


def test_global_signatures_round_one(aug1):
    P = Partition.from_classes(aug1.size, [[I1], [P_, Q_, R_], [T1]])
    d2, d3 = P.class_id(P_), P.class_id(T1)
    sigs = global_signature_pass(aug1, P.block_of[P_], P)
    assert dict(sigs[Q_]) == {(d2, "a"): 2, (d2, "b"): 1, (d3, "$"): 1}
    assert dict(sigs[P_]) == {(d2, "a"): -1, (d2, "b"): 1}
    assert sigs[Q_] == sigs[R_]
    assert sigs[P_] != sigs[Q_]


def test_global_signatures_round_two(aug1):
    P = Partition.from_classes(aug1.size, [[I1], [P_], [Q_, R_], [T1]])
    d21, d22, d3 = P.class_id(P_), P.class_id(Q_), P.class_id(T1)
    sigs = global_signature_pass(aug1, P.block_of[Q_], P)
    assert sigs[Q_] == sigs[R_]
    assert dict(sigs[Q_]) == {(d21, "a"): 1, (d22, "a"): 1, (d22, "b"): 1, (d3, "$"): 1}


def test_predecessor_signatures_drop_cancelled():
    aut = WeightedAutomaton(INTEGERS, "a", 3)
    aut.add_transition(0, "a", 1, 1)
    aut.add_transition(0, "a", -1, 2)
    aut.add_transition(1, "a", 2, 2)
    aug = augment(aut)
    sigs = predecessor_signatures(aug, [1, 2])
    assert sigs[0] == {}
    assert sigs[1] == {"a": 2}


@pytest.mark.parametrize("algo", [dsa_minimise, pcsa_minimise, fpcsa_minimise])
def test_a1_all_algorithms(aug1, algo):
    P = algo(aug1)
    P.check()
    assert P.classes() == A1_RESULT


def test_dsa_a1_counts(aug1):
    st = dsa_minimise(aug1).stats
    assert st.rounds == 2 and st.splits == 1


def test_pcsa_trace(aug1):
    seen = []
    pcsa_minimise(aug1, hook=lambda P: seen.append(P.classes()))
    # splitters in order: Q, {t}, {p}, {q, r}
    assert seen[0] == A1_RESULT          # D2 splits itself into {p} and {q, r}
    assert all(s == A1_RESULT for s in seen)
    assert len(seen) == 4


def test_a2_not_simplifiable(a2):
    aug = augment(a2)
    assert not simplifiable_signatures(aug)
    with pytest.raises(NotSimplifiable):
        fpcsa_minimise(aug)
    r, s = 2, 3
    assert signature(aug, 0, [r, s]) == {"a": True}
    assert signature(aug, 1, [s]) == {"a": True}
    assert signature(aug, 1, [r]) == {}
    # the cancellation law fails: p and q agree on {r, s} and on {s} but not on {r}
    assert signature(aug, 0, [s]) == signature(aug, 1, [s])
    assert signature(aug, 0, [r]) != signature(aug, 1, [r])


def test_a2_pcsa_is_correct(a2):
    aug = augment(a2)
    assert pcsa_minimise(aug) == brute_force_coarsest_congruence(aug)
    assert minimise(aug).classes() == pcsa_minimise(aug).classes()


def test_simplifiable_cases():
    assert simplifiable_signatures(augment(random_automaton(4, 2, 0.9, INTEGERS, 1)))
    assert simplifiable_signatures(augment(fibonacci_automaton(5)))
    dfa = WeightedAutomaton(BOOLEAN, "ab", 3)
    dfa.add_transition(0, "a", True, 1)
    dfa.set_initial(0, True)
    dfa.set_final(2, True)
    assert simplifiable_signatures(augment(dfa))
    two_initial = WeightedAutomaton(BOOLEAN, "a", 2)
    two_initial.set_initial(0, True)
    two_initial.set_initial(1, True)
    # i has two $-successors, so the marker breaks determinism
    assert not simplifiable_signatures(augment(two_initial))
    assert not simplifiable_signatures(augment(random_automaton(4, 1, 1.0, MIN_PLUS, 0)))


def test_single_state_no_transitions():
    aug = augment(WeightedAutomaton(INTEGERS, "a", 1))
    P = dsa_minimise(aug)
    assert P.classes() == [(0,), (1,), (2,)]
    assert P.stats.rounds == 1
    assert pcsa_minimise(aug).classes() == [(0,), (1,), (2,)]


def test_empty_automaton():
    aug = augment(WeightedAutomaton(INTEGERS, "a", 0))
    for algo in (dsa_minimise, pcsa_minimise, fpcsa_minimise):
        assert algo(aug).classes() == [(0,), (1,)]


def test_minimal_dfa_has_no_splits():
    aut = fibonacci_automaton(1)  # cycle "ab" with both states final
    aug = augment(aut)
    P = pcsa_minimise(aug)
    assert len(true_classes(aug, P)) == 2
    # already minimal quotient: a second pass finds nothing to split
    q = augment(quotient(aut, true_classes(aug, P)))
    assert pcsa_minimise(q).stats.splits == 0 or len(true_classes(q, pcsa_minimise(q))) == q.n


def test_unknown_algorithm(aug1):
    with pytest.raises(ValueError):
        minimise(aug1, "moore")


def test_agreement_and_invariants_on_corpus():
    for aut in corpus(200, seed0=1000):
        aug = augment(aut)
        d, p = dsa_minimise(aug), pcsa_minimise(aug)
        d.check()
        p.check()
        assert d == p
        assert is_congruence(aug, d)
        assert (aug.i,) in d.classes() and (aug.t,) in d.classes()
        if simplifiable_signatures(aug):
            assert fpcsa_minimise(aug) == d


def test_work_bounds_on_corpus():
    for aut in corpus(200, seed0=5000):
        aug = augment(aut)
        out_edges = sum(len(e) for e in aug.outgoing)
        n = max(aug.n, 1)
        assert dsa_minimise(aug).stats.transitions_touched <= n * out_edges
        assert pcsa_minimise(aug).stats.transitions_touched <= n * out_edges
        if simplifiable_signatures(aug):
            st = fpcsa_minimise(aug).stats
            assert st.max_state_dequeues <= math.ceil(math.log2(n)) + 1


def test_monotonicity_at_every_iteration():
    for aut in corpus(120, seed0=300):
        aug = augment(aut)
        coarsest = brute_force_coarsest_congruence(aug).classes()

        def hook(P):
            assert coarser_or_equal(P.classes(), coarsest)

        dsa_minimise(aug, hook)
        pcsa_minimise(aug, hook)
        if simplifiable_signatures(aug):
            fpcsa_minimise(aug, hook)


def test_signature_additivity():
    rng = random.Random(7)
    for aut in corpus(100, seed0=2000):
        aug = augment(aut)
        if not simplifiable_signatures(aug):
            continue
        sr = aug.semiring
        D = [q for q in range(aug.size) if rng.random() < 0.6]
        pieces = [[], [], []]
        for q in D:
            pieces[rng.randrange(3)].append(q)
        for p in range(aug.size):
            total = {}
            for piece in pieces:
                for a, k in signature(aug, p, piece).items():
                    total[a] = sr.add(total[a], k) if a in total else k
            total = {a: k for a, k in total.items() if not sr.is_zero(k)}
            assert total == signature(aug, p, D)


def _complete_dfa(n, letters, seed):
    rng = random.Random(seed)
    aut = WeightedAutomaton(BOOLEAN, "ab"[:letters], n)
    for p in range(n):
        for a in aut.alphabet:
            aut.add_transition(p, a, True, rng.randrange(n))
        if rng.random() < 0.5:
            aut.set_final(p, True)
    aut.set_initial(0, True)
    return aut


def test_boolean_dfa_matches_moore():
    for seed in range(150):
        aut = _complete_dfa(1 + seed % 9, 1 + seed % 2, seed)
        aug = augment(aut)
        expected = naive_moore(aut)
        for algo in (dsa_minimise, pcsa_minimise, fpcsa_minimise):
            # i is linked to state 0 only, so it cannot merge classes
            assert true_classes(aug, algo(aug)) == expected


def test_idempotence():
    for aut in corpus(150, seed0=700) + [make_a1(), railroad_automaton(6), fibonacci_automaton(7)]:
        aug = augment(aut)
        q = quotient(aut, true_classes(aug, minimise(aug, "pcsa")))
        qa = augment(q)
        for algo in ("dsa", "pcsa", "auto"):
            assert true_classes(qa, minimise(qa, algo)) == [(x,) for x in range(q.n)]


def test_railroad_pairs_and_split_cost():
    n = 32
    aug = augment(railroad_automaton(n))
    expected = [(2 * p, 2 * p + 1) for p in range(n)]
    for algo in (dsa_minimise, pcsa_minimise, fpcsa_minimise):
        P = algo(aug)
        assert true_classes(aug, P) == expected
    # after the first iteration every split moves one rung out of a class of 2k
    moves = []
    st = fpcsa_minimise(aug, hook=lambda P: moves.append(P.moves)).stats
    steps = [b - a for a, b in zip(moves, moves[1:])]
    assert max(steps) == 2
    assert st.splits == n - 1
    assert st.max_state_dequeues <= math.ceil(math.log2(2 * n)) + 1


def test_fibonacci_fpcsa_dequeue_bound():
    from wfamin.generators import fibonacci_word
    for k in range(3, 13):
        aug = augment(fibonacci_automaton(k))
        st = fpcsa_minimise(aug).stats
        assert st.max_state_dequeues <= math.ceil(math.log2(len(fibonacci_word(k)))) + 1
        assert len(true_classes(aug, pcsa_minimise(aug))) == aug.n
