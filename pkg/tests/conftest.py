import pytest

from wfamin.automaton import WeightedAutomaton, augment
from wfamin.generators import random_automaton
from wfamin.semiring import BOOLEAN, INTEGERS

P, Q, R = 0, 1, 2


def make_a1():
    """The Z-automaton with I = (2 1 0), T = (0 1 1) and
    E = [[-a, -b, 2b], [a, -b, a+2b], [a, a, b]] on states p, q, r."""
    aut = WeightedAutomaton(INTEGERS, "ab", 3, ["p", "q", "r"])
    for p, a, k, q in [
        (P, "a", -1, P), (P, "b", -1, Q), (P, "b", 2, R),
        (Q, "a", 1, P), (Q, "b", -1, Q), (Q, "a", 1, R), (Q, "b", 2, R),
        (R, "a", 1, P), (R, "a", 1, Q), (R, "b", 1, R),
    ]:
        aut.add_transition(p, a, k, q)
    aut.set_initial(P, 2)
    aut.set_initial(Q, 1)
    aut.set_final(Q, 1)
    aut.set_final(R, 1)
    return aut


def make_a2():
    """Boolean automaton where p reads a into r and s, q reads a into s only."""
    aut = WeightedAutomaton(BOOLEAN, "a", 4, ["p", "q", "r", "s"])
    aut.add_transition(0, "a", True, 2)
    aut.add_transition(0, "a", True, 3)
    aut.add_transition(1, "a", True, 3)
    aut.set_initial(0, True)
    aut.set_final(2, True)
    aut.set_final(3, True)
    return aut


@pytest.fixture
def a1():
    return make_a1()


@pytest.fixture
def aug1():
    return augment(make_a1())


@pytest.fixture
def a2():
    return make_a2()


def corpus(count, seed0=0):
    """Small random automata over B and Z with varied density."""
    out = []
    for x in range(count):
        seed = seed0 + x
        semiring = BOOLEAN if x % 2 == 0 else INTEGERS
        n = 1 + seed % 6
        letters = 1 + (seed // 6) % 2
        density = (0.15, 0.3, 0.5, 0.8)[(seed // 12) % 4]
        # small weight sets make nontrivial congruences likely over Z
        weights = [-1, 1] if (seed // 48) % 2 else None
        out.append(random_automaton(n, letters, density, semiring, seed, weights=weights))
    return out


def naive_moore(aut):
    """Textbook Moore refinement for a complete DFA: classes of equivalent states."""
    delta = {(p, a): q for (p, a, q) in aut.transitions}
    label = {p: (p in aut.final) for p in range(aut.n)}
    while True:
        keys = {p: (label[p],) + tuple(label[delta[p, a]] for a in aut.alphabet)
                for p in range(aut.n)}
        ids = {}
        new = {p: ids.setdefault(keys[p], len(ids)) for p in range(aut.n)}
        if len(set(new.values())) == len(set(label.values())):
            break
        label = new
    classes = {}
    for p in range(aut.n):
        classes.setdefault(label[p], []).append(p)
    return sorted(tuple(c) for c in classes.values())
