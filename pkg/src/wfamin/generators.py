"""Benchmark families and random automata."""
from __future__ import annotations

import random

from .automaton import WeightedAutomaton
from .semiring import BOOLEAN, INTEGERS, MIN_PLUS, Semiring

FIBONACCI_MAX_K = 26


def fibonacci_word(k: int) -> str:
    """``phi^k(a)`` for the substitution a -> ab, b -> a."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    # w_0 = a, w_1 = ab, and w_k = w_{k-1} w_{k-2} afterwards
    prev, cur = "a", "ab"
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, cur + prev
    return cur


def fibonacci_automaton(k: int, max_k: int = FIBONACCI_MAX_K) -> WeightedAutomaton:
    """Boolean circuit spelling the k-th Fibonacci word; state 0 initial, all final."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > max_k:
        raise ValueError(f"k={k} exceeds the cap {max_k}")
    word = fibonacci_word(k)
    n = len(word)
    aut = WeightedAutomaton(BOOLEAN, "ab", n)
    for p, a in enumerate(word):
        aut.transitions[(p, a, (p + 1) % n)] = True
        aut.final[p] = True
    aut.initial[0] = True
    return aut


def railroad_automaton(n: int) -> WeightedAutomaton:
    """Z-automaton with 2n states in n rungs, consecutive rungs fully linked.

    States ``2p-1`` and ``2p`` (1-based) both go to ``2p+1`` and ``2p+2``
    with crossed weights 1, 2 / 2, 1, so each rung is one class of the
    minimal quotient.  State ids here are 0-based.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    aut = WeightedAutomaton(INTEGERS, "a", 2 * n)
    for p in range(n - 1):
        x, y, u, v = 2 * p, 2 * p + 1, 2 * p + 2, 2 * p + 3
        aut.transitions[(x, "a", u)] = 1
        aut.transitions[(x, "a", v)] = 2
        aut.transitions[(y, "a", u)] = 2
        aut.transitions[(y, "a", v)] = 1
    aut.initial[0] = 1
    aut.final[2 * n - 2] = 1
    aut.final[2 * n - 1] = 1
    return aut


def _draw_weight(rng, semiring, weights):
    if semiring is BOOLEAN:
        return True
    return rng.choice(weights)


def random_automaton(n: int, alphabet_size: int, density: float, semiring: Semiring,
                     seed: int, weights=None) -> WeightedAutomaton:
    """Reproducible random automaton.

    Every triple ``(p, a, q)`` is present with probability ``density``, and
    so is each initial and final entry; at least one initial and one final
    state are forced.  Z weights default to ``[-3, 3]`` minus zero,
    min-plus weights to ``[0, 5]``.
    """
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 1 <= alphabet_size <= 26:
        raise ValueError("alphabet size must be between 1 and 26")
    if weights is None:
        weights = {INTEGERS: [-3, -2, -1, 1, 2, 3], MIN_PLUS: [0, 1, 2, 3, 4, 5]}.get(semiring, [True])
    rng = random.Random(seed)
    alphabet = "abcdefghijklmnopqrstuvwxyz"[:alphabet_size]
    aut = WeightedAutomaton(semiring, alphabet, n)
    for p in range(n):
        for a in alphabet:
            for q in range(n):
                if rng.random() < density:
                    aut.transitions[(p, a, q)] = _draw_weight(rng, semiring, weights)
    for table in (aut.initial, aut.final):
        for p in range(n):
            if rng.random() < density:
                table[p] = _draw_weight(rng, semiring, weights)
        if not table:
            table[rng.randrange(n)] = _draw_weight(rng, semiring, weights)
    return aut
