"""Weighted automata, their augmented form, and word coefficients."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .semiring import Semiring, Weight

MARKER = "$"


class AutomatonError(ValueError):
    """Raised on references to unknown states or letters."""


class WeightedAutomaton:
    """A K-automaton <I, E, T> over a finite alphabet.

    States are the integers ``0 .. n-1``; an optional ``names`` list gives
    them external labels.  ``transitions`` maps ``(p, letter, q)`` to a
    nonzero weight, ``initial`` and ``final`` map states to nonzero weights.
    Zero weights are never stored.
    """

    def __init__(self, semiring: Semiring, alphabet: Iterable[str], n: int,
                 names: Sequence[str] | None = None):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise AutomatonError(f"duplicate letters in alphabet {alphabet!r}")
        if MARKER in alphabet:
            raise AutomatonError(f"{MARKER!r} is reserved and cannot be a letter")
        if n < 0:
            raise AutomatonError("negative state count")
        if names is not None:
            names = [str(x) for x in names]
            if len(names) != n or len(set(names)) != n:
                raise AutomatonError("state names must be distinct, one per state")
        self.semiring = semiring
        self.alphabet = alphabet
        self.n = n
        self.names = names
        self.transitions: dict[tuple[int, str, int], Weight] = {}
        self.initial: dict[int, Weight] = {}
        self.final: dict[int, Weight] = {}

    def __repr__(self) -> str:
        return (f"WeightedAutomaton({self.semiring.name}, alphabet={''.join(self.alphabet)!r}, "
                f"n={self.n}, m={len(self.transitions)})")

    def _check_state(self, p: int) -> None:
        if not (isinstance(p, int) and 0 <= p < self.n):
            raise AutomatonError(f"unknown state {p!r}")

    def _check_letter(self, a: str) -> None:
        if a not in self.alphabet:
            raise AutomatonError(f"letter {a!r} not in alphabet")

    def add_transition(self, p: int, a: str, k: Weight, q: int) -> None:
        """Add ``k`` to E(p, a, q); the entry disappears if the sum is zero."""
        self._check_state(p)
        self._check_state(q)
        self._check_letter(a)
        _accumulate(self.semiring, self.transitions, (p, a, q), k)

    def set_initial(self, p: int, k: Weight) -> None:
        self._check_state(p)
        _store(self.semiring, self.initial, p, k)

    def set_final(self, p: int, k: Weight) -> None:
        self._check_state(p)
        _store(self.semiring, self.final, p, k)

    def weight(self, p: int, a: str, q: int) -> Weight:
        return self.transitions.get((p, a, q), self.semiring.zero)

    def state_name(self, p: int) -> str:
        return self.names[p] if self.names is not None else str(p)

    def state_index(self, name: str) -> int:
        if self.names is not None:
            try:
                return self.names.index(name)
            except ValueError:
                pass
        try:
            p = int(name)
        except ValueError:
            raise AutomatonError(f"unknown state {name!r}") from None
        self._check_state(p)
        return p

    def is_deterministic(self) -> bool:
        seen = set()
        for p, a, _ in self.transitions:
            if (p, a) in seen:
                return False
            seen.add((p, a))
        return True

    # Interface shared with AugmentedAutomaton for coefficient computations.
    def initial_vector(self) -> dict[int, Weight]:
        return dict(self.initial)

    def final_vector(self) -> dict[int, Weight]:
        return dict(self.final)

    def letter_transitions(self) -> dict[str, list[tuple[int, Weight, int]]]:
        by_letter = defaultdict(list)
        for (p, a, q), k in self.transitions.items():
            by_letter[a].append((p, k, q))
        return by_letter

    @property
    def letters(self) -> tuple[str, ...]:
        return self.alphabet


def _accumulate(semiring, table, key, k):
    old = table.get(key)
    new = k if old is None else semiring.add(old, k)
    if new == semiring.zero:
        table.pop(key, None)
    else:
        table[key] = new


def _store(semiring, table, key, k):
    if k == semiring.zero:
        table.pop(key, None)
    else:
        table[key] = k


class AugmentedAutomaton:
    """The normalised automaton <Q, i, Ê, t> over ``A ∪ {$}``.

    True states keep their ids ``0 .. n-1``; ``i`` is ``n`` and ``t`` is
    ``n + 1``.  Letters are handled by index into :attr:`letters`, the
    marker being the last one.  Adjacency is stored twice: ``outgoing[p]``
    holds ``(letter, weight, q)`` and ``incoming[q]`` holds
    ``(letter, weight, p)``, both sorted by letter then state.
    """

    def __init__(self, base: WeightedAutomaton):
        self.base = base
        self.semiring = base.semiring
        self.n = base.n
        self.i = base.n
        self.t = base.n + 1
        self.size = base.n + 2
        self.letters = base.alphabet + (MARKER,)
        self.marker = len(base.alphabet)
        letter_id = {a: x for x, a in enumerate(base.alphabet)}

        edges = [(p, letter_id[a], k, q) for (p, a, q), k in base.transitions.items()]
        edges += [(self.i, self.marker, k, p) for p, k in base.initial.items()]
        edges += [(p, self.marker, k, self.t) for p, k in base.final.items()]
        self.outgoing: list[list[tuple[int, Weight, int]]] = [[] for _ in range(self.size)]
        self.incoming: list[list[tuple[int, Weight, int]]] = [[] for _ in range(self.size)]
        for p, a, k, q in sorted(edges, key=lambda e: (e[0], e[1], e[3])):
            self.outgoing[p].append((a, k, q))
        for p, a, k, q in sorted(edges, key=lambda e: (e[3], e[1], e[0])):
            self.incoming[q].append((a, k, p))
        self.m = len(edges)

    def __repr__(self) -> str:
        return f"AugmentedAutomaton(n={self.n}, m={self.m})"

    def state_name(self, p: int) -> str:
        if p == self.i:
            return "i"
        if p == self.t:
            return "t"
        return self.base.state_name(p)

    def letter_index(self, a: str) -> int:
        try:
            return self.letters.index(a)
        except ValueError:
            raise AutomatonError(f"letter {a!r} not in augmented alphabet") from None

    def weight(self, p: int, a: str, q: int) -> Weight:
        x = self.letter_index(a)
        for b, k, r in self.outgoing[p]:
            if b == x and r == q:
                return k
        return self.semiring.zero

    def is_deterministic(self) -> bool:
        for edges in self.outgoing:
            labels = [a for a, _, _ in edges]
            if len(labels) != len(set(labels)):
                return False
        return True

    def initial_vector(self) -> dict[int, Weight]:
        return {self.i: self.semiring.one}

    def final_vector(self) -> dict[int, Weight]:
        return {self.t: self.semiring.one}

    def letter_transitions(self) -> dict[str, list[tuple[int, Weight, int]]]:
        by_letter = defaultdict(list)
        for p, edges in enumerate(self.outgoing):
            for a, k, q in edges:
                by_letter[self.letters[a]].append((p, k, q))
        return by_letter


def augment(aut: WeightedAutomaton) -> AugmentedAutomaton:
    return AugmentedAutomaton(aut)


def stats(aut: WeightedAutomaton | AugmentedAutomaton) -> tuple[int, int]:
    """``(state count, transition count)``; i and t count as states."""
    if isinstance(aut, AugmentedAutomaton):
        return aut.size, aut.m
    return aut.n, len(aut.transitions)


def _step(semiring, vector, edges):
    out = {}
    add, mul, zero = semiring.add, semiring.mul, semiring.zero
    for p, k, q in edges:
        x = vector.get(p)
        if x is None:
            continue
        y = mul(x, k)
        out[q] = add(out[q], y) if q in out else y
    return {q: x for q, x in out.items() if x != zero}


def _dot(semiring, vector, final):
    acc = semiring.zero
    for p, x in vector.items():
        k = final.get(p)
        if k is not None:
            acc = semiring.add(acc, semiring.mul(x, k))
    return acc


def coefficient(aut, word: Iterable[str], *, start: dict[int, Weight] | None = None) -> Weight:
    """Weight of ``word`` in the series realised by ``aut``.

    Computed as ``I · E_a1 · ... · E_al · T`` with sparse vectors.  A string
    is read letter by letter, so ``"$ab$"`` is a valid word on an augmented
    automaton.
    """
    semiring = aut.semiring
    by_letter = aut.letter_transitions()
    vector = aut.initial_vector() if start is None else dict(start)
    for a in word:
        if a not in aut.letters:
            raise AutomatonError(f"letter {a!r} not in alphabet")
        vector = _step(semiring, vector, by_letter.get(a, ()))
        if not vector:
            return semiring.zero
    return _dot(semiring, vector, aut.final_vector())


def future_coefficient(aut, p: int, word: Iterable[str]) -> Weight:
    """Coefficient of ``word`` in the future of state ``p``."""
    n = aut.size if isinstance(aut, AugmentedAutomaton) else aut.n
    if not (isinstance(p, int) and 0 <= p < n):
        raise AutomatonError(f"unknown state {p!r}")
    return coefficient(aut, word, start={p: aut.semiring.one})


def all_coefficients(aut, max_len: int, *, start: dict[int, Weight] | None = None):
    """Yield ``(word, coefficient)`` for every word up to ``max_len`` letters.

    Words come in length-lexicographic order over ``aut.letters``; prefix
    vectors are shared, so this is much cheaper than one
    :func:`coefficient` call per word.
    """
    semiring = aut.semiring
    by_letter = aut.letter_transitions()
    final = aut.final_vector()
    letters = aut.letters
    layer = [((), aut.initial_vector() if start is None else dict(start))]
    for length in range(max_len + 1):
        for word, vector in layer:
            yield "".join(word), _dot(semiring, vector, final)
        if length == max_len:
            break
        layer = [(word + (a,), _step(semiring, vector, by_letter.get(a, ())))
                 for word, vector in layer for a in letters]
