"""Minimal quotients by partition refinement.

All three algorithms work on an augmented automaton, start from the
partition ``{{i}, Q, {t}}`` and split classes according to signatures:
the signature of ``p`` with respect to a set ``D`` maps each letter ``a``
to the sum of the weights of the ``a``-transitions from ``p`` into ``D``.

* :func:`dsa_minimise` (domain split) recomputes, class by class, the
  global signature of every state, grouped in rounds.
* :func:`pcsa_minimise` (predecessor class split) uses a class as a
  splitter for the classes of its predecessors.
* :func:`fpcsa_minimise` is the same with the "all but the largest"
  queueing rule; it needs simplifiable signatures.

Signatures are compared as lists built in a shared emission order (see
:mod:`wfamin.weaksort`), never by sorting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .automaton import AugmentedAutomaton
from .partition import Block, Partition, SplitOutcome
from .weaksort import OrderedBucketMap, merge_last, weak_sort

Hook = Callable[[Partition], None]


class NotSimplifiable(ValueError):
    """FPCSA was asked to run on an automaton without simplifiable signatures."""


@dataclass
class RefineStats:
    iterations: int = 0
    rounds: int = 0
    dequeues: int = 0
    transitions_touched: int = 0
    splits: int = 0
    states_moved: int = 0
    state_dequeues: list[int] = field(default_factory=list, repr=False)

    @property
    def max_state_dequeues(self) -> int:
        return max(self.state_dequeues, default=0)


def signature(aug: AugmentedAutomaton, p: int, D: Iterable[int]) -> dict[str, object]:
    """``sig(p, D)`` straight from the definition, keyed by letter name."""
    D = set(D)
    add, zero = aug.semiring.add, aug.semiring.zero
    sums: dict[int, object] = {}
    for a, k, q in aug.outgoing[p]:
        if q in D:
            sums[a] = add(sums[a], k) if a in sums else k
    return {aug.letters[a]: k for a, k in sorted(sums.items()) if k != zero}


def _global_signatures(aug, members, block_of, stats=None):
    """Global signatures of ``members`` as flat lists ``[D, a, k, D, a, k, ...]``.

    Pass one files ``(p, k)`` under the key ``(a, class of q)`` for every
    transition ``p -a|k-> q``, merging with the last pair when it has the
    same owner.  Pass two walks the keys in first-insertion order and
    appends to each owner's signature, so equal signatures are equal lists.
    """
    add, zero = aug.semiring.add, aug.semiring.zero
    outgoing = aug.outgoing
    buckets = OrderedBucketMap()
    touched = 0
    for p in members:
        edges = outgoing[p]
        touched += len(edges)
        for a, k, q in edges:
            buckets.insert_merge_last((a, block_of[q]), p, k, add, zero)
    if stats is not None:
        stats.transitions_touched += touched
    sigs = {p: [] for p in members}
    for (a, block), pairs in buckets.items():
        for p, k in pairs:
            sigs[p] += (block.id, a, k)
    return sigs


def global_signature_pass(aug: AugmentedAutomaton, C: Block | Iterable[int],
                          P: Partition) -> dict[int, list[tuple[tuple[int, str], object]]]:
    """Global signature of every state of ``C`` with respect to ``P``.

    Each signature is an ordered list of ``((class id, letter), weight)``.
    """
    members = list(P.members(C)) if isinstance(C, Block) else list(C)
    sigs = _global_signatures(aug, members, P.block_of)
    letters = aug.letters
    return {p: [((s[x], letters[s[x + 1]]), s[x + 2]) for x in range(0, len(s), 3)]
            for p, s in sigs.items()}


def _predecessor_signatures(aug, members, stats=None):
    """``sig(p, D)`` for every predecessor ``p`` of ``D``, as flat lists.

    Pass one files ``(p, k)`` under letter ``a`` for each transition
    ``p -a|k-> q`` with ``q`` in ``D``; pass two walks letters in
    first-insertion order and folds consecutive same-letter entries.
    Predecessors whose weights cancel out end up with an empty list.
    """
    add, zero = aug.semiring.add, aug.semiring.zero
    incoming = aug.incoming
    buckets = OrderedBucketMap()
    touched = 0
    for q in members:
        edges = incoming[q]
        touched += len(edges)
        for a, k, p in edges:
            buckets.insert(a, (p, k))
    if stats is not None:
        stats.transitions_touched += touched
    sigs: dict[int, list] = {}
    for a, pairs in buckets.items():
        for p, k in pairs:
            sig = sigs.get(p)
            if sig is None:
                sigs[p] = [[a, k]]
            else:
                merge_last(sig, a, k, add, zero)
    return sigs


def predecessor_signatures(aug: AugmentedAutomaton, D: Iterable[int]) -> dict[int, dict[str, object]]:
    """Signatures with respect to ``D`` of all predecessors of ``D``."""
    sigs = _predecessor_signatures(aug, list(D))
    return {p: {aug.letters[a]: k for a, k in sig} for p, sig in sigs.items()}


def split_class(P: Partition, C: Block, grouping: list[list[int]]) -> SplitOutcome:
    """Split ``C``: one class per group, the untouched states as one more.

    Cost is linear in the grouped states; the untouched ones are not
    visited.
    """
    outcome = P.split(C, grouping)
    if outcome.split and P.stats is not None:
        P.stats.splits += 1
        P.stats.states_moved = P.moves
    return outcome


def simplifiable_signatures(aug: AugmentedAutomaton) -> bool:
    """Sufficient test: cancellative addition, or determinism over ``A ∪ {$}``."""
    return aug.semiring.additively_cancellative or aug.is_deterministic()


def initial_partition(aug: AugmentedAutomaton) -> tuple[Partition, Block | None, Block]:
    P = Partition(aug.size)
    P.new_class([aug.i])
    Q = P.new_class(range(aug.n)) if aug.n else None
    T = P.new_class([aug.t])
    return P, Q, T


def _start(aug):
    P, Q, T = initial_partition(aug)
    P.stats = RefineStats(state_dequeues=[0] * aug.size)
    return P, Q, T


def _dequeued(P, block):
    stats = P.stats
    members = list(P.members(block))
    stats.iterations += 1
    stats.dequeues += len(members)
    counts = stats.state_dequeues
    for p in members:
        counts[p] += 1
    return members


def dsa_minimise(aug: AugmentedAutomaton, hook: Hook | None = None) -> Partition:
    """Coarsest congruence by the domain split algorithm.

    The queue holds every class that may still split; a round processes
    the classes queued when it starts, and the run stops after a round
    without any split.
    """
    P, Q, _ = _start(aug)
    stats = P.stats
    if Q is not None:
        P.enqueue(Q)
    block_of = P.block_of
    while P.queue:
        stats.rounds += 1
        split_seen = False
        for _ in range(len(P.queue)):
            C = P.dequeue()
            if C is None:
                break
            members = _dequeued(P, C)
            sigs = _global_signatures(aug, members, block_of, stats)
            _, groups = weak_sort(members, lambda p: tuple(sigs[p]))
            if len(groups) > 1:
                split_seen = True
                outcome = split_class(P, C, groups)
                for block in outcome.classes:
                    if block.size > 1:
                        P.enqueue(block)
            elif C.size > 1:
                P.enqueue(C)
            if hook is not None:
                hook(P)
        if not split_seen:
            break
    P.queue.clear()
    for block in P.blocks():
        block.queued = False
    return P


def _predecessor_split(aug: AugmentedAutomaton, fast: bool, hook: Hook | None) -> Partition:
    P, Q, T = _start(aug)
    stats = P.stats
    if Q is not None:
        P.enqueue(Q)
    P.enqueue(T)
    block_of = P.block_of
    while True:
        D = P.dequeue()
        if D is None:
            break
        members = _dequeued(P, D)
        sigs = _predecessor_signatures(aug, members, stats)

        touched = OrderedBucketMap()
        for p, sig in sigs.items():
            if sig:
                touched.insert(block_of[p], p)
        for C, states in list(touched.items()):
            if C.size == 1:
                continue
            _, groups = weak_sort(states, lambda p: tuple(x for pair in sigs[p] for x in pair))
            if len(groups) == 1 and len(states) == C.size:
                continue
            outcome = split_class(P, C, groups)
            subclasses = outcome.classes
            if fast and not outcome.was_queued:
                largest = max(subclasses, key=lambda b: b.size)
                for block in subclasses:
                    if block is not largest:
                        P.enqueue(block)
            else:
                for block in subclasses:
                    P.enqueue(block)
        if hook is not None:
            hook(P)
    return P


def pcsa_minimise(aug: AugmentedAutomaton, hook: Hook | None = None) -> Partition:
    """Coarsest congruence by the predecessor class split algorithm."""
    return _predecessor_split(aug, False, hook)


def fpcsa_minimise(aug: AugmentedAutomaton, hook: Hook | None = None) -> Partition:
    """Predecessor class split with the "all but the largest" rule.

    A split class that is not waiting in the queue has all its subclasses
    queued except one of the largest; one that is waiting is replaced by
    all of them.  Raises :class:`NotSimplifiable` unless
    :func:`simplifiable_signatures` holds.
    """
    if not simplifiable_signatures(aug):
        raise NotSimplifiable(
            "signatures are not simplifiable (non-cancellative semiring and "
            "nondeterministic automaton); use pcsa instead")
    return _predecessor_split(aug, True, hook)


ALGORITHMS = {
    "dsa": dsa_minimise,
    "pcsa": pcsa_minimise,
    "fpcsa": fpcsa_minimise,
}


def minimise(aug: AugmentedAutomaton, algo: str = "auto", hook: Hook | None = None) -> Partition:
    """Run ``algo``; ``auto`` picks fpcsa when it applies, pcsa otherwise."""
    if algo == "auto":
        algo = "fpcsa" if simplifiable_signatures(aug) else "pcsa"
    try:
        run = ALGORITHMS[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}") from None
    return run(aug, hook)


def true_classes(aug: AugmentedAutomaton, P: Partition) -> list[tuple[int, ...]]:
    """Classes of ``P`` without ``{i}`` and ``{t}``."""
    return [c for c in P.classes() if c[0] < aug.n]
