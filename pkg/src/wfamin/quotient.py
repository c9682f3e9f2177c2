"""Congruences, quotients, and morphism checks.

Everything here is written directly from the matrix definitions and is
meant as a reference: nothing reuses the refinement machinery.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automaton import AugmentedAutomaton, WeightedAutomaton
from .partition import Partition, coarser_or_equal

BRUTE_FORCE_LIMIT = 8


class NotACongruence(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceWitness:
    """A partition of the true states and one representative per class."""
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @classmethod
    def smallest(cls, classes: Iterable[Iterable[int]]) -> "CongruenceWitness":
        classes = tuple(sorted(tuple(sorted(c)) for c in classes))
        return cls(classes, tuple(c[0] for c in classes))


def _as_classes(P) -> list[tuple[int, ...]]:
    if isinstance(P, Partition):
        return P.classes()
    return [tuple(c) for c in P]


def _check_partition(classes, size):
    seen = [c for cls in classes for c in cls]
    if any(not cls for cls in classes) or sorted(seen) != list(range(size)):
        raise ValueError("not a partition of the state set")


def is_congruence(aug: AugmentedAutomaton, P) -> bool:
    """Whether ``P`` (over ``Q ∪ {i, t}``) is a congruence of ``aug``.

    ``{i}`` and ``{t}`` must be classes, and classmates must have the same
    summed weight into every class for every letter, marker included.
    """
    classes = _as_classes(P)
    _check_partition(classes, aug.size)
    if (aug.i,) not in classes or (aug.t,) not in classes:
        return False
    owner = {}
    for x, cls in enumerate(classes):
        for p in cls:
            owner[p] = x
    sr = aug.semiring
    for cls in classes:
        rows = []
        for p in cls:
            row = {}
            for a, k, q in aug.outgoing[p]:
                key = (a, owner[q])
                row[key] = sr.add(row[key], k) if key in row else k
            rows.append({key: k for key, k in row.items() if k != sr.zero})
        if any(r != rows[0] for r in rows[1:]):
            return False
    return True


def quotient(aut: WeightedAutomaton, P, witness: CongruenceWitness | None = None) -> WeightedAutomaton:
    """The automaton ``<I·X, S·E·X, S·T>`` for a congruence on the true states.

    Classes are numbered by smallest member.  With ``witness``, its
    representatives fill the selection matrix; otherwise the smallest state
    of each class does.
    """
    classes = sorted(tuple(sorted(c)) for c in _as_classes(P))
    classes = [c for c in classes if c[0] < aut.n]
    _check_partition(classes, aut.n)
    aug = AugmentedAutomaton(aut)
    full = classes + [(aug.i,), (aug.t,)]
    if not is_congruence(aug, full):
        raise NotACongruence("partition is not a congruence")
    if witness is None:
        witness = CongruenceWitness.smallest(classes)
    reps = dict(zip(witness.classes, witness.representatives))
    phi = canonical_map(classes, aut.n)
    names = None
    if aut.names is not None:
        names = ["{" + ",".join(aut.names[p] for p in c) + "}" for c in classes]
    out = WeightedAutomaton(aut.semiring, aut.alphabet, len(classes), names)
    sr = aut.semiring
    for p, k in aut.initial.items():
        c = phi[p]
        out.initial[c] = sr.add(out.initial[c], k) if c in out.initial else k
    out.initial = {c: k for c, k in out.initial.items() if k != sr.zero}
    for x, cls in enumerate(classes):
        rep = reps[cls]
        if rep not in cls:
            raise ValueError(f"representative {rep} not in class {cls}")
        for (p, a, q), k in aut.transitions.items():
            if p == rep:
                out.add_transition(x, a, k, phi[q])
        if rep in aut.final:
            out.final[x] = aut.final[rep]
    return out


def canonical_map(classes: Iterable[Iterable[int]], n: int) -> list[int]:
    """State map onto classes numbered by smallest member."""
    classes = sorted(tuple(sorted(c)) for c in classes)
    phi = [-1] * n
    for x, cls in enumerate(classes):
        for p in cls:
            if p < n:
                phi[p] = x
    return phi


def _vec_mat(sr, vec, mat):
    out = {}
    for p, x in vec.items():
        for r, y in mat.get(p, {}).items():
            z = sr.mul(x, y)
            out[r] = sr.add(out[r], z) if r in out else z
    return {r: z for r, z in out.items() if z != sr.zero}


def _mat_mat(sr, left, right):
    return {p: row for p, row in ((p, _vec_mat(sr, vec, right)) for p, vec in left.items()) if row}


def _sparse(sr, entries):
    mat = defaultdict(dict)
    for (p, q), k in entries:
        if k != sr.zero:
            mat[p][q] = k
    return dict(mat)


def verify_conjugacy(A: WeightedAutomaton, B: WeightedAutomaton,
                     X: dict[tuple[int, int], object]) -> bool:
    """Whether ``I·X = J``, ``E_a·X = X·F_a`` for every letter, and ``T = X·U``."""
    if A.semiring is not B.semiring or A.alphabet != B.alphabet:
        raise ValueError("automata over different semirings or alphabets")
    for p, r in X:
        if not (0 <= p < A.n and 0 <= r < B.n):
            raise ValueError(f"transfer matrix entry {(p, r)} out of range")
    sr = A.semiring
    Xm = _sparse(sr, X.items())
    if _vec_mat(sr, A.initial, Xm) != {r: k for r, k in B.initial.items()}:
        return False
    # T = X·U, computed row by row
    for p in range(A.n):
        acc = sr.zero
        for r, x in Xm.get(p, {}).items():
            if r in B.final:
                acc = sr.add(acc, sr.mul(x, B.final[r]))
        if acc != A.final.get(p, sr.zero):
            return False
    for a in A.alphabet:
        Ea = _sparse(sr, (((p, q), k) for (p, b, q), k in A.transitions.items() if b == a))
        Fa = _sparse(sr, (((p, q), k) for (p, b, q), k in B.transitions.items() if b == a))
        if _mat_mat(sr, Ea, Xm) != _mat_mat(sr, Xm, Fa):
            return False
    return True


def amalgamation_matrix(A: WeightedAutomaton, phi: Sequence[int]) -> dict[tuple[int, int], object]:
    return {(p, r): A.semiring.one for p, r in enumerate(phi)}


def verify_morphism(A: WeightedAutomaton, B: WeightedAutomaton, phi: Sequence[int]) -> bool:
    """Whether the surjective map ``phi`` is a morphism from ``A`` onto ``B``."""
    if len(phi) != A.n or any(not 0 <= r < B.n for r in phi):
        raise ValueError("phi must map every state of A into B")
    if set(phi) != set(range(B.n)):
        raise ValueError("phi is not surjective")
    return verify_conjugacy(A, B, amalgamation_matrix(A, phi))


def set_partitions(items: Sequence[int]):
    """All partitions of ``items``, as lists of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for x in range(len(part)):
            yield part[:x] + [[first] + part[x]] + part[x + 1:]


def brute_force_coarsest_congruence(aug: AugmentedAutomaton) -> Partition:
    """The coarsest congruence, found by trying every partition.

    Also checks that it is the only congruence with that few classes and
    that it is coarser than every other congruence, raising
    ``AssertionError`` otherwise.
    """
    if aug.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} true states, got {aug.n}")
    extra = [(aug.i,), (aug.t,)]
    congruences = []
    for part in set_partitions(list(range(aug.n))):
        classes = [tuple(c) for c in part] + extra
        if is_congruence(aug, classes):
            congruences.append(classes)
    best = min(congruences, key=len)
    ties = [c for c in congruences if len(c) == len(best)]
    assert len(ties) == 1, "coarsest congruence is not unique"
    assert all(coarser_or_equal(best, c) for c in congruences), "coarsest congruence does not dominate"
    return Partition.from_classes(aug.size, best)
