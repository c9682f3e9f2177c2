"""Partitions of a state set, with O(1) state removal and a class queue.

Each class is a doubly linked list threaded through the ``next``/``prev``
arrays, which are indexed by state; a state's array slot is its location
handle, so unlinking it is constant time.  Class ids are never reused: a
class that is split loses its id, which silently invalidates any queue
entry pointing at it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class Block:
    __slots__ = ("id", "head", "size", "queued")

    def __init__(self, id: int):
        self.id = id
        self.head = -1
        self.size = 0
        self.queued = False

    def __repr__(self) -> str:
        return f"Block(id={self.id}, size={self.size})"


@dataclass
class SplitOutcome:
    classes: list[Block] = field(default_factory=list)
    was_queued: bool = False

    @property
    def split(self) -> bool:
        return len(self.classes) > 1


class Partition:
    def __init__(self, n: int):
        self.n = n
        self.block_of: list[Block | None] = [None] * n
        self.next = [-1] * n
        self.prev = [-1] * n
        self.queue: deque[tuple[Block, int]] = deque()
        self.stats = None
        self.moves = 0
        self._next_id = 0
        self._blocks: dict[int, Block] = {}

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        part = cls(n)
        for c in classes:
            part.new_class(c)
        if any(b is None for b in part.block_of):
            raise ValueError("classes do not cover every state")
        return part

    def _fresh_block(self) -> Block:
        block = Block(self._next_id)
        self._next_id += 1
        self._blocks[block.id] = block
        return block

    def _link(self, p: int, block: Block) -> None:
        head = block.head
        self.prev[p] = -1
        self.next[p] = head
        if head >= 0:
            self.prev[head] = p
        block.head = p
        block.size += 1
        self.block_of[p] = block

    def _unlink(self, p: int) -> None:
        block = self.block_of[p]
        nxt, prv = self.next[p], self.prev[p]
        if prv >= 0:
            self.next[prv] = nxt
        else:
            block.head = nxt
        if nxt >= 0:
            self.prev[nxt] = prv
        block.size -= 1

    def new_class(self, states: Iterable[int]) -> Block:
        block = self._fresh_block()
        for p in states:
            if self.block_of[p] is not None:
                raise ValueError(f"state {p} already belongs to a class")
            self._link(p, block)
        if block.size == 0:
            del self._blocks[block.id]
            raise ValueError("classes must be nonempty")
        return block

    def members(self, block: Block) -> Iterator[int]:
        p = block.head
        nxt = self.next
        while p >= 0:
            yield p
            p = nxt[p]

    def class_id(self, p: int) -> int:
        return self.block_of[p].id

    def block(self, class_id: int) -> Block:
        return self._blocks[class_id]

    def blocks(self) -> list[Block]:
        return list(self._blocks.values())

    def __len__(self) -> int:
        return len(self._blocks)

    def split(self, block: Block, groups: list[list[int]]) -> SplitOutcome:
        """Replace ``block`` by one class per group, plus the remainder.

        ``groups`` are disjoint nonempty lists of states of ``block``.  The
        states of ``block`` in no group stay where they are and form the
        remainder class; if there are none, the last group stays instead.
        Only moved states are touched, so the cost is linear in the size of
        the groups.  Every resulting class, the remainder included, carries
        a fresh id, listed in group order with the remainder last.
        """
        touched = sum(len(g) for g in groups)
        was_queued = block.queued
        if not groups or (touched == block.size and len(groups) == 1):
            return SplitOutcome([block], was_queued)
        moved = groups[:-1] if touched == block.size else groups
        new = []
        for group in moved:
            target = self._fresh_block()
            for p in group:
                self._unlink(p)
                self._link(p, target)
            self.moves += len(group)
            new.append(target)
        del self._blocks[block.id]
        block.id = self._next_id
        self._next_id += 1
        block.queued = False
        self._blocks[block.id] = block
        new.append(block)
        return SplitOutcome(new, was_queued)

    def enqueue(self, block: Block) -> None:
        if not block.queued:
            block.queued = True
            self.queue.append((block, block.id))

    def dequeue(self) -> Block | None:
        """Pop the oldest live class, skipping entries invalidated by splits."""
        queue = self.queue
        while queue:
            block, cid = queue.popleft()
            if block.id == cid and block.queued:
                block.queued = False
                return block
        return None

    def classes(self) -> list[tuple[int, ...]]:
        """All classes as sorted tuples, ordered by smallest member."""
        return sorted(tuple(sorted(self.members(b))) for b in self._blocks.values())

    def canonical(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(self.members(b)) for b in self._blocks.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.canonical() == other.canonical()

    __hash__ = None

    def __repr__(self) -> str:
        return f"Partition({self.classes()})"

    def check(self) -> None:
        """Assert the structural invariants; for tests."""
        seen = set()
        for cid, block in self._blocks.items():
            assert block.id == cid
            assert block.size > 0, "empty class"
            count, p, prv = 0, block.head, -1
            while p >= 0:
                assert self.block_of[p] is block
                assert self.prev[p] == prv
                assert p not in seen
                seen.add(p)
                count += 1
                prv, p = p, self.next[p]
            assert count == block.size
        assert seen == set(range(self.n))
        live = {(id(b), c) for b, c in self.queue if b.id == c and b.queued}
        for block in self._blocks.values():
            assert block.queued == ((id(block), block.id) in live)


def coarser_or_equal(coarse: Iterable[Iterable[int]], fine: Iterable[Iterable[int]]) -> bool:
    """Whether every class of ``fine`` lies inside some class of ``coarse``."""
    owner = {}
    for x, c in enumerate(coarse):
        for p in c:
            owner[p] = x
    for c in fine:
        c = list(c)
        if len({owner.get(p) for p in c}) != 1 or owner.get(c[0]) is None:
            return False
    return True
