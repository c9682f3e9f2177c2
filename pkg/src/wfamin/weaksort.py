"""Insertion-ordered buckets and the linear-time weak sort built on them.

A ``dict`` is already a hash map whose keys are threaded in first-insertion
order, so :class:`OrderedBucketMap` is a thin layer over one: the
directory only grows with distinct keys and iteration never looks at an
unused key.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, TypeVar

T = TypeVar("T")


def merge_last(bucket: list, owner, weight, add, zero) -> None:
    """Append ``[owner, weight]`` to ``bucket``, or fold it into the last pair.

    If the last pair has the same owner its weight becomes the semiring sum,
    and the pair is dropped when that sum is zero.
    """
    if bucket:
        last = bucket[-1]
        if last[0] == owner:
            k = add(last[1], weight)
            if k == zero:
                bucket.pop()
            else:
                last[1] = k
            return
    bucket.append([owner, weight])


class OrderedBucketMap:
    __slots__ = ("_buckets", "_size")

    def __init__(self):
        self._buckets: dict = {}
        self._size = 0

    def insert(self, key: Hashable, item) -> None:
        bucket = self._buckets.get(key)
        if bucket is None:
            self._buckets[key] = [item]
        else:
            bucket.append(item)
        self._size += 1

    def insert_merge_last(self, key: Hashable, owner, weight, add, zero) -> None:
        bucket = self._buckets.get(key)
        if bucket is None:
            self._buckets[key] = [[owner, weight]]
            self._size += 1
            return
        before = len(bucket)
        merge_last(bucket, owner, weight, add, zero)
        self._size += len(bucket) - before

    def keys(self):
        return self._buckets.keys()

    def items(self):
        return self._buckets.items()

    def values(self):
        return self._buckets.values()

    def __getitem__(self, key):
        return self._buckets[key]

    def __contains__(self, key) -> bool:
        return key in self._buckets

    def __len__(self) -> int:
        """Number of stored items, not of keys."""
        return self._size

    def clear(self) -> None:
        self._buckets.clear()
        self._size = 0


def weak_sort(items: Iterable[T], key: Callable[[T], Hashable]) -> tuple[list[T], list[list[T]]]:
    """Reorder ``items`` so that items with equal ``key`` are contiguous.

    Returns the reordered list and its groups, both in first-occurrence
    order of the keys.  Runs in time linear in the number of items.
    """
    buckets = OrderedBucketMap()
    for x in items:
        buckets.insert(key(x), x)
    groups = list(buckets.values())
    return [x for g in groups for x in g], groups
