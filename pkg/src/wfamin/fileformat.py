"""Text formats: automaton files (JSON) and partition files.

An automaton file is a JSON object::

    {
      "semiring": "Z",
      "alphabet": ["a", "b"],
      "states": 3,
      "names": ["p", "q", "r"],
      "initial": [[0, 2], [1, 1]],
      "final": [[1, 1], [2, 1]],
      "transitions": [
        [0, "a", -1, 0],
        ...
      ]
    }

``names`` is optional.  Over ``B`` the weight is omitted: entries are
``[state]`` and ``[p, letter, q]``.  Transitions are sorted by
``(p, letter, q)`` using alphabet order.  :func:`dumps` is canonical, so
parsing and re-serialising a canonical file gives identical bytes.

A partition file has one class per line, states separated by whitespace;
``i`` and ``t`` are implicit.
"""
from __future__ import annotations

import json
from pathlib import Path

from .automaton import AutomatonError, WeightedAutomaton
from .semiring import BOOLEAN, SEMIRINGS


class FormatError(ValueError):
    """Malformed automaton or partition file."""


def _weight(semiring, raw, where):
    if semiring is BOOLEAN:
        raise FormatError(f"{where}: Boolean entries carry no weight")
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise FormatError(f"{where}: weight must be an integer, got {raw!r}")
    if raw == semiring.zero:
        raise FormatError(f"{where}: explicit zero weight")
    return raw


def _state(n, raw, where):
    if isinstance(raw, bool) or not isinstance(raw, int) or not 0 <= raw < n:
        raise FormatError(f"{where}: bad state {raw!r}")
    return raw


def from_dict(doc) -> WeightedAutomaton:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    missing = {"semiring", "alphabet", "states", "initial", "final", "transitions"} - doc.keys()
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    unknown = doc.keys() - {"semiring", "alphabet", "states", "names", "initial", "final",
                            "transitions"}
    if unknown:
        raise FormatError(f"unknown fields: {sorted(unknown)}")
    semiring = SEMIRINGS.get(doc["semiring"])
    if semiring is None:
        raise FormatError(f"unknown semiring {doc['semiring']!r}")
    alphabet = doc["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(a, str) and len(a) == 1
                                                 for a in alphabet):
        raise FormatError("alphabet must be a list of single-character strings")
    n = doc["states"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise FormatError("states must be a nonnegative integer")
    try:
        aut = WeightedAutomaton(semiring, alphabet, n, doc.get("names"))
    except AutomatonError as exc:
        raise FormatError(str(exc)) from None

    boolean = semiring is BOOLEAN
    for field, setter in (("initial", aut.set_initial), ("final", aut.set_final)):
        seen = set()
        for entry in doc[field]:
            if not isinstance(entry, list) or len(entry) != (1 if boolean else 2):
                raise FormatError(f"{field}: bad entry {entry!r}")
            p = _state(n, entry[0], field)
            if p in seen:
                raise FormatError(f"{field}: duplicate state {p}")
            seen.add(p)
            setter(p, True if boolean else _weight(semiring, entry[1], field))

    for entry in doc["transitions"]:
        if not isinstance(entry, list) or len(entry) != (3 if boolean else 4):
            raise FormatError(f"transitions: bad entry {entry!r}")
        p, a, q = entry[0], entry[1], entry[-1]
        p = _state(n, p, "transitions")
        q = _state(n, q, "transitions")
        if a not in aut.alphabet:
            raise FormatError(f"transitions: letter {a!r} not in alphabet")
        if (p, a, q) in aut.transitions:
            raise FormatError(f"transitions: duplicate triple {(p, a, q)!r}")
        k = True if boolean else _weight(semiring, entry[2], "transitions")
        aut.transitions[(p, a, q)] = k
    return aut


def loads(text: str) -> WeightedAutomaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load(path) -> WeightedAutomaton:
    return loads(Path(path).read_text())


def dumps(aut: WeightedAutomaton) -> str:
    boolean = aut.semiring is BOOLEAN
    order = {a: x for x, a in enumerate(aut.alphabet)}
    enc = json.dumps

    def vec(table):
        return [[p] if boolean else [p, table[p]] for p in sorted(table)]

    lines = ["{",
             f'  "semiring": {enc(aut.semiring.name)},',
             f'  "alphabet": {enc(list(aut.alphabet))},',
             f'  "states": {aut.n},']
    if aut.names is not None:
        lines.append(f'  "names": {enc(aut.names)},')
    lines.append(f'  "initial": {enc(vec(aut.initial))},')
    lines.append(f'  "final": {enc(vec(aut.final))},')
    keys = sorted(aut.transitions, key=lambda e: (e[0], order[e[1]], e[2]))
    if not keys:
        lines.append('  "transitions": []')
    else:
        lines.append('  "transitions": [')
        rows = []
        for p, a, q in keys:
            row = [p, a, q] if boolean else [p, a, aut.transitions[(p, a, q)], q]
            rows.append("    " + enc(row))
        lines.append(",\n".join(rows))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(aut: WeightedAutomaton, path) -> None:
    Path(path).write_text(dumps(aut))


def format_partition(aut: WeightedAutomaton, classes) -> str:
    """One class per line, states sorted by id and written by name."""
    rows = sorted(sorted(c) for c in classes)
    return "".join(" ".join(aut.state_name(p) for p in row) + "\n" for row in rows)


def parse_partition(aut: WeightedAutomaton, text: str) -> list[list[int]]:
    """Parse a partition file; it must cover every true state exactly once."""
    classes = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens:
            continue
        cls = []
        for tok in tokens:
            try:
                p = aut.state_index(tok)
            except AutomatonError:
                raise FormatError(f"line {lineno}: unknown state {tok!r}") from None
            if p in seen:
                raise FormatError(f"line {lineno}: state {tok!r} listed twice")
            seen.add(p)
            cls.append(p)
        classes.append(cls)
    if len(seen) != aut.n:
        missing = sorted(set(range(aut.n)) - seen)
        raise FormatError(f"partition misses states {[aut.state_name(p) for p in missing]}")
    return classes
