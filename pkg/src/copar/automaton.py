"""Automaton data type, file formats, validation and basic constructions.

States are 0..n-1, letters 0..sigma-1, with a designated source state. The
text format is a header ``NFA <n> <m> <source> <sigma>`` followed by m edge
lines ``<from> <to> <letter>``; ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class ParseError(ValueError):
    """Raised on malformed input text; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    """Raised when an operation requires a clean automaton but validate() found problems."""

    def __init__(self, diagnostics: list[Diagnostic]):
        text = "; ".join(str(d) for d in diagnostics)
        super().__init__(f"automaton failed validation: {text}")
        self.diagnostics = diagnostics


class DuplicateEdgeWarning(UserWarning):
    """Emitted when parsing drops duplicate edge lines."""


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding: a machine-readable code, its subject and a message."""

    code: str
    subject: int
    message: str

    def __str__(self) -> str:
        return f"{self.code}({self.subject}): {self.message}"


class Automaton:
    """Edge-labeled automaton with a source state.

    Edges are stored as three parallel int64 arrays (esrc, edst, elab) in
    construction order. Duplicate edges are rejected; use parse_automaton to
    deduplicate text input with a warning instead.
    """

    __slots__ = ("n", "sigma", "source", "esrc", "edst", "elab", "_lam", "_out", "_in")

    def __init__(
        self,
        n: int,
        sigma: int,
        source: int,
        edges: Iterable[tuple[int, int, int]] | tuple[np.ndarray, np.ndarray, np.ndarray],
    ):
        if n < 1:
            raise ValueError(f"need at least one state, got n={n}")
        if sigma < 0:
            raise ValueError(f"alphabet size must be >= 0, got {sigma}")
        if not 0 <= source < n:
            raise ValueError(f"source {source} out of range for n={n}")
        if isinstance(edges, tuple) and len(edges) == 3 and isinstance(edges[0], np.ndarray):
            esrc = np.asarray(edges[0], dtype=np.int64).copy()
            edst = np.asarray(edges[1], dtype=np.int64).copy()
            elab = np.asarray(edges[2], dtype=np.int64).copy()
        else:
            rows = list(edges)
            esrc = np.fromiter((r[0] for r in rows), dtype=np.int64, count=len(rows))
            edst = np.fromiter((r[1] for r in rows), dtype=np.int64, count=len(rows))
            elab = np.fromiter((r[2] for r in rows), dtype=np.int64, count=len(rows))
        if not (len(esrc) == len(edst) == len(elab)):
            raise ValueError("edge arrays must have equal length")
        m = len(esrc)
        if m:
            if esrc.min() < 0 or esrc.max() >= n or edst.min() < 0 or edst.max() >= n:
                raise ValueError("edge endpoint out of range")
            if elab.min() < 0 or elab.max() >= sigma:
                raise ValueError("edge letter out of range")
            key = (esrc * n + edst) * max(sigma, 1) + elab
            if len(np.unique(key)) != m:
                raise ValueError("duplicate edges are not allowed")
        self.n = int(n)
        self.sigma = int(sigma)
        self.source = int(source)
        self.esrc = esrc
        self.edst = edst
        self.elab = elab
        self._lam: np.ndarray | None = None
        self._out: list[list[tuple[int, int]]] | None = None
        self._in: list[list[tuple[int, int]]] | None = None

    @property
    def m(self) -> int:
        return len(self.esrc)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield edges (from, to, letter) in storage order."""
        for i in range(self.m):
            yield int(self.esrc[i]), int(self.edst[i]), int(self.elab[i])

    def sorted_edges(self) -> list[tuple[int, int, int]]:
        """Edges sorted by (from, to, letter); the canonical order."""
        return sorted(self.edges())

    def in_labels(self) -> np.ndarray:
        """Per-state in-letter; -1 for states with no in-edges.

        For states whose in-edges carry several distinct letters (flagged by
        validate) this reports the smallest such letter.
        """
        if self._lam is None:
            lam = np.full(self.n, -1, dtype=np.int64)
            if self.m:
                order = np.lexsort((self.elab, self.edst))
                # visit larger letters first so the smallest per state wins
                for i in order[::-1]:
                    lam[self.edst[i]] = self.elab[i]
            self._lam = lam
        return self._lam

    def out_map(self) -> list[list[tuple[int, int]]]:
        """Adjacency out_map()[u] = [(v, letter), ...] in storage order."""
        if self._out is None:
            out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
            for u, v, a in self.edges():
                out[u].append((v, a))
            self._out = out
        return self._out

    def in_map(self) -> list[list[tuple[int, int]]]:
        """Adjacency in_map()[v] = [(u, letter), ...] in storage order."""
        if self._in is None:
            inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
            for u, v, a in self.edges():
                inc[v].append((u, a))
            self._in = inc
        return self._in

    def is_deterministic(self) -> bool:
        """True when no state has two out-edges with the same letter."""
        if self.m == 0:
            return True
        key = self.esrc * max(self.sigma, 1) + self.elab
        return len(np.unique(key)) == self.m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self.n == other.n
            and self.sigma == other.sigma
            and self.source == other.source
            and self.sorted_edges() == other.sorted_edges()
        )

    def __repr__(self) -> str:
        return f"Automaton(n={self.n}, m={self.m}, source={self.source}, sigma={self.sigma})"


def _strip_comment(line: str) -> str:
    hash_pos = line.find("#")
    if hash_pos >= 0:
        line = line[:hash_pos]
    return line.strip()


def parse_automaton(text: str) -> Automaton:
    """Parse the NFA text format.

    Duplicate edge lines are dropped with a DuplicateEdgeWarning. Malformed
    input raises ParseError with the offending 1-based line number.
    """
    header: tuple[int, int, int, int] | None = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    dupes = 0
    expected_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "NFA":
                raise ParseError(lineno, f"expected 'NFA' header, got {fields[0]!r}")
            if len(fields) != 5:
                raise ParseError(lineno, "header needs exactly 'NFA <n> <m> <source> <sigma>'")
            try:
                n, expected_m, source, sigma = (int(f) for f in fields[1:])
            except ValueError:
                raise ParseError(lineno, "header fields must be integers") from None
            if n < 1:
                raise ParseError(lineno, f"need at least one state, got n={n}")
            if expected_m < 0 or sigma < 0:
                raise ParseError(lineno, "edge count and alphabet size must be >= 0")
            if not 0 <= source < n:
                raise ParseError(lineno, f"source {source} out of range for n={n}")
            header = (n, expected_m, source, sigma)
            continue
        if len(edges) + dupes >= expected_m:
            raise ParseError(lineno, f"more than the declared {expected_m} edges")
        if len(fields) != 3:
            raise ParseError(lineno, "edge line needs exactly '<from> <to> <letter>'")
        try:
            u, v, a = (int(f) for f in fields)
        except ValueError:
            raise ParseError(lineno, "edge fields must be integers") from None
        n, _, _, sigma = header
        if not 0 <= u < n or not 0 <= v < n:
            raise ParseError(lineno, f"edge endpoint out of range for n={n}")
        if not 0 <= a < sigma:
            raise ParseError(lineno, f"letter {a} out of range for sigma={sigma}")
        if (u, v, a) in seen:
            dupes += 1
            warnings.warn(
                f"line {lineno}: duplicate edge ({u}, {v}, {a}) dropped",
                DuplicateEdgeWarning,
                stacklevel=2,
            )
            continue
        seen.add((u, v, a))
        edges.append((u, v, a))
    if header is None:
        raise ParseError(1, "empty input: missing 'NFA' header")
    n, expected_m, source, sigma = header
    if len(edges) + dupes != expected_m:
        raise ParseError(
            len(text.splitlines()) + 1,
            f"declared {expected_m} edges but found {len(edges) + dupes}",
        )
    return Automaton(n, sigma, source, edges)


def serialize_automaton(a: Automaton, comment: str | None = None) -> str:
    """Render the NFA text format with edges sorted by (from, to, letter)."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"NFA {a.n} {a.m} {a.source} {a.sigma}")
    lines.extend(f"{u} {v} {c}" for u, v, c in a.sorted_edges())
    return "\n".join(lines) + "\n"


def reachable_mask(a: Automaton) -> np.ndarray:
    """Boolean mask of states reachable from the source (vectorized BFS)."""
    n = a.n
    visited = np.zeros(n, dtype=bool)
    visited[a.source] = True
    if a.m == 0:
        return visited
    order = np.argsort(a.esrc, kind="stable")
    dst_by_src = a.edst[order]
    deg = np.bincount(a.esrc, minlength=n)
    ptr = np.zeros(n, dtype=np.int64)
    if n > 1:
        ptr[1:] = np.cumsum(deg)[:-1]
    frontier = np.array([a.source], dtype=np.int64)
    while frontier.size:
        starts = ptr[frontier]
        counts = deg[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        ends = np.cumsum(counts)
        idx = np.repeat(starts - (ends - counts), counts) + np.arange(total)
        targets = dst_by_src[idx]
        targets = targets[~visited[targets]]
        if targets.size == 0:
            break
        frontier = np.unique(targets)
        visited[frontier] = True
    return visited


def validate(a: Automaton) -> list[Diagnostic]:
    """Check the working assumptions; returns an empty list for a clean automaton.

    Findings: states unreachable from the source, in-edges of the source,
    states whose in-edges carry more than one letter, and declared letters
    that label no edge.
    """
    out: list[Diagnostic] = []
    visited = reachable_mask(a)
    for v in np.flatnonzero(~visited):
        out.append(Diagnostic("unreachable", int(v), "state is unreachable from the source"))
    if a.m:
        if bool(np.any(a.edst == a.source)):
            out.append(Diagnostic("source-in-edge", a.source, "source state has an in-edge"))
        pairs = np.unique(a.edst * np.int64(a.sigma + 1) + a.elab)
        pair_dst = pairs // (a.sigma + 1)
        letters_per_state = np.bincount(pair_dst, minlength=a.n)
        for v in np.flatnonzero(letters_per_state > 1):
            letters = ",".join(str(int(c % (a.sigma + 1))) for c in pairs[pair_dst == v])
            out.append(
                Diagnostic(
                    "in-label-conflict", int(v), f"in-edges carry distinct letters {{{letters}}}"
                )
            )
    used = np.zeros(a.sigma, dtype=bool)
    if a.m:
        used[a.elab] = True
    for c in np.flatnonzero(~used):
        out.append(Diagnostic("unused-letter", int(c), "letter labels no edge"))
    out.sort(key=lambda d: (d.code, d.subject))
    return out


def make_input_consistent(a: Automaton) -> tuple[Automaton, list[int]]:
    """Split states by incoming letter so every state has a unique in-letter.

    Returns the rewritten automaton plus a mapping from each new state to the
    original state it copies. The construction preserves the recognized
    string set and determinism; each state gains at most one copy per letter,
    so the result has at most sigma * n states. An already consistent
    automaton comes back unchanged with the identity mapping.
    """
    in_letters: list[set[int]] = [set() for _ in range(a.n)]
    for _, v, c in a.edges():
        in_letters[v].add(c)
    copies: list[tuple[int, int]] = [(a.source, -1)]  # the start copy takes no in-letter
    for v in range(a.n):
        for c in sorted(in_letters[v]):
            copies.append((v, c))
    index = {vc: i for i, vc in enumerate(copies)}
    edges = []
    for i, (u, _) in enumerate(copies):
        for v, c in a.out_map()[u]:
            edges.append((i, index[(v, c)], c))
    edges = sorted(set(edges))
    mapping = [v for v, _ in copies]
    return Automaton(len(copies), a.sigma, 0, edges), mapping


def reverse_automaton(a: Automaton) -> Automaton:
    """Flip every edge; letters stay put.

    The result usually breaks the input-consistency assumptions (it is meant
    for oracles that run on the reversed automaton), so it is exempt from
    validate() expectations. The source field is carried over unchanged and
    has no particular meaning on the reversal.
    """
    return Automaton(a.n, a.sigma, a.source, (a.edst.copy(), a.esrc.copy(), a.elab.copy()))


def quotient(a: Automaton, p: OrderedPartition) -> Automaton:
    """Collapse each part of p to one state, keeping p's part order as the state order.

    The part holding the source must be a singleton. Class i of the result is
    part i of p; parallel edges collapse.
    """
    if p.n != a.n:
        raise ValueError(f"partition covers {p.n} states, automaton has {a.n}")
    cls = p.as_class_array()
    source_cls = int(cls[a.source])
    if len(p.parts[source_cls]) != 1:
        raise ValueError("source class must be a singleton")
    k = np.int64(p.k)
    width = np.int64(a.sigma + 1)
    key = np.unique((cls[a.esrc] * k + cls[a.edst]) * width + a.elab)
    lab = key % width
    rest = key // width
    return Automaton(p.k, a.sigma, source_cls, (rest // k, rest % k, lab))


def path_dfa(s: Sequence[int]) -> Automaton:
    """Build the path automaton of a string: state i reads prefix s[:i].

    Letters are remapped monotonically onto 0..k-1 (k = distinct letters of
    s) so the result uses every declared letter; monotone remaps preserve all
    co-lex comparisons.
    """
    distinct = sorted(set(int(c) for c in s))
    if any(c < 0 for c in distinct):
        raise ValueError("letters must be >= 0")
    remap = {c: i for i, c in enumerate(distinct)}
    edges = [(i, i + 1, remap[int(c)]) for i, c in enumerate(s)]
    return Automaton(len(s) + 1, len(distinct), 0, edges)


@dataclass
class OrderedPartition:
    """An ordered list of disjoint state sets covering 0..n-1.

    Part order is semantically meaningful (candidate state order); state ids
    inside each part are kept sorted ascending.
    """

    parts: list[list[int]]
    _part_of: dict[int, int] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.parts = [sorted(int(v) for v in part) for part in self.parts]
        seen: set[int] = set()
        total = 0
        for i, part in enumerate(self.parts):
            if not part:
                raise ValueError(f"part {i} is empty")
            total += len(part)
            seen.update(part)
        if seen != set(range(total)):
            raise ValueError("parts must partition the states 0..n-1")

    @property
    def n(self) -> int:
        return sum(len(part) for part in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def part_of(self) -> dict[int, int]:
        """Map each state to its part index."""
        if self._part_of is None:
            self._part_of = {v: i for i, part in enumerate(self.parts) for v in part}
        return self._part_of

    def as_sets(self) -> set[frozenset[int]]:
        """The unordered partition (for comparisons that ignore part order)."""
        return {frozenset(part) for part in self.parts}

    def as_class_array(self) -> np.ndarray:
        """as_class_array()[v] = index of v's part (vectorized part_of)."""
        members = np.fromiter(
            (v for part in self.parts for v in part), dtype=np.int64, count=self.n
        )
        sizes = np.fromiter((len(part) for part in self.parts), dtype=np.int64, count=self.k)
        cls = np.empty(self.n, dtype=np.int64)
        cls[members] = np.repeat(np.arange(self.k, dtype=np.int64), sizes)
        return cls

    def order_key(self) -> list[int]:
        """order_key()[v] = index of v's part; the preorder as positions."""
        part_of = self.part_of()
        return [part_of[v] for v in range(self.n)]


def serialize_ordered_partition(p: OrderedPartition) -> str:
    """Render the ORDPART format: header then one 'index: members' line per part."""
    lines = [f"ORDPART {p.k}"]
    for i, part in enumerate(p.parts):
        lines.append(f"{i}: " + " ".join(str(v) for v in part))
    return "\n".join(lines) + "\n"


def parse_ordered_partition(text: str) -> OrderedPartition:
    """Parse the ORDPART format; raises ParseError on malformed input."""
    k: int | None = None
    parts: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if k is None:
            if fields[0] != "ORDPART" or len(fields) != 2:
                raise ParseError(lineno, "expected 'ORDPART <k>' header")
            try:
                k = int(fields[1])
            except ValueError:
                raise ParseError(lineno, "part count must be an integer") from None
            if k < 1:
                raise ParseError(lineno, f"need at least one part, got {k}")
            continue
        if len(parts) >= k:
            raise ParseError(lineno, f"more than the declared {k} parts")
        if not fields[0].endswith(":"):
            raise ParseError(lineno, "part line must start with '<index>:'")
        try:
            idx = int(fields[0][:-1])
            members = [int(f) for f in fields[1:]]
        except ValueError:
            raise ParseError(lineno, "part line fields must be integers") from None
        if idx != len(parts):
            raise ParseError(lineno, f"expected part index {len(parts)}, got {idx}")
        if not members:
            raise ParseError(lineno, "part has no members")
        parts.append(members)
    if k is None:
        raise ParseError(1, "empty input: missing 'ORDPART' header")
    if len(parts) != k:
        raise ParseError(len(text.splitlines()) + 1, f"declared {k} parts but found {len(parts)}")
    try:
        return OrderedPartition(parts)
    except ValueError as exc:
        raise ParseError(len(text.splitlines()) + 1, str(exc)) from None


def serialize_order(order: Sequence[int]) -> str:
    """Render a total state order as 'ORDER <n>' plus the ids smallest-first."""
    ids = " ".join(str(v) for v in order)
    return f"ORDER {len(order)}\n{ids}\n"


def parse_order(text: str) -> list[int]:
    """Parse the ORDER format into a permutation of 0..n-1."""
    n: int | None = None
    ids: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "ORDER" or len(fields) != 2:
                raise ParseError(lineno, "expected 'ORDER <n>' header")
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(lineno, "state count must be an integer") from None
            if n < 1:
                raise ParseError(lineno, f"need at least one state, got {n}")
            continue
        try:
            ids.extend(int(f) for f in fields)
        except ValueError:
            raise ParseError(lineno, "order entries must be integers") from None
        if len(ids) > n:
            raise ParseError(lineno, f"more than the declared {n} states")
    if n is None:
        raise ParseError(1, "empty input: missing 'ORDER' header")
    if len(ids) != n or sorted(ids) != list(range(n)):
        raise ParseError(
            len(text.splitlines()) + 1, f"entries must be a permutation of 0..{n - 1}"
        )
    return ids
