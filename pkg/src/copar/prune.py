"""Refinement with pruning: one kept in-edge per state, infimum or supremum side.

Pruning runs the ordered refinement on a DFA and, whenever a part splits
with states fed from both ends of the splitter, deletes the in-edges from
the side that comes later in the part order. What survives per state is a
set of equivalent in-edges; the kept one (smallest source id) spells, walked
backwards, the co-lex smallest (direction 'inf') or greatest ('sup')
string reaching the state, letter by letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from copar.automaton import Automaton, OrderedPartition, serialize_automaton
from copar.partition import Refinement, init_refinement, run_refinement
from copar.refine import require_clean


@dataclass
class PrunedAutomaton:
    """Result of a pruning run over a DFA.

    kept_src[v] is the source of v's kept in-edge (-1 for the source state);
    the in-letter of v is unchanged from the base automaton. partition is
    the final ordered partition of the pruned run.
    """

    base: Automaton
    direction: str
    kept_src: np.ndarray
    partition: OrderedPartition
    rounds: int
    max_splitter_count: int
    _surviving_ids: np.ndarray = field(repr=False)
    _deleted_ids: np.ndarray = field(repr=False)

    def surviving_edges(self) -> list[tuple[int, int, int]]:
        """Edges never deleted by pruning, sorted."""
        a = self.base
        return sorted(
            (int(a.esrc[e]), int(a.edst[e]), int(a.elab[e])) for e in self._surviving_ids
        )

    def deleted_edges(self) -> list[tuple[int, int, int]]:
        """Edges deleted by pruning, sorted."""
        a = self.base
        return sorted(
            (int(a.esrc[e]), int(a.edst[e]), int(a.elab[e])) for e in self._deleted_ids
        )

    def survivor_automaton(self) -> Automaton:
        """The base automaton restricted to the surviving edges."""
        a = self.base
        ids = self._surviving_ids
        return Automaton(a.n, a.sigma, a.source, (a.esrc[ids], a.edst[ids], a.elab[ids]))

    def kept_automaton(self) -> Automaton:
        """The base automaton restricted to the kept in-edges (one per state)."""
        a = self.base
        lam = a.in_labels()
        edges = [
            (int(self.kept_src[v]), v, int(lam[v])) for v in range(a.n) if v != a.source
        ]
        return Automaton(a.n, a.sigma, a.source, sorted(edges))


def refine_with_pruning(a: Automaton, direction: str) -> PrunedAutomaton:
    """Run pruning refinement over a DFA, toward 'inf' or 'sup' strings.

    'inf' starts from the ascending letter order and 'sup' from the
    descending one; both keep, per contested state, the in-edges from the
    side of the splitter that comes first in the part order. Raises
    ValueError for nondeterministic input and ValidationError for unclean
    automata.
    """
    if direction not in ("inf", "sup"):
        raise ValueError(f"direction must be 'inf' or 'sup', got {direction!r}")
    require_clean(a)
    if not a.is_deterministic():
        raise ValueError("DFA required: pruning is defined for deterministic automata only")
    letter_order = "ascending" if direction == "inf" else "descending"
    ref = init_refinement(a, letter_order)
    run_refinement(ref, "keep-first")
    return _assemble(a, direction, ref)


def _assemble(a: Automaton, direction: str, ref: Refinement) -> PrunedAutomaton:
    n = a.n
    lens = ref.in_len[:n].astype(np.int64)
    bases = ref.in_ptr[:n].astype(np.int64)
    empty = np.flatnonzero((lens == 0) & (np.arange(n) != a.source))
    if empty.size:
        raise RuntimeError(f"pruning removed every in-edge of state {int(empty[0])}")
    total = int(lens.sum())
    starts = np.cumsum(lens) - lens
    idx = np.repeat(bases - starts, lens) + np.arange(total, dtype=np.int64)
    live = ref.in_lst[idx]
    kept = np.full(n, -1, dtype=np.int64)
    nz = np.flatnonzero(lens)
    if nz.size:
        kept[nz] = np.minimum.reduceat(a.esrc[live], starts[nz])
    kept[a.source] = -1
    return PrunedAutomaton(
        base=a,
        direction=direction,
        kept_src=kept,
        partition=ref.snapshot_partition(),
        rounds=ref.rounds,
        max_splitter_count=ref.max_splitter_count,
        _surviving_ids=np.sort(live),
        _deleted_ids=np.array(ref.deleted_edge_ids(), dtype=np.int64),
    )


def backward_walk(p: PrunedAutomaton, v: int, k: int) -> tuple[int, ...]:
    """Letters of the length-<=k backward walk from v along kept in-edges.

    Returned oldest letter first, i.e. as the string it spells. The walk
    stops early at the source.
    """
    if not 0 <= v < p.base.n:
        raise ValueError(f"state {v} out of range")
    lam = p.base.in_labels()
    letters: list[int] = []
    cur = v
    for _ in range(k):
        if cur == p.base.source:
            break
        letters.append(int(lam[cur]))
        cur = int(p.kept_src[cur])
    return tuple(reversed(letters))


def serialize_pruned(p: PrunedAutomaton) -> str:
    """Serialize the kept-edge automaton, tagged with the pruning direction."""
    return serialize_automaton(p.kept_automaton(), comment=f"pruned {p.direction}")
