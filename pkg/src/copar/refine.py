"""Full refinement runs: coarsest forward-stable partition, Wheeler preorder."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from copar.automaton import (
    Automaton,
    OrderedPartition,
    ValidationError,
    quotient,
    validate,
)
from copar.partition import init_refinement, run_refinement


@dataclass
class WheelerPreorder:
    """Result of sorting an NFA: the preorder, its quotient and the Wheeler flag.

    The quotient's state order (identity) is the candidate Wheeler order;
    quasi_wheeler reports whether it satisfies the Wheeler axioms, with the
    first violation when it does not.
    """

    partition: OrderedPartition
    quotient: Automaton
    quasi_wheeler: bool
    violation: tuple | None
    rounds: int
    max_splitter_count: int


def require_clean(a: Automaton) -> None:
    """Raise ValidationError unless validate(a) is silent."""
    diagnostics = validate(a)
    if diagnostics:
        raise ValidationError(diagnostics)


def refine_all(a: Automaton, letter_order: str = "ascending") -> OrderedPartition:
    """Coarsest forward-stable refinement of the in-letter partition, ordered.

    Deterministic: identical inputs give identical outputs. The input must
    pass validate(). letter_order picks the initial block order (ascending
    puts the source block first, descending reverses the letter blocks).
    """
    require_clean(a)
    ref = init_refinement(a, letter_order)
    run_refinement(ref, "off")
    return ref.snapshot_partition()


def wheeler_preorder(a: Automaton) -> WheelerPreorder:
    """Sort an NFA: Wheeler preorder, quotient automaton and quasi-Wheeler flag."""
    require_clean(a)
    ref = init_refinement(a, "ascending")
    run_refinement(ref, "off")
    partition = ref.snapshot_partition()
    q = quotient(a, partition)
    ok, violation = _identity_wheeler_check(q)
    return WheelerPreorder(
        partition=partition,
        quotient=q,
        quasi_wheeler=ok,
        violation=violation,
        rounds=ref.rounds,
        max_splitter_count=ref.max_splitter_count,
    )


def _identity_wheeler_check(a: Automaton) -> tuple[bool, tuple | None]:
    """Check the Wheeler axioms for the identity order of a, vectorized.

    Returns (True, None) or (False, first violation). Independent of the
    plain-Python oracle checker on purpose; tests compare the two.
    """
    if a.source != 0:
        return False, ("source-not-first", (int(a.source),))
    lam = a.in_labels()
    if a.m:
        pairs = np.unique(a.edst * np.int64(a.sigma + 1) + a.elab)
        per_state = np.bincount(pairs // (a.sigma + 1), minlength=a.n)
        conflicted = np.flatnonzero(per_state > 1)
        if conflicted.size:
            return False, ("in-label-conflict", (int(conflicted[0]),))
    drop = np.flatnonzero(lam[1:] < lam[:-1])
    if drop.size:
        i = int(drop[0])
        return False, ("letter-order", (i, i + 1))
    for c in range(a.sigma):
        idx = np.flatnonzero(a.elab == c)
        if idx.size < 2:
            continue
        u = a.esrc[idx]
        v = a.edst[idx]
        order = np.lexsort((v, u))
        us = u[order]
        vs = v[order]
        starts = np.flatnonzero(np.concatenate(([True], us[1:] != us[:-1])))
        if starts.size < 2:
            continue
        gmin = np.minimum.reduceat(vs, starts)
        gmax = np.maximum.reduceat(vs, starts)
        run = np.maximum.accumulate(gmax)
        bad = np.flatnonzero(gmin[1:] < run[:-1])
        if bad.size:
            gi = int(bad[0]) + 1
            j = int(np.flatnonzero(gmax[:gi] == run[gi - 1])[0])
            witness_early = (int(us[starts[j]]), int(gmax[j]))
            witness_late = (int(us[starts[gi]]), int(gmin[gi]))
            return False, ("target-order", (witness_early, witness_late, c))
    return True, None
