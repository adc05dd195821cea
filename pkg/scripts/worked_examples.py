"""Walk the bundled example automata through sort, prune, and colex."""

from __future__ import annotations

from copar.automaton import serialize_automaton, serialize_ordered_partition
from copar.colex import colex_order, serialize_colex
from copar.examples import (
    example_loop_dfa,
    example_quasi_wheeler_nfa,
    example_unordered_nfa,
    example_width_two_dfa,
)
from copar.prune import backward_walk, refine_with_pruning, serialize_pruned
from copar.refine import wheeler_preorder


def show_sort(name: str, a) -> None:
    print(f"== {name} ==")
    print(serialize_automaton(a), end="")
    res = wheeler_preorder(a)
    print(serialize_ordered_partition(res.partition), end="")
    print(f"QUASI_WHEELER: {'true' if res.quasi_wheeler else 'false'}")
    if res.quasi_wheeler:
        print("quotient:")
        print(serialize_automaton(res.quotient), end="")
    else:
        kind, witness = res.violation
        print(f"violated axiom: {kind} at {witness}")
    print()


def show_colex(name: str, a) -> None:
    print(f"== {name} ==")
    print(serialize_automaton(a), end="")
    for mode in ("inf", "sup"):
        p = refine_with_pruning(a, mode)
        print(serialize_pruned(p), end="")
        walks = {v: "".join(chr(ord("a") + c) for c in backward_walk(p, v, 6)) for v in range(a.n)}
        print(f"{mode} walks (6 letters): {walks}")
    print(serialize_colex(colex_order(a)), end="")
    print()


def main() -> None:
    show_sort("quasi-Wheeler NFA", example_quasi_wheeler_nfa())
    show_sort("NFA with no Wheeler order", example_unordered_nfa())
    show_colex("loop DFA", example_loop_dfa())
    show_colex("width-two DFA", example_width_two_dfa())


if __name__ == "__main__":
    main()
