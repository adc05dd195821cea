"""Small fixed automata used across tests, docs, and the demo scripts."""

from __future__ import annotations

from copar.automaton import Automaton


def example_quasi_wheeler_nfa() -> Automaton:
    """Five-state NFA whose coarsest forward-stable quotient is Wheeler.

    States 1 and 2 collapse into one class; the refined partition is
    <{0}, {1, 2}, {3}, {4}> and the quotient satisfies the Wheeler axioms
    under its positional order.
    """
    edges = [
        (0, 1, 0),
        (0, 2, 0),
        (0, 3, 1),
        (1, 3, 1),
        (1, 4, 1),
        (2, 3, 1),
        (2, 4, 1),
    ]
    return Automaton(5, 2, 0, edges)


def example_unordered_nfa() -> Automaton:
    """Four-state NFA over one letter that admits no Wheeler order.

    Refinement leaves all states separate, <{0}, {1}, {2}, {3}>, and the
    identity order on that partition breaks the target-order axiom.
    """
    edges = [
        (0, 1, 0),
        (0, 2, 0),
        (0, 3, 0),
        (1, 2, 0),
        (2, 3, 0),
        (2, 2, 0),
    ]
    return Automaton(4, 1, 0, edges)


def example_loop_dfa() -> Automaton:
    """Three-state DFA with an infinite smallest reaching string.

    State 2 is reached by b a a a ... arbitrarily long: its inf string is
    the limit a^omega (inf pruning keeps the loop edge), while its sup
    string is the finite b a (sup pruning keeps the path edge).
    """
    edges = [
        (0, 1, 1),
        (1, 2, 0),
        (2, 2, 0),
    ]
    return Automaton(3, 2, 0, edges)


def example_width_two_dfa() -> Automaton:
    """Six-state DFA whose smallest co-lex order has width exactly two.

    States 4 and 5 have incomparable rank intervals, so no single chain
    covers the order; two chains do.
    """
    edges = [
        (0, 1, 0),
        (0, 2, 1),
        (0, 3, 2),
        (1, 4, 0),
        (3, 4, 0),
        (2, 5, 0),
    ]
    return Automaton(6, 3, 0, edges)
