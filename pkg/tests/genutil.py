"""Deterministic random generators and hypothesis strategies shared by tests."""

import random

from hypothesis import strategies as st

from atlstit import LassoHistory
from atlstit.syntax import (
    And,
    Atom,
    Box,
    CoalG,
    CoalU,
    CoalX,
    Globally,
    Next,
    Not,
    Stit,
    StratAbility,
    Until,
)

ATOMS = ("p", "q")
AGENTS = ("a", "b")


def rand_coalition(rng: random.Random, agents=AGENTS) -> frozenset:
    return frozenset(a for a in agents if rng.random() < 0.5)


def rand_atl(rng: random.Random, depth: int, atoms=ATOMS, agents=AGENTS):
    if depth <= 0:
        return Atom(rng.choice(atoms))
    kind = rng.choice(("atom", "not", "and", "cx", "cg", "cu"))
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "not":
        return Not(rand_atl(rng, depth - 1, atoms, agents))
    if kind == "and":
        return And(
            rand_atl(rng, depth - 1, atoms, agents),
            rand_atl(rng, depth - 1, atoms, agents),
        )
    coalition = rand_coalition(rng, agents)
    if kind == "cx":
        return CoalX(coalition, rand_atl(rng, depth - 1, atoms, agents))
    if kind == "cg":
        return CoalG(coalition, rand_atl(rng, depth - 1, atoms, agents))
    return CoalU(
        coalition,
        rand_atl(rng, depth - 1, atoms, agents),
        rand_atl(rng, depth - 1, atoms, agents),
    )


def rand_sx_md(rng: random.Random, depth: int, atoms=ATOMS, agents=AGENTS):
    """A moment-determined stit formula."""
    if depth <= 0:
        return Atom(rng.choice(atoms))
    kind = rng.choice(("atom", "not", "and", "box", "stit", "strat"))
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "not":
        return Not(rand_sx_md(rng, depth - 1, atoms, agents))
    if kind == "and":
        return And(
            rand_sx_md(rng, depth - 1, atoms, agents),
            rand_sx_md(rng, depth - 1, atoms, agents),
        )
    if kind == "box":
        return Box(_one_step(rng, depth - 1, atoms, agents))
    if kind == "stit":
        coalition = rand_coalition(rng, agents)
        if coalition:
            return Stit(coalition, rand_sx_md(rng, depth - 1, atoms, agents))
        return Stit(coalition, _one_step(rng, depth - 1, atoms, agents))
    return StratAbility(
        rand_coalition(rng, agents), _strat_body(rng, depth - 1, atoms, agents)
    )


def _one_step(rng, depth, atoms, agents):
    if rng.random() < 0.4:
        return Next(rand_sx_md(rng, depth - 1, atoms, agents))
    return rand_sx_md(rng, depth, atoms, agents)


def _strat_body(rng, depth, atoms, agents):
    kind = rng.choice(("md", "next", "globally", "until"))
    if kind == "md":
        return rand_sx_md(rng, depth, atoms, agents)
    if kind == "next":
        return Next(rand_sx_md(rng, depth - 1, atoms, agents))
    if kind == "globally":
        return Globally(rand_sx_md(rng, depth - 1, atoms, agents))
    return Until(
        rand_sx_md(rng, depth - 1, atoms, agents),
        rand_sx_md(rng, depth - 1, atoms, agents),
    )


def rand_sx_supported(rng: random.Random, depth: int, atoms=ATOMS, agents=AGENTS):
    """A stit formula inside the evaluator's supported fragment, possibly
    history-dependent at the top."""
    if depth <= 0:
        return rand_sx_md(rng, 0, atoms, agents)
    kind = rng.choice(("md", "not", "and", "next", "globally", "until"))
    if kind == "md":
        return rand_sx_md(rng, depth, atoms, agents)
    if kind == "not":
        return Not(rand_sx_supported(rng, depth - 1, atoms, agents))
    if kind == "and":
        return And(
            rand_sx_supported(rng, depth - 1, atoms, agents),
            rand_sx_supported(rng, depth - 1, atoms, agents),
        )
    if kind == "next":
        return Next(rand_sx_supported(rng, depth - 1, atoms, agents))
    if kind == "globally":
        return Globally(rand_sx_supported(rng, depth - 1, atoms, agents))
    return Until(
        rand_sx_supported(rng, depth - 1, atoms, agents),
        rand_sx_supported(rng, depth - 1, atoms, agents),
    )


def step_index(g, moment, h):
    """Advance an index by one position along its history."""
    from atlstit import lasso_suffix

    nxt = g.step(moment[-1], h.profile_at(0))
    return moment + (nxt,), lasso_suffix(g, h, 1)


def unrolled_globally(g, operand, moment, h):
    """Position-by-position check over 2*(stem+loop) steps, no periodicity."""
    from atlstit import SxIndex, eval_sx

    m2, h2 = moment, h
    for _ in range(2 * h.window()):
        if not eval_sx(g, operand, SxIndex(m2, h2)):
            return False
        m2, h2 = step_index(g, m2, h2)
    return True


def unrolled_until(g, left, right, moment, h):
    from atlstit import SxIndex, eval_sx

    m2, h2 = moment, h
    for _ in range(2 * h.window()):
        if eval_sx(g, right, SxIndex(m2, h2)):
            return True
        if not eval_sx(g, left, SxIndex(m2, h2)):
            return False
        m2, h2 = step_index(g, m2, h2)
    return False


def rand_lasso(rng: random.Random, g, w) -> LassoHistory:
    """A random delta-consistent lasso anchored at w (walk until a repeat)."""
    stem = []
    state = w
    for _ in range(rng.randint(0, len(g.states))):
        profile = rng.choice(list(g.profiles(state)))
        stem.append(profile)
        state = g.step(state, profile)
    trail = {state: 0}
    walk = []
    current = state
    while True:
        profile = rng.choice(list(g.profiles(current)))
        walk.append(profile)
        current = g.step(current, profile)
        if current in trail:
            split = trail[current]
            return LassoHistory(
                w, tuple(stem) + tuple(walk[:split]), tuple(walk[split:])
            )
        trail[current] = len(walk)


# hypothesis strategies ------------------------------------------------------

_atoms = st.sampled_from([Atom("p"), Atom("q"), Atom("r")])
_coalitions = st.sampled_from(
    [frozenset(), frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})]
)
# the concrete syntax reserves [] for historical necessity, so a printable
# stit operator needs a nonempty agent list
_nonempty_coalitions = st.sampled_from(
    [frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})]
)


def atl_formulas(max_leaves: int = 12):
    return st.recursive(
        _atoms,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda t: And(*t)),
            st.tuples(_coalitions, inner).map(lambda t: CoalX(*t)),
            st.tuples(_coalitions, inner).map(lambda t: CoalG(*t)),
            st.tuples(_coalitions, inner, inner).map(lambda t: CoalU(*t)),
        ),
        max_leaves=max_leaves,
    )


def sx_formulas(max_leaves: int = 12):
    return st.recursive(
        _atoms,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda t: And(*t)),
            inner.map(Next),
            inner.map(Globally),
            st.tuples(inner, inner).map(lambda t: Until(*t)),
            inner.map(Box),
            st.tuples(_nonempty_coalitions, inner).map(lambda t: Stit(*t)),
            st.tuples(_coalitions, inner).map(lambda t: StratAbility(*t)),
        ),
        max_leaves=max_leaves,
    )
