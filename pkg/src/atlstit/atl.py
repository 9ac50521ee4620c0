"""ATL model checking over a CGS.

Two routes are kept deliberately separate:

  eval_atl        fixpoint labeling over the controllable-predecessor operator
  eval_atl_oracle direct quantifier semantics: enumerate memoryless strategies
                  for each coalition-temporal subformula and decide the X / G /
                  U objective on the induced one-step graph

The oracle enumerates strategies up to induced-graph equivalence (several
joint actions with the same successor set induce the same graph), which keeps
exhaustive enumeration feasible at desk scale without changing the quantifier.
"""

from __future__ import annotations

import itertools
from math import prod

from .cgs import Cgs, CgsError
from .syntax import And, Atom, CoalG, CoalU, CoalX, Formula, Not, coalitions_of


class OracleSizeError(ValueError):
    """Strategy space too large for exhaustive enumeration."""


def _check_coalitions(g: Cgs, phi: Formula) -> None:
    known = set(g.agents)
    for coalition in coalitions_of(phi):
        unknown = set(coalition) - known
        if unknown:
            raise CgsError(f"unknown coalition member {sorted(unknown)!r}")


# ---------------------------------------------------------------------------
# fixpoint route


def _joint_succ_sets(g: Cgs, coalition: frozenset) -> dict:
    """state -> tuple of successor sets, one per joint action of the coalition."""
    key = ("fixpoint-joints", coalition)
    cached = g._caches.get(key)
    if cached is not None:
        return cached
    members = [a for a in g.agents if a in coalition]
    table = {}
    for w in g.states:
        sets = []
        for joint in itertools.product(*(g.menu(w, a) for a in members)):
            assignment = dict(zip(members, joint))
            sets.append(g.successors(w, assignment))
        table[w] = tuple(sorted(set(sets), key=sorted))
    g._caches[key] = table
    return table


def pre(g: Cgs, coalition, target) -> frozenset:
    """Controllable predecessors: states where the coalition can force `target`."""
    coalition = frozenset(coalition)
    target = frozenset(target)
    table = _joint_succ_sets(g, coalition)
    return frozenset(w for w in g.states if any(ss <= target for ss in table[w]))


def eval_atl(g: Cgs, phi: Formula) -> frozenset:
    """Denotation of an ATL formula, by fixpoint labeling.

    G is a greatest fixpoint including the present state; U is a least
    fixpoint whose goal may hold immediately.  Atoms absent from the
    valuation denote the empty set.
    """
    _check_coalitions(g, phi)
    all_states = frozenset(g.states)
    memo: dict = {}

    def den(f: Formula) -> frozenset:
        hit = memo.get(f)
        if hit is not None:
            return hit
        match f:
            case Atom(name):
                result = g.atom_states(name)
            case Not(child):
                result = all_states - den(child)
            case And(left, right):
                result = den(left) & den(right)
            case CoalX(coalition, child):
                result = pre(g, coalition, den(child))
            case CoalG(coalition, child):
                body = den(child)
                current = all_states
                while True:
                    refined = body & pre(g, coalition, current)
                    if refined == current:
                        break
                    current = refined
                result = current
            case CoalU(coalition, left, right):
                hold, goal = den(left), den(right)
                current: frozenset = frozenset()
                while True:
                    grown = goal | (hold & pre(g, coalition, current))
                    if grown == current:
                        break
                    current = grown
                result = current
            case _:
                raise CgsError(f"not an ATL formula: {f!r}")
        memo[f] = result
        return result

    return den(phi)


# ---------------------------------------------------------------------------
# oracle route (strategy enumeration on bitmasks)


def _state_bits(g: Cgs) -> dict:
    cached = g._caches.get("state-bits")
    if cached is None:
        cached = {w: i for i, w in enumerate(g.states)}
        g._caches["state-bits"] = cached
    return cached


def _mask_of(g: Cgs, states) -> int:
    bits = _state_bits(g)
    mask = 0
    for w in states:
        mask |= 1 << bits[w]
    return mask


def _unmask(g: Cgs, mask: int) -> frozenset:
    return frozenset(w for i, w in enumerate(g.states) if mask >> i & 1)


def _projection_succ_masks(g: Cgs, coalition: frozenset) -> list:
    """Per state: distinct successor masks of the coalition's joint actions.

    Full profiles are grouped by their projection onto the coalition; each
    group's successor states form one candidate one-step move.
    """
    key = ("oracle-succ", coalition)
    cached = g._caches.get(key)
    if cached is not None:
        return cached
    bits = _state_bits(g)
    indices = [i for i, a in enumerate(g.agents) if a in coalition]
    table = []
    for w in g.states:
        groups: dict = {}
        for profile in g.profiles(w):
            proj = tuple(profile[i] for i in indices)
            groups[proj] = groups.get(proj, 0) | (1 << bits[g.step(w, profile)])
        table.append(tuple(sorted(set(groups.values()))))
    g._caches[key] = table
    return table


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reachable(graph, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        step = 0
        for v in _iter_bits(frontier):
            step |= graph[v]
        frontier = step & ~seen
        seen |= frontier
    return seen


def _acyclic(graph, region: int) -> bool:
    remaining = region
    while True:
        removable = 0
        for v in _iter_bits(remaining):
            if graph[v] & remaining == 0:
                removable |= 1 << v
        if not removable:
            return remaining == 0
        remaining &= ~removable


def _decide(kind: str, graph, w: int, masks) -> bool:
    if kind == "X":
        return graph[w] & ~masks[0] == 0
    if kind == "G":
        return _reachable(graph, w) & ~masks[0] == 0
    # U: region reachable while avoiding the goal must satisfy the hold
    # condition and admit no cycle (delta is total, so a cycle yields a
    # goal-avoiding infinite outcome).
    hold, goal = masks
    if 1 << w & goal:
        return True
    region = 1 << w
    frontier = region
    while frontier:
        step = 0
        for v in _iter_bits(frontier):
            step |= graph[v]
        frontier = step & ~goal & ~region
        region |= frontier
    if region & ~hold:
        return False
    return _acyclic(graph, region)


def strategic_mask(
    g: Cgs, coalition: frozenset, kind: str, masks: tuple, guard: int = 200_000
) -> int:
    """States where some memoryless strategy of the coalition meets the objective.

    kind is "X", "G", or "U"; masks are the operand denotations as bitmasks.
    Enumerates every induced one-step graph; raises OracleSizeError when the
    space exceeds the guard.
    """
    cache = g._caches.setdefault("oracle-verdicts", {})
    key = (coalition, kind, masks, guard)
    hit = cache.get(key)
    if hit is not None:
        return hit
    table = _projection_succ_masks(g, coalition)
    count = prod(len(options) for options in table)
    if count > guard:
        raise OracleSizeError(
            f"{count} strategy classes exceed the enumeration guard ({guard})"
        )
    n = len(g.states)
    everything = (1 << n) - 1
    accepted = 0
    for graph in itertools.product(*table):
        for w in range(n):
            if accepted >> w & 1:
                continue
            if _decide(kind, graph, w, masks):
                accepted |= 1 << w
        if accepted == everything:
            break
    cache[key] = accepted
    return accepted


def eval_atl_oracle(g: Cgs, phi: Formula, guard: int = 200_000) -> frozenset:
    """Denotation by exhaustive memoryless-strategy enumeration."""
    _check_coalitions(g, phi)
    everything = (1 << len(g.states)) - 1
    memo = g._caches.setdefault("oracle-formula", {})

    def den(f: Formula) -> int:
        hit = memo.get(f)
        if hit is not None:
            return hit
        match f:
            case Atom(name):
                result = _mask_of(g, g.atom_states(name))
            case Not(child):
                result = everything & ~den(child)
            case And(left, right):
                result = den(left) & den(right)
            case CoalX(coalition, child):
                result = strategic_mask(g, coalition, "X", (den(child),), guard)
            case CoalG(coalition, child):
                result = strategic_mask(g, coalition, "G", (den(child),), guard)
            case CoalU(coalition, left, right):
                result = strategic_mask(g, coalition, "U", (den(left), den(right)), guard)
            case _:
                raise CgsError(f"not an ATL formula: {f!r}")
        memo[f] = result
        return result

    return _unmask(g, den(phi))
