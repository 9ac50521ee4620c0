"""Evaluation of the stit language on the unraveled model.

Histories are ultimately periodic: a stem of full action profiles followed by
a repeating loop, anchored at the current state.  Temporal operators are
decided exactly on one stem+loop window (periodicity); historical necessity
and the agency modality quantify over finitely many one-step continuations,
and are rejected for operands whose truth needs more than the current moment
plus one step; strategic ability searches memoryless strategies on the state
quotient with the same induced-graph criteria the ATL oracle uses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .atl import _mask_of, _state_bits, strategic_mask
from .cgs import Cgs, CgsError, Profile
from .syntax import (
    And,
    Atom,
    Box,
    Formula,
    Globally,
    Next,
    Not,
    Stit,
    StratAbility,
    Until,
)
from .unravel import Moment


class LassoError(ValueError):
    pass


class UnsupportedFragmentError(ValueError):
    pass


@dataclass(frozen=True)
class LassoHistory:
    anchor: str
    stem: tuple
    loop: tuple

    def profile_at(self, i: int) -> Profile:
        if i < len(self.stem):
            return self.stem[i]
        return self.loop[(i - len(self.stem)) % len(self.loop)]

    def window(self) -> int:
        return len(self.stem) + len(self.loop)


@dataclass(frozen=True)
class SxIndex:
    moment: Moment
    history: LassoHistory


def _check_profile(g: Cgs, state: str, profile) -> Profile:
    profile = tuple(profile)
    if len(profile) != len(g.agents):
        raise LassoError(f"profile [{','.join(profile)}] has wrong arity at {state}")
    for label, agent in zip(profile, g.agents):
        if label not in g.menu(state, agent):
            raise LassoError(f"action {label!r} not in Act_{agent}^{state}")
    return profile


def validate_lasso(g: Cgs, h: LassoHistory) -> None:
    """Check delta-consistency and loop closure; raise LassoError otherwise."""
    if h.anchor not in g.states:
        raise LassoError(f"unknown anchor state {h.anchor!r}")
    if not h.loop:
        raise LassoError("loop must be nonempty")
    state = h.anchor
    for profile in h.stem:
        state = g.step(state, _check_profile(g, state, profile))
    start = state
    for profile in h.loop:
        state = g.step(state, _check_profile(g, state, profile))
    if state != start:
        raise LassoError(f"loop does not close: ends at {state}, started at {start}")


def lasso_states(g: Cgs, h: LassoHistory, count: int) -> list:
    """States at positions 0..count along the lasso."""
    out = [h.anchor]
    for i in range(count):
        out.append(g.step(out[-1], h.profile_at(i)))
    return out


def lasso_suffix(g: Cgs, h: LassoHistory, i: int) -> LassoHistory:
    """Advance the anchor by i profiles: the stem shrinks, then the loop rotates."""
    if i == 0:
        return h
    anchor = lasso_states(g, h, i)[-1]
    if i <= len(h.stem):
        return LassoHistory(anchor, h.stem[i:], h.loop)
    rotation = (i - len(h.stem)) % len(h.loop)
    return LassoHistory(anchor, (), h.loop[rotation:] + h.loop[:rotation])


def canonical_lasso(g: Cgs, w: str) -> LassoHistory:
    """The lasso following the first available profile until a state repeats."""
    trail = [w]
    profiles = []
    positions = {w: 0}
    state = w
    while True:
        profile = tuple(g.menu(state, a)[0] for a in g.agents)
        profiles.append(profile)
        state = g.step(state, profile)
        if state in positions:
            split = positions[state]
            return LassoHistory(w, tuple(profiles[:split]), tuple(profiles[split:]))
        positions[state] = len(trail)
        trail.append(state)


def _paths_from(g: Cgs, state: str, length: int):
    """All profile sequences of the given length, lexicographic, with end state."""
    if length == 0:
        yield (), state
        return
    for profile in g.profiles(state):
        after = g.step(state, profile)
        for rest, end in _paths_from(g, after, length - 1):
            yield (profile,) + rest, end


def iter_lassos(g: Cgs, w: str, stem_bound: int, loop_bound: int):
    """Lassos anchored at w in canonical order: stem length, stem, loop length, loop."""
    for stem_len in range(stem_bound + 1):
        for stem, mid in _paths_from(g, w, stem_len):
            for loop_len in range(1, loop_bound + 1):
                for loop, end in _paths_from(g, mid, loop_len):
                    if end == mid:
                        yield LassoHistory(w, stem, loop)


def lasso_pool(
    g: Cgs,
    w: str,
    stem_bound: int | None = None,
    loop_bound: int | None = None,
    limit: int = 512,
) -> list:
    """A deterministic prefix (up to `limit`) of the bounded lasso pool."""
    stem_bound = len(g.states) if stem_bound is None else stem_bound
    loop_bound = len(g.states) if loop_bound is None else loop_bound
    key = ("lasso-pool", w, stem_bound, loop_bound, limit)
    cached = g._caches.get(key)
    if cached is None:
        cached = list(itertools.islice(iter_lassos(g, w, stem_bound, loop_bound), limit))
        g._caches[key] = cached
    return cached


def check_moment_determined(g: Cgs, phi: Formula) -> bool:
    """Syntactic sufficient condition for truth depending only on the last state."""
    match phi:
        case Atom(_):
            return True
        case Not(child):
            return check_moment_determined(g, child)
        case And(left, right):
            return check_moment_determined(g, left) and check_moment_determined(g, right)
        case Box(child):
            return _one_step_supported(g, child)
        case Stit(coalition, child):
            if not coalition:
                return _one_step_supported(g, child)
            return check_moment_determined(g, child)
        case StratAbility(_, child):
            return _strategic_body_supported(g, child)
        case Next(_) | Globally(_) | Until(_, _):
            return False
    raise TypeError(f"not a stit formula: {phi!r}")


def _one_step_supported(g: Cgs, phi: Formula) -> bool:
    if check_moment_determined(g, phi):
        return True
    return isinstance(phi, Next) and check_moment_determined(g, phi.child)


def _strategic_body_supported(g: Cgs, body: Formula) -> bool:
    if check_moment_determined(g, body):
        return True
    if isinstance(body, (Next, Globally)):
        return check_moment_determined(g, body.child)
    if isinstance(body, Until):
        return check_moment_determined(g, body.left) and check_moment_determined(
            g, body.right
        )
    return False


def _md_mask(g: Cgs, phi: Formula) -> int:
    """Denotation of a moment-determined formula as a state bitmask."""
    cache = g._caches.setdefault("md-denotations", {})
    hit = cache.get(phi)
    if hit is None:
        states = [
            w
            for w in g.states
            if eval_sx(g, phi, SxIndex((w,), canonical_lasso(g, w)))
        ]
        hit = _mask_of(g, states)
        cache[phi] = hit
    return hit


def holds_strategically(g: Cgs, w: str, coalition: frozenset, body: Formula) -> bool:
    """Some memoryless quotient strategy of the coalition enforces the body from w.

    The body must be moment-determined, or X/G/U over moment-determined
    operands; the decision runs on the induced one-step graph with the ATL
    oracle's criteria.
    """
    coalition = frozenset(coalition)
    unknown = coalition - set(g.agents)
    if unknown:
        raise CgsError(f"unknown coalition member {sorted(unknown)!r}")
    if check_moment_determined(g, body):
        return eval_sx(g, body, SxIndex((w,), canonical_lasso(g, w)))
    if isinstance(body, Next) and check_moment_determined(g, body.child):
        kind, masks = "X", (_md_mask(g, body.child),)
    elif isinstance(body, Globally) and check_moment_determined(g, body.child):
        kind, masks = "G", (_md_mask(g, body.child),)
    elif (
        isinstance(body, Until)
        and check_moment_determined(g, body.left)
        and check_moment_determined(g, body.right)
    ):
        kind, masks = "U", (_md_mask(g, body.left), _md_mask(g, body.right))
    else:
        raise UnsupportedFragmentError(
            "strategic body must be moment-determined or X/G/U over "
            "moment-determined operands"
        )
    accepted = strategic_mask(g, coalition, kind, masks)
    return bool(accepted >> _state_bits(g)[w] & 1)


def eval_sx(g: Cgs, phi: Formula, ix: SxIndex) -> bool:
    """Truth of a stit formula at an index of the unraveled model."""
    if ix.history.anchor != ix.moment[-1]:
        raise LassoError(
            f"history anchored at {ix.history.anchor!r} does not continue moment "
            f"ending at {ix.moment[-1]!r}"
        )
    validate_lasso(g, ix.history)
    return _eval(g, phi, ix.moment, ix.history)


def _advance(g: Cgs, moment: Moment, h: LassoHistory) -> tuple:
    nxt = g.step(moment[-1], h.profile_at(0))
    return moment + (nxt,), lasso_suffix(g, h, 1)


def _eval(g: Cgs, phi: Formula, moment: Moment, h: LassoHistory) -> bool:
    match phi:
        case Atom(name):
            return moment[-1] in g.atom_states(name)
        case Not(child):
            return not _eval(g, child, moment, h)
        case And(left, right):
            return _eval(g, left, moment, h) and _eval(g, right, moment, h)
        case Next(child):
            m2, h2 = _advance(g, moment, h)
            return _eval(g, child, m2, h2)
        case Globally(child):
            m2, h2 = moment, h
            for _ in range(h.window()):
                if not _eval(g, child, m2, h2):
                    return False
                m2, h2 = _advance(g, m2, h2)
            return True
        case Until(left, right):
            m2, h2 = moment, h
            for _ in range(h.window()):
                if _eval(g, right, m2, h2):
                    return True
                if not _eval(g, left, m2, h2):
                    return False
                m2, h2 = _advance(g, m2, h2)
            return False
        case Box(child):
            return _eval_history_quantifier(g, child, moment, h, None)
        case Stit(coalition, child):
            if not coalition:
                return _eval_history_quantifier(g, child, moment, h, None)
            return _eval_history_quantifier(g, child, moment, h, coalition)
        case StratAbility(coalition, child):
            return holds_strategically(g, moment[-1], coalition, child)
    raise TypeError(f"not a stit formula: {phi!r}")


def _eval_history_quantifier(
    g: Cgs, child: Formula, moment: Moment, h: LassoHistory, coalition
) -> bool:
    """[] child, or [C] child with the cell fixed by h's first profile.

    Moment-determined operands need a single evaluation; a one-step operand
    (X over moment-determined) is decided by enumerating the admissible first
    profiles.  Anything deeper is rejected.
    """
    if check_moment_determined(g, child):
        return _eval(g, child, moment, h)
    if isinstance(child, Next) and check_moment_determined(g, child.child):
        state = moment[-1]
        current = h.profile_at(0)
        indices = (
            None
            if coalition is None
            else [i for i, a in enumerate(g.agents) if a in coalition]
        )
        for profile in g.profiles(state):
            if indices is not None and any(profile[i] != current[i] for i in indices):
                continue
            nxt = g.step(state, profile)
            if not _eval(g, child.child, moment + (nxt,), canonical_lasso(g, nxt)):
                return False
        return True
    raise UnsupportedFragmentError(
        "history quantifier needs a moment-determined operand or a single X step"
    )
