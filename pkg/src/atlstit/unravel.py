"""Bounded unraveling of a CGS into a branching discrete-time fragment.

Moments are delta-consistent state sequences from a root state, materialized
to a fixed depth.  At each non-leaf moment the outgoing full action profiles
are partitioned, per agent, into choice cells by the agent's own component;
each cell carries its action label, and the execution map inverts the
labelling.  verify_frame re-checks the frame conditions on the stored
structure, so tests can corrupt a fragment and watch the right condition
fail.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .cgs import Cgs, Profile

Moment = tuple  # of state ids, nonempty


class UnravelSizeError(ValueError):
    pass


class BdtFragment:
    def __init__(self, cgs: Cgs, root: str, depth: int):
        self.cgs = cgs
        self.root = root
        self.depth = depth
        self.moments: list[Moment] = []
        # (moment, profile) -> successor moment; rows only for non-leaves
        self.succ: dict[tuple[Moment, Profile], Moment] = {}
        # (moment, agent) -> list of (label, frozenset of profiles), label-sorted
        self.cells: dict[tuple[Moment, str], list] = {}
        # (moment, agent, label) -> frozenset of profiles
        self.exe: dict[tuple[Moment, str, str], frozenset] = {}

    def non_leaves(self) -> Iterable[Moment]:
        return (m for m in self.moments if len(m) <= self.depth)

    def branches(self, moment: Moment) -> tuple[Profile, ...]:
        return tuple(sorted({s for (m, s) in self.succ if m == moment}))

    def atom_true(self, atom: str, moment: Moment) -> bool:
        return moment[-1] in self.cgs.atom_states(atom)


def unravel(g: Cgs, root: str, depth: int, max_moments: int = 5000) -> BdtFragment:
    """Materialize every delta-consistent sequence from `root` of length <= depth+1."""
    if root not in g.states:
        raise ValueError(f"unknown state {root!r}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    fragment = BdtFragment(g, root, depth)
    level = [(root,)]
    fragment.moments.extend(level)
    for _ in range(depth):
        next_level = []
        for moment in level:
            seen = set()
            for profile in g.profiles(moment[-1]):
                child = moment + (g.step(moment[-1], profile),)
                fragment.succ[(moment, profile)] = child
                if child not in seen:
                    seen.add(child)
                    next_level.append(child)
        fragment.moments.extend(next_level)
        if len(fragment.moments) > max_moments:
            raise UnravelSizeError(
                f"fragment exceeds {max_moments} moments at depth {depth}"
            )
        level = next_level
    fragment.moments.sort(key=lambda m: (len(m), m))
    for moment in fragment.non_leaves():
        state = moment[-1]
        profiles = tuple(g.profiles(state))
        for i, agent in enumerate(g.agents):
            groups: dict[str, set] = {}
            for profile in profiles:
                groups.setdefault(profile[i], set()).add(profile)
            cells = [(label, frozenset(group)) for label, group in sorted(groups.items())]
            fragment.cells[(moment, agent)] = cells
            for label, group in cells:
                fragment.exe[(moment, agent, label)] = group
    return fragment


def _fmt_moment(moment: Moment) -> str:
    return ">".join(moment)


def _fmt_profile(profile: Profile) -> str:
    return ",".join(profile)


def verify_frame(fragment: BdtFragment) -> list[str]:
    """Check the frame conditions on the stored fragment; empty list means pass.

    Conditions: order (prefix closure, delta consistency of moments), TD
    (unique successors along branches), NC (choice cells mirror one-step
    projections exactly: undivided branches never separated, divided ones
    never merged), IA (every selection of cells intersects), EL / LE (label
    and execution maps invert each other), determinism (branches sharing a
    grand-coalition cell share their successor).
    """
    g = fragment.cgs
    out: list[str] = []
    stored = set(fragment.moments)

    # order: structural sanity of the moment set under the prefix order
    for m in fragment.moments:
        if not m or m[0] != fragment.root:
            out.append(f"order: moment {_fmt_moment(m)} does not start at the root")
            continue
        if len(m) > fragment.depth + 1:
            out.append(f"order: moment {_fmt_moment(m)} exceeds depth {fragment.depth}")
        if len(m) >= 2 and m[:-1] not in stored:
            out.append(f"order: moment {_fmt_moment(m)} lacks its predecessor")
        for i in range(len(m) - 1):
            steps = {g.step(m[i], s) for s in g.profiles(m[i])}
            if m[i + 1] not in steps:
                out.append(
                    f"order: moment {_fmt_moment(m)} is not delta-consistent at step {i + 1}"
                )

    for moment in fragment.non_leaves():
        state = moment[-1]
        profiles = tuple(g.profiles(state))

        # TD: each branch has exactly one immediate successor, and every
        # stored extension of the moment is reached by some branch
        children = set()
        for profile in profiles:
            child = fragment.succ.get((moment, profile))
            if child is None:
                out.append(
                    f"TD: branch ({_fmt_moment(moment)}, [{_fmt_profile(profile)}]) "
                    "has no successor"
                )
                continue
            children.add(child)
            if len(child) != len(moment) + 1 or child[: len(moment)] != moment:
                out.append(
                    f"TD: successor of ({_fmt_moment(moment)}, [{_fmt_profile(profile)}]) "
                    "is not an immediate extension"
                )
            elif child not in stored:
                out.append(f"TD: successor {_fmt_moment(child)} is not a stored moment")
        for m in fragment.moments:
            if len(m) == len(moment) + 1 and m[: len(moment)] == moment and m not in children:
                out.append(
                    f"TD: stored moment {_fmt_moment(m)} is reached by no branch of "
                    f"{_fmt_moment(moment)}"
                )

        # NC: cells coincide with the one-step projection grouping
        for i, agent in enumerate(g.agents):
            cells = fragment.cells.get((moment, agent))
            if cells is None:
                out.append(f"NC: no cells stored for agent {agent} at {_fmt_moment(moment)}")
                continue
            for profile in profiles:
                holders = [label for label, group in cells if profile in group]
                if len(holders) != 1:
                    out.append(
                        f"NC: branch [{_fmt_profile(profile)}] of {_fmt_moment(moment)} "
                        f"lies in {len(holders)} cells of agent {agent}"
                    )
            for label, group in cells:
                for s, t in itertools.combinations(sorted(group), 2):
                    if s[i] != t[i]:
                        out.append(
                            f"NC: cell {label!r} of agent {agent} at {_fmt_moment(moment)} "
                            f"merges branches [{_fmt_profile(s)}] and [{_fmt_profile(t)}] "
                            "with distinct current actions"
                        )
            grouping: dict[str, set] = {}
            for profile in profiles:
                grouping.setdefault(profile[i], set()).add(profile)
            for label, group in cells:
                for expected_label, expected in grouping.items():
                    if group & expected and group != expected:
                        out.append(
                            f"NC: cell {label!r} of agent {agent} at {_fmt_moment(moment)} "
                            f"separates undivided branches of action {expected_label!r}"
                        )
                        break

        # IA: every selection of one cell per agent intersects
        per_agent = [fragment.cells.get((moment, agent), []) for agent in g.agents]
        if all(per_agent):
            for selection in itertools.product(*per_agent):
                common = frozenset(profiles)
                for _, group in selection:
                    common &= group
                if not common:
                    labels = ", ".join(
                        f"{agent}: {label}"
                        for agent, (label, _) in zip(g.agents, selection)
                    )
                    out.append(
                        f"IA: selection ({labels}) has empty intersection at "
                        f"{_fmt_moment(moment)}"
                    )

        # EL / LE: execution inverts labelling
        for agent in g.agents:
            for label, group in fragment.cells.get((moment, agent), []):
                image = fragment.exe.get((moment, agent, label))
                if image is None:
                    out.append(
                        f"EL: Exe undefined for label {label!r} of agent {agent} at "
                        f"{_fmt_moment(moment)}"
                    )
                elif image != group:
                    out.append(
                        f"EL: Exe(Lbl(cell)) differs from the cell for label {label!r} "
                        f"of agent {agent} at {_fmt_moment(moment)}"
                    )
        for (m, agent, label), image in fragment.exe.items():
            if m != moment:
                continue
            if label not in g.menu(state, agent):
                out.append(
                    f"LE: Exe defined for label {label!r} outside Act_{agent}^{state} at "
                    f"{_fmt_moment(moment)}"
                )
                continue
            match = [c for c in fragment.cells.get((m, agent), []) if c[1] == image]
            if not match:
                out.append(
                    f"LE: Exe image for label {label!r} of agent {agent} at "
                    f"{_fmt_moment(moment)} is not a choice cell"
                )
            elif match[0][0] != label:
                out.append(
                    f"LE: Lbl(Exe({label!r})) = {match[0][0]!r} for agent {agent} at "
                    f"{_fmt_moment(moment)}"
                )

        # determinism: grand-coalition cells agree with the transition function
        for profile in profiles:
            expected = moment + (g.step(state, profile),)
            child = fragment.succ.get((moment, profile))
            if child is not None and child != expected:
                out.append(
                    f"determinism: branch ({_fmt_moment(moment)}, [{_fmt_profile(profile)}]) "
                    f"steps to {_fmt_moment(child)} instead of {_fmt_moment(expected)}"
                )
        for profile in profiles:
            grand = frozenset(profiles)
            complete = True
            for agent in g.agents:
                holders = [
                    group
                    for _, group in fragment.cells.get((moment, agent), [])
                    if profile in group
                ]
                if len(holders) != 1:
                    complete = False
                    break
                grand &= holders[0]
            if not complete:
                continue
            targets = {fragment.succ.get((moment, t)) for t in grand}
            if len(targets) > 1:
                out.append(
                    f"determinism: grand-coalition cell of [{_fmt_profile(profile)}] at "
                    f"{_fmt_moment(moment)} reaches several successors"
                )
    return out


def export_fragment(fragment: BdtFragment) -> str:
    """Deterministic dump: one moment per line with its cells and labels."""
    g = fragment.cgs
    lines = []
    for moment in fragment.moments:
        parts = [_fmt_moment(moment)]
        if len(moment) <= fragment.depth:
            agent_parts = []
            for agent in g.agents:
                cells = fragment.cells.get((moment, agent), [])
                rendered = " ".join(
                    f"{label}->{{{';'.join(sorted(_fmt_profile(p) for p in group))}}}"
                    for label, group in cells
                )
                agent_parts.append(f"{agent}: {rendered}")
            parts.append(" | ".join(agent_parts))
        lines.append("  ".join(parts))
    return "\n".join(lines) + "\n"
