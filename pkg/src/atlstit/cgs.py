"""Concurrent game structures: data model, validation, queries, serialization.

File format: a JSON object with keys `agents`, `states`, `actions`
(state -> agent -> list of labels), `delta` (list of {state, profile, next}
records, one per full action profile), and `valuation` (atom -> list of
states).  Unknown keys are rejected.  Document order of states and agents is
kept and used for deterministic iteration.
"""

from __future__ import annotations

import itertools
import json
import random
from typing import Iterator, Mapping

Profile = tuple  # action labels, one per agent, in agent document order


class CgsError(ValueError):
    pass


class Cgs:
    def __init__(self, agents, states, actions, delta, valuation):
        self.agents: tuple[str, ...] = tuple(agents)
        self.states: tuple[str, ...] = tuple(states)
        # (state, agent) -> tuple of action labels
        self.actions: dict[tuple[str, str], tuple[str, ...]] = dict(actions)
        # (state, full profile) -> successor state
        self.delta: dict[tuple[str, Profile], str] = dict(delta)
        self.valuation: dict[str, frozenset] = {
            atom: frozenset(ws) for atom, ws in valuation.items()
        }
        self._caches: dict = {}

    def menu(self, state: str, agent: str) -> tuple[str, ...]:
        return self.actions[(state, agent)]

    def profiles(self, state: str) -> Iterator[Profile]:
        return itertools.product(*(self.actions[(state, a)] for a in self.agents))

    def step(self, state: str, profile: Profile) -> str:
        return self.delta[(state, profile)]

    def successors(self, state: str, joint: Mapping[str, str]) -> frozenset:
        """Possible next states of a coalition's joint action at a state."""
        if state not in self.states:
            raise CgsError(f"unknown state {state!r}")
        for agent, label in joint.items():
            if (state, agent) not in self.actions:
                raise CgsError(f"unknown agent {agent!r}")
            if label not in self.actions[(state, agent)]:
                raise CgsError(f"action {label!r} not in Act_{agent}^{state}")
        out = set()
        for profile in self.profiles(state):
            if all(profile[i] == joint[a] for i, a in enumerate(self.agents) if a in joint):
                out.add(self.delta[(state, profile)])
        return frozenset(out)

    def atom_states(self, atom: str) -> frozenset:
        return self.valuation.get(atom, frozenset())

    def validate(self) -> list[str]:
        """Return violated invariants; empty means valid."""
        violations = []
        if not self.states:
            violations.append("no states")
        if not self.agents:
            violations.append("no agents")
        for w in self.states:
            for a in self.agents:
                if (w, a) not in self.actions:
                    violations.append(f"missing Act_{a}^{w}")
                elif not self.actions[(w, a)]:
                    violations.append(f"empty Act_{a}^{w}")
        for (w, a), labels in self.actions.items():
            if w not in self.states:
                violations.append(f"actions for unknown state {w!r}")
            if a not in self.agents:
                violations.append(f"actions for unknown agent {a!r}")
            if len(set(labels)) != len(labels):
                violations.append(f"duplicate labels in Act_{a}^{w}")
        for w in self.states:
            if any((w, a) not in self.actions or not self.actions[(w, a)] for a in self.agents):
                continue
            for profile in self.profiles(w):
                if (w, profile) not in self.delta:
                    violations.append(f"delta not total at ({w}, [{', '.join(profile)}])")
        for (w, profile), target in self.delta.items():
            if w not in self.states:
                violations.append(f"delta row at unknown state {w!r}")
                continue
            if target not in self.states:
                violations.append(f"delta({w}, [{', '.join(profile)}]) -> unknown state {target!r}")
            if len(profile) != len(self.agents):
                violations.append(f"profile arity mismatch at ({w}, [{', '.join(profile)}])")
                continue
            for i, a in enumerate(self.agents):
                if (w, a) in self.actions and profile[i] not in self.actions[(w, a)]:
                    violations.append(
                        f"profile component {profile[i]!r} not in Act_{a}^{w}"
                    )
        for atom, ws in self.valuation.items():
            for w in ws:
                if w not in self.states:
                    violations.append(f"valuation of {atom!r} names unknown state {w!r}")
        return violations

    def to_json(self) -> str:
        delta_rows = [
            {"state": w, "profile": {a: profile[i] for i, a in enumerate(self.agents)}, "next": v}
            for (w, profile), v in sorted(self.delta.items())
        ]
        doc = {
            "agents": list(self.agents),
            "states": list(self.states),
            "actions": {
                w: {a: list(self.actions[(w, a)]) for a in self.agents} for w in self.states
            },
            "delta": delta_rows,
            "valuation": {atom: sorted(ws) for atom, ws in sorted(self.valuation.items())},
        }
        return json.dumps(doc, indent=2, sort_keys=True)


_TOP_KEYS = {"agents", "states", "actions", "delta", "valuation"}


def load_cgs(text: str) -> Cgs:
    """Parse and validate a CGS document; raise CgsError naming the first problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CgsError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CgsError("document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise CgsError(f"unknown keys: {sorted(unknown)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise CgsError(f"missing keys: {sorted(missing)}")

    agents = doc["agents"]
    states = doc["states"]
    if not isinstance(agents, list) or not all(isinstance(a, str) for a in agents):
        raise CgsError("agents must be a list of strings")
    if not isinstance(states, list) or not all(isinstance(w, str) for w in states):
        raise CgsError("states must be a list of strings")
    if len(set(agents)) != len(agents):
        raise CgsError("duplicate agent names")
    if len(set(states)) != len(states):
        raise CgsError("duplicate state names")

    actions = {}
    if not isinstance(doc["actions"], dict):
        raise CgsError("actions must be an object")
    for w, per_agent in doc["actions"].items():
        if not isinstance(per_agent, dict):
            raise CgsError(f"actions[{w!r}] must be an object")
        for a, labels in per_agent.items():
            if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
                raise CgsError(f"actions[{w!r}][{a!r}] must be a list of strings")
            actions[(w, a)] = tuple(labels)

    delta = {}
    if not isinstance(doc["delta"], list):
        raise CgsError("delta must be a list")
    for row in doc["delta"]:
        if not isinstance(row, dict) or set(row) != {"state", "profile", "next"}:
            raise CgsError(f"bad delta row: {row!r}")
        w, profile_map, target = row["state"], row["profile"], row["next"]
        if not isinstance(profile_map, dict):
            raise CgsError(f"bad profile in delta row at {w!r}")
        if set(profile_map) != set(agents):
            raise CgsError(f"delta profile at {w!r} must cover every agent")
        profile = tuple(profile_map[a] for a in agents)
        if (w, profile) in delta:
            raise CgsError(f"duplicate delta row at ({w}, [{', '.join(profile)}])")
        delta[(w, profile)] = target

    if not isinstance(doc["valuation"], dict):
        raise CgsError("valuation must be an object")
    valuation = {}
    for atom, ws in doc["valuation"].items():
        if not isinstance(ws, list) or not all(isinstance(w, str) for w in ws):
            raise CgsError(f"valuation[{atom!r}] must be a list of states")
        valuation[atom] = frozenset(ws)

    g = Cgs(agents, states, actions, delta, valuation)
    violations = g.validate()
    if violations:
        raise CgsError("; ".join(violations))
    return g


def _atom_names(count: int) -> list[str]:
    base = ["p", "q", "r"]
    if count <= len(base):
        return base[:count]
    return base + [f"p{i}" for i in range(3, count)]


def _agent_names(count: int) -> list[str]:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    if count <= len(alphabet):
        return list(alphabet[:count])
    return list(alphabet) + [f"a{i}" for i in range(len(alphabet), count)]


def random_cgs(
    n_states: int, n_agents: int, max_actions: int, n_atoms: int, seed: int
) -> Cgs:
    """Deterministic random structure; action counts uniform in [1, max_actions]."""
    if min(n_states, n_agents, max_actions, n_atoms) < 1:
        raise CgsError("all size parameters must be >= 1")
    rng = random.Random(seed)
    states = [f"w{i}" for i in range(n_states)]
    agents = _agent_names(n_agents)
    actions = {}
    for w in states:
        for a in agents:
            count = rng.randint(1, max_actions)
            actions[(w, a)] = tuple(f"s{i + 1}" for i in range(count))
    delta = {}
    for w in states:
        for profile in itertools.product(*(actions[(w, a)] for a in agents)):
            delta[(w, profile)] = rng.choice(states)
    valuation = {}
    for atom in _atom_names(n_atoms):
        valuation[atom] = frozenset(w for w in states if rng.random() < 0.5)
    return Cgs(agents, states, actions, delta, valuation)
