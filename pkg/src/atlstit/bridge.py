"""Correspondence harness, axiom validity sweep, and the Hilbert proof checker.

The correspondence check compares the ATL fixpoint verdict at a state with
the translated formula's verdict at the rooted moment under a sample of
histories; the sweep instantiates every axiom schema over a corpus of models;
the proof checker validates scripts line by line against the schemata and the
inference rules (modus ponens, substitution, X-monotonicity, empty-coalition
G-necessitation, plus classical tautologies).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .atl import eval_atl
from .cgs import Cgs
from .schemas import SCHEMA_NAMES, SchemaError, instantiate_schema
from .stit import LassoHistory, SxIndex, canonical_lasso, eval_sx, lasso_pool
from .syntax import (
    And,
    Atom,
    CoalG,
    CoalX,
    Formula,
    Not,
    coalitions_of,
    parse_atl,
    print_formula,
    substitute,
    translate,
)


# ---------------------------------------------------------------------------
# lasso sampling


def sample_lassos(g: Cgs, w: str, count: int, seed: int = 0) -> list:
    """Deterministic sample: pool extremes plus a seeded subsample.

    Extremes are the first pool element (shortest stem, smallest loop) and one
    lasso per first-step profile; profiles not covered by the pool prefix get
    a directly constructed stem+canonical-loop lasso.
    """
    pool = lasso_pool(g, w)
    extremes = [pool[0]]
    covered = {pool[0].profile_at(0)}
    for lasso in pool:
        first = lasso.profile_at(0)
        if first not in covered:
            covered.add(first)
            extremes.append(lasso)
    for profile in g.profiles(w):
        if profile not in covered:
            covered.add(profile)
            after = canonical_lasso(g, g.step(w, profile))
            extremes.append(LassoHistory(w, (profile,) + after.stem, after.loop))
    rng = random.Random(seed)
    if len(pool) <= count:
        chosen = list(pool)
    else:
        chosen = rng.sample(pool, count)
    out = []
    for lasso in extremes + chosen:
        if lasso not in out:
            out.append(lasso)
    return out


# ---------------------------------------------------------------------------
# correspondence


@dataclass
class CorrespondenceReport:
    formula: Formula
    state: str
    atl_verdict: bool
    sx_verdicts: list  # (LassoHistory, bool)

    @property
    def agreement(self) -> bool:
        values = {v for _, v in self.sx_verdicts}
        return len(values) == 1 and values == {self.atl_verdict}

    def to_json_dict(self) -> dict:
        return {
            "formula": print_formula(self.formula),
            "state": self.state,
            "atl": self.atl_verdict,
            "sx": [v for _, v in self.sx_verdicts],
            "histories": len(self.sx_verdicts),
            "agreement": self.agreement,
        }


def correspondence_check(
    g: Cgs, phi: Formula, w: str, lasso_samples: int = 8, seed: int = 0
) -> CorrespondenceReport:
    """ATL truth at w versus the translation at the rooted moment, per history."""
    atl_verdict = w in eval_atl(g, phi)
    image = translate(phi)
    verdicts = []
    for lasso in sample_lassos(g, w, lasso_samples, seed):
        verdicts.append((lasso, eval_sx(g, image, SxIndex((w,), lasso))))
    return CorrespondenceReport(phi, w, atl_verdict, verdicts)


# ---------------------------------------------------------------------------
# axiom sweep


def _subsets(agents: Sequence[str]):
    for size in range(len(agents) + 1):
        for combo in itertools.combinations(agents, size):
            yield frozenset(combo)


def default_instantiations(g: Cgs) -> list:
    """Schema instantiations over the model's first two agents.

    Substitutions range over the identity, p -> !q, and p -> <<first>> X q.
    """
    scope = list(g.agents[:2])
    coals = list(_subsets(scope))
    substs = [
        {},
        {"p": Not(Atom("q"))},
        {"p": CoalX(frozenset({g.agents[0]}), Atom("q"))},
    ]
    out = []
    for name in SCHEMA_NAMES:
        if name == "GC":
            bindings = [{"Ags": frozenset(g.agents)}]
        elif name == "S":
            bindings = [
                {"A": a, "B": b} for a in coals for b in coals if not (a & b)
            ]
        else:
            bindings = [{"A": c} for c in coals]
        for binding in bindings:
            for subst in substs:
                out.append((name, binding, subst))
    return out


@dataclass
class SweepReport:
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.counterexamples

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "failed": len(self.counterexamples),
            "counterexamples": self.counterexamples,
        }


def axiom_sweep(models: Iterable[Cgs], instantiations=None) -> SweepReport:
    """Every instantiated schema must hold at every state of every model."""
    report = SweepReport()
    for index, g in enumerate(models):
        rows = instantiations if instantiations is not None else default_instantiations(g)
        for name, binding, subst in rows:
            phi = instantiate_schema(name, binding, subst)
            report.checked += 1
            holds = eval_atl(g, phi)
            for w in g.states:
                if w not in holds:
                    report.counterexamples.append(
                        {
                            "model": index,
                            "schema": name,
                            "coalitions": {
                                k: sorted(v) for k, v in sorted(binding.items())
                            },
                            "subst": {
                                k: print_formula(v) for k, v in sorted(subst.items())
                            },
                            "state": w,
                        }
                    )
    return report


# ---------------------------------------------------------------------------
# proof scripts


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class JAxiom:
    name: str
    coalitions: tuple  # ((key, frozenset), ...)
    subst: tuple  # ((letter, Formula), ...)


@dataclass(frozen=True)
class JTaut:
    pass


@dataclass(frozen=True)
class JMP:
    i: int
    j: int


@dataclass(frozen=True)
class JSubst:
    i: int
    subst: tuple


@dataclass(frozen=True)
class JXMono:
    i: int
    coalition: frozenset


@dataclass(frozen=True)
class JGNec:
    i: int


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    by: object


@dataclass
class ProofVerdict:
    accepted: bool
    line: int | None = None
    reason: str | None = None

    def to_json_dict(self) -> dict:
        return {"accepted": self.accepted, "line": self.line, "reason": self.reason}


def load_proof(text: str) -> list:
    """Parse a proof script: a JSON array of {formula, by} records."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProofError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise ProofError("proof script must be a JSON array")
    lines = []
    for number, row in enumerate(doc, start=1):
        if not isinstance(row, dict) or "formula" not in row or "by" not in row:
            raise ProofError(f"line {number}: each entry needs formula and by")
        formula = parse_atl(row["formula"])
        by = row["by"]
        if not isinstance(by, dict) or "kind" not in by:
            raise ProofError(f"line {number}: by needs a kind")
        kind = by["kind"]
        if kind == "axiom":
            coalitions = tuple(
                sorted(
                    (key, frozenset(by[key]))
                    for key in ("A", "B", "Ags")
                    if key in by
                )
            )
            subst = tuple(
                sorted(
                    (letter, parse_atl(source))
                    for letter, source in by.get("subst", {}).items()
                )
            )
            lines.append(ProofLine(formula, JAxiom(by["name"], coalitions, subst)))
        elif kind == "taut":
            lines.append(ProofLine(formula, JTaut()))
        elif kind == "mp":
            lines.append(ProofLine(formula, JMP(int(by["i"]), int(by["j"]))))
        elif kind == "subst":
            subst = tuple(
                sorted(
                    (letter, parse_atl(source))
                    for letter, source in by.get("map", {}).items()
                )
            )
            lines.append(ProofLine(formula, JSubst(int(by["i"]), subst)))
        elif kind == "xmono":
            lines.append(
                ProofLine(formula, JXMono(int(by["i"]), frozenset(by.get("A", []))))
            )
        elif kind == "gnec":
            lines.append(ProofLine(formula, JGNec(int(by["i"]))))
        else:
            raise ProofError(f"line {number}: unknown justification kind {kind!r}")
    return lines


def _boolean_leaves(phi: Formula, leaves: list) -> None:
    if isinstance(phi, Not):
        _boolean_leaves(phi.child, leaves)
    elif isinstance(phi, And):
        _boolean_leaves(phi.left, leaves)
        _boolean_leaves(phi.right, leaves)
    elif phi not in leaves:
        leaves.append(phi)


def is_tautology(phi: Formula, max_letters: int = 20) -> bool:
    """Truth-table check treating non-Boolean subformulas as opaque letters."""
    leaves: list = []
    _boolean_leaves(phi, leaves)
    if len(leaves) > max_letters:
        raise ProofError(f"tautology check over {len(leaves)} letters exceeds the guard")

    def ev(f: Formula, row: dict) -> bool:
        if isinstance(f, Not):
            return not ev(f.child, row)
        if isinstance(f, And):
            return ev(f.left, row) and ev(f.right, row)
        return row[f]

    for values in itertools.product((False, True), repeat=len(leaves)):
        row = dict(zip(leaves, values))
        if not ev(phi, row):
            return False
    return True


def _implication_parts(phi: Formula):
    """Match the desugared implication shape !(a & !b); return (a, b) or None."""
    if isinstance(phi, Not) and isinstance(phi.child, And):
        body = phi.child
        if isinstance(body.right, Not):
            return body.left, body.right.child
    return None


def check_proof(lines: Sequence[ProofLine]) -> ProofVerdict:
    """Accept the script iff every line is justified; report the first failure."""
    proved: list[Formula] = []
    for number, line in enumerate(lines, start=1):
        reason = _check_line(number, line, proved)
        if reason is not None:
            return ProofVerdict(False, number, reason)
        proved.append(line.formula)
    return ProofVerdict(True)


def _resolve(number: int, proved: list, i: int):
    if not 1 <= i < number:
        raise ProofError(f"dangling reference to line {i}")
    return proved[i - 1]


def _check_line(number: int, line: ProofLine, proved: list) -> str | None:
    by = line.by
    try:
        if isinstance(by, JAxiom):
            try:
                expected = instantiate_schema(
                    by.name, dict(by.coalitions), dict(by.subst)
                )
            except SchemaError as exc:
                return str(exc)
            if line.formula != expected:
                return (
                    f"axiom instance mismatch: expected {print_formula(expected)}"
                )
        elif isinstance(by, JTaut):
            if not is_tautology(line.formula):
                return "not a propositional tautology"
        elif isinstance(by, JMP):
            antecedent = _resolve(number, proved, by.i)
            implication = _resolve(number, proved, by.j)
            parts = _implication_parts(implication)
            if parts is None:
                return f"line {by.j} is not an implication"
            if parts[0] != antecedent:
                return "antecedent mismatch"
            if parts[1] != line.formula:
                return "consequent mismatch"
        elif isinstance(by, JSubst):
            origin = _resolve(number, proved, by.i)
            if substitute(origin, dict(by.subst)) != line.formula:
                return "substitution result mismatch"
        elif isinstance(by, JXMono):
            origin = _resolve(number, proved, by.i)
            parts = _implication_parts(origin)
            if parts is None:
                return f"line {by.i} is not an implication"
            expected = Not(
                And(CoalX(by.coalition, parts[0]), Not(CoalX(by.coalition, parts[1])))
            )
            if line.formula != expected:
                return f"monotonicity result mismatch: expected {print_formula(expected)}"
        elif isinstance(by, JGNec):
            origin = _resolve(number, proved, by.i)
            if (
                isinstance(line.formula, CoalG)
                and line.formula.coalition
                and line.formula.child == origin
            ):
                return "necessitation requires the empty coalition"
            if line.formula != CoalG(frozenset(), origin):
                return f"necessitation result mismatch: expected {print_formula(CoalG(frozenset(), origin))}"
        else:
            return f"unknown justification {by!r}"
    except ProofError as exc:
        return str(exc)
    return None


# ---------------------------------------------------------------------------
# soundness spot-check


@dataclass
class SpotcheckReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "failed": len(self.violations),
            "counterexamples": self.violations,
        }


def spotcheck_formulas(
    formulas: Sequence[Formula],
    models: Iterable[Cgs],
    lasso_samples: int = 2,
    seed: int = 0,
) -> SpotcheckReport:
    """Each formula must hold everywhere, on both sides of the translation."""
    report = SpotcheckReport()
    for index, g in enumerate(models):
        known = set(g.agents)
        for number, phi in enumerate(formulas, start=1):
            mentioned = set().union(frozenset(), *coalitions_of(phi))
            if mentioned - known:
                raise ProofError(
                    f"line {number} mentions agents {sorted(mentioned - known)} "
                    f"absent from model {index}"
                )
        for number, phi in enumerate(formulas, start=1):
            report.checked += 1
            holds = eval_atl(g, phi)
            image = translate(phi)
            for w in g.states:
                if w not in holds:
                    report.violations.append(
                        {"model": index, "line": number, "state": w, "side": "atl"}
                    )
                for lasso in sample_lassos(g, w, lasso_samples, seed):
                    if not eval_sx(g, image, SxIndex((w,), lasso)):
                        report.violations.append(
                            {"model": index, "line": number, "state": w, "side": "sx"}
                        )
                        break
    return report


def soundness_spotcheck(
    lines: Sequence[ProofLine],
    models: Iterable[Cgs],
    lasso_samples: int = 2,
    seed: int = 0,
) -> SpotcheckReport:
    """Every line of an accepted script must hold everywhere, on both sides."""
    verdict = check_proof(lines)
    if not verdict.accepted:
        raise ProofError(
            f"script rejected at line {verdict.line}: {verdict.reason}"
        )
    return spotcheck_formulas(
        [line.formula for line in lines], models, lasso_samples, seed
    )
