"""Axiom schemata of the coalition-temporal proof system.

Templates are ordinary ASTs over the reserved letters p, q, r, with marker
coalitions standing for the metavariables A and B (and the grand coalition,
whose content depends on the model at hand).  Instantiation first binds the
coalition markers, then applies a uniform substitution to the letters.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    CoalG,
    CoalU,
    CoalX,
    Formula,
    Not,
    Stit,
    StratAbility,
    disj,
    iff,
    implies,
)

_A = frozenset({"$A"})
_B = frozenset({"$B"})
_AB = frozenset({"$A", "$B"})
_AGS = frozenset({"$Ags"})
_EMPTY = frozenset()

_P = Atom("p")
_Q = Atom("q")
_R = Atom("r")

SCHEMA_LETTERS = ("p", "q", "r")

_TEMPLATES: dict[str, Formula] = {
    "bot": Not(CoalX(_A, FALSE)),
    "top": CoalX(_A, TRUE),
    "GC": implies(Not(CoalX(_EMPTY, Not(_P))), CoalX(_AGS, _P)),
    "S": implies(
        And(CoalX(_A, _P), CoalX(_B, _Q)),
        CoalX(_AB, And(_P, _Q)),
    ),
    "FP_G": iff(CoalG(_A, _P), And(_P, CoalX(_A, CoalG(_A, _P)))),
    "GFP_G": implies(
        CoalG(_EMPTY, implies(_R, And(_P, CoalX(_A, _R)))),
        CoalG(_EMPTY, implies(_R, And(_P, CoalG(_A, _P)))),
    ),
    "FP_U": iff(
        CoalU(_A, _P, _Q),
        disj(_Q, And(_P, CoalX(_A, CoalU(_A, _P, _Q)))),
    ),
    "LFP_U": implies(
        CoalG(_EMPTY, implies(disj(_Q, And(_P, CoalX(_A, _R))), _R)),
        CoalG(_EMPTY, implies(CoalU(_A, _P, _Q), _R)),
    ),
}

SCHEMA_NAMES = tuple(_TEMPLATES)

_REQUIRED = {
    "bot": ("A",),
    "top": ("A",),
    "GC": ("Ags",),
    "S": ("A", "B"),
    "FP_G": ("A",),
    "GFP_G": ("A",),
    "FP_U": ("A",),
    "LFP_U": ("A",),
}


class SchemaError(ValueError):
    pass


def _bind_coalitions(phi: Formula, bindings: Mapping[str, frozenset]) -> Formula:
    def resolve(coalition: frozenset) -> frozenset:
        members = set()
        for entry in coalition:
            if entry.startswith("$"):
                members |= bindings[entry[1:]]
            else:
                members.add(entry)
        return frozenset(members)

    match phi:
        case Atom(_):
            return phi
        case Not(child):
            return Not(_bind_coalitions(child, bindings))
        case And(left, right):
            return And(_bind_coalitions(left, bindings), _bind_coalitions(right, bindings))
        case CoalX(coalition, child):
            return CoalX(resolve(coalition), _bind_coalitions(child, bindings))
        case CoalG(coalition, child):
            return CoalG(resolve(coalition), _bind_coalitions(child, bindings))
        case CoalU(coalition, left, right):
            return CoalU(
                resolve(coalition),
                _bind_coalitions(left, bindings),
                _bind_coalitions(right, bindings),
            )
        case Stit(coalition, child):
            return Stit(resolve(coalition), _bind_coalitions(child, bindings))
        case StratAbility(coalition, child):
            return StratAbility(resolve(coalition), _bind_coalitions(child, bindings))
    raise TypeError(f"not a formula: {phi!r}")


def instantiate_schema(
    name: str,
    coalitions: Mapping[str, Iterable[str]],
    subst: Mapping[str, Formula] | None = None,
) -> Formula:
    """Instantiate a schema: bind coalition metavariables, then substitute letters.

    The substitution is restricted to the letters p, q, r; schema S rejects
    overlapping coalitions.
    """
    if name not in _TEMPLATES:
        raise SchemaError(f"unknown schema {name!r}")
    bindings = {key: frozenset(value) for key, value in coalitions.items()}
    for key in _REQUIRED[name]:
        if key not in bindings:
            raise SchemaError(f"schema {name} needs a binding for {key}")
    if name == "S" and bindings["A"] & bindings["B"]:
        raise SchemaError(
            f"schema S needs disjoint coalitions, got overlap "
            f"{sorted(bindings['A'] & bindings['B'])}"
        )
    template = _bind_coalitions(_TEMPLATES[name], bindings)
    if subst:
        from .syntax import substitute

        letters = {k: v for k, v in subst.items() if k in SCHEMA_LETTERS}
        template = substitute(template, letters)
    return template
