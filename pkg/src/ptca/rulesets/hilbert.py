"""Hilbert-style rules: modus ponens and the five Shoenfield cases."""

from __future__ import annotations

from ..logic.syntax import Impl, Neg, Or
from .base import Case, CaseRuleset


# -- modus ponens ------------------------------------------------------------


def _match_mp(own, neighbors, rs):
    if not isinstance(own, Impl):
        return None
    for i, n in enumerate(neighbors):
        if n is not None and n == own.left:
            return {"phi": own.left, "psi": own.right}, i
    return None


MP_CASES = {
    "MP": Case(
        "MP",
        _match_mp,
        premise=lambda b: Impl(b["phi"], b["psi"]),
        conclusion=lambda b: b["psi"],
        side_premise=lambda b: b["phi"],
    )
}


class ModusPonens(CaseRuleset):
    """``phi -> psi`` becomes ``psi`` when some neighbor holds ``phi``."""

    name = "mp"
    cases = MP_CASES

    def __init__(self):
        super().__init__(["MP"])


def mp_delta(own, neighbors):
    return ModusPonens()(own, neighbors)


# -- Shoenfield ------------------------------------------------------------------


def _expansion(own, neighbors, rs):
    for i, n in enumerate(neighbors):
        if n is not None:
            return {"phi": own, "psi": n}, i
    return None


def _contraction(own, neighbors, rs):
    if isinstance(own, Or) and own.left == own.right:
        return {"phi": own.left}, None
    return None


def _associativity(own, neighbors, rs):
    if isinstance(own, Or) and isinstance(own.right, Or):
        return {"chi": own.left, "psi": own.right.left, "phi": own.right.right}, None
    return None


def _cut_left(own, neighbors, rs):
    if not isinstance(own, Or):
        return None
    phi, chi = own.left, own.right
    for i, n in enumerate(neighbors):
        if isinstance(n, Or) and n.left == Neg(phi):
            return {"phi": phi, "chi": chi, "psi": n.right}, i
    return None


def _cut_right(own, neighbors, rs):
    if not (isinstance(own, Or) and isinstance(own.left, Neg)):
        return None
    phi, psi = own.left.inner, own.right
    for i, n in enumerate(neighbors):
        if isinstance(n, Or) and n.left == phi:
            return {"phi": phi, "psi": psi, "chi": n.right}, i
    return None


SHOENFIELD_CASES = {
    "SH1": Case(
        "SH1", _expansion,
        premise=lambda b: b["phi"],
        conclusion=lambda b: Or(b["psi"], b["phi"]),
        side_premise=lambda b: b["psi"],
    ),
    "SH2": Case(
        "SH2", _contraction,
        premise=lambda b: Or(b["phi"], b["phi"]),
        conclusion=lambda b: b["phi"],
    ),
    "SH3": Case(
        "SH3", _associativity,
        premise=lambda b: Or(b["chi"], Or(b["psi"], b["phi"])),
        conclusion=lambda b: Or(Or(b["chi"], b["psi"]), b["phi"]),
    ),
    "SH4": Case(
        "SH4", _cut_left,
        premise=lambda b: Or(b["phi"], b["chi"]),
        conclusion=lambda b: Or(b["chi"], b["psi"]),
        side_premise=lambda b: Or(Neg(b["phi"]), b["psi"]),
    ),
    "SH5": Case(
        "SH5", _cut_right,
        premise=lambda b: Or(Neg(b["phi"]), b["psi"]),
        conclusion=lambda b: Or(b["chi"], b["psi"]),
        side_premise=lambda b: Or(b["phi"], b["chi"]),
    ),
}


class Shoenfield(CaseRuleset):
    """Expansion, contraction, associativity and the two cut cases, tried in
    that order.  Expansion binds its free formula to the first present
    neighbor and is off unless asked for."""

    name = "shoenfield"
    cases = SHOENFIELD_CASES

    def __init__(self, expansion: bool = False):
        order = ["SH1", "SH2", "SH3", "SH4", "SH5"]
        super().__init__(order if expansion else order[1:])
        self.expansion = expansion


def shoenfield_delta(own, neighbors, expansion: bool = False):
    return Shoenfield(expansion)(own, neighbors)
