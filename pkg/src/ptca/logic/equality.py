"""State comparison under the three equality modes.

``SYNTACTIC`` is structural identity, ``SET_SIDES`` additionally ignores the
order and multiplicity of formulas on each side of a sequent, and
``ALPHA`` further identifies states that differ by a consistent, injective
renaming of term variables.  Each mode is coarser than the previous one.
"""

from __future__ import annotations

import enum

from .syntax import (
    EqAtom,
    Neg,
    PredAtom,
    PropVar,
    Sequent,
    Succ,
    Var,
)


class EqualityMode(enum.Enum):
    SYNTACTIC = "syntactic"
    SET_SIDES = "set"
    ALPHA = "alpha"

    @classmethod
    def parse(cls, text: str) -> "EqualityMode":
        aliases = {"setsides": "set", "set-sides": "set", "alpha-equivalent": "alpha", "alphaequivalent": "alpha"}
        key = text.strip().lower()
        return cls(aliases.get(key, key))


def states_equal(a, b, mode: EqualityMode = EqualityMode.SYNTACTIC) -> bool:
    """Compare two states of the same kind under ``mode``.

    Non-logical states (mixtures, plain values) compare with ``==``; their
    types are responsible for any canonical normalisation.
    """
    if a == b:
        return True
    if mode is EqualityMode.SYNTACTIC:
        return False
    if isinstance(a, Sequent) and isinstance(b, Sequent):
        if mode is EqualityMode.SET_SIDES:
            return set(a.antecedent) == set(b.antecedent) and set(a.succedent) == set(b.succedent)
        return _alpha_sequents(a, b)
    if mode is EqualityMode.ALPHA and not isinstance(a, Sequent) and not isinstance(b, Sequent):
        return _match_formula(a, b, {}, {}) is not None
    return False


# Bijection bookkeeping: fwd maps names of ``a`` to names of ``b``, bwd the
# inverse.  Matchers return extended copies, or None on failure.


def _match_term(s, t, fwd, bwd):
    while isinstance(s, Succ) and isinstance(t, Succ):
        s, t = s.inner, t.inner
    if isinstance(s, Var) and isinstance(t, Var):
        if s.name in fwd or t.name in bwd:
            if fwd.get(s.name) == t.name and bwd.get(t.name) == s.name:
                return fwd, bwd
            return None
        fwd = {**fwd, s.name: t.name}
        bwd = {**bwd, t.name: s.name}
        return fwd, bwd
    if type(s) is not type(t) or isinstance(s, (Succ, Var)):
        return None
    return fwd, bwd  # both Zero


def _match_formula(f, g, fwd, bwd):
    if type(f) is not type(g):
        return None
    if isinstance(f, PropVar):
        return (fwd, bwd) if f.name == g.name else None
    if isinstance(f, PredAtom):
        return _match_term(f.arg, g.arg, fwd, bwd) if f.pred == g.pred else None
    if isinstance(f, EqAtom):
        r = _match_term(f.left, g.left, fwd, bwd)
        return r and _match_term(f.right, g.right, *r)
    if isinstance(f, Neg):
        return _match_formula(f.inner, g.inner, fwd, bwd)
    r = _match_formula(f.left, g.left, fwd, bwd)
    return r and _match_formula(f.right, g.right, *r)


def _match_sets(xs, ys, fwd, bwd):
    """Find a bijection between ``xs`` and ``ys`` compatible with a single
    variable renaming.  Items are ``(side, formula)`` pairs; formulas only
    pair up with formulas on the same side."""
    if not xs:
        return fwd, bwd
    (side, head), rest = xs[0], xs[1:]
    for j, (yside, y) in enumerate(ys):
        if yside != side:
            continue
        r = _match_formula(head, y, fwd, bwd)
        if r is not None:
            r = _match_sets(rest, ys[:j] + ys[j + 1:], *r)
            if r is not None:
                return r
    return None


def _sides(s: Sequent):
    ant = tuple(dict.fromkeys(s.antecedent))
    suc = tuple(dict.fromkeys(s.succedent))
    return ant, suc


def _alpha_sequents(a: Sequent, b: Sequent) -> bool:
    (aa, sa), (ab, sb) = _sides(a), _sides(b)
    if len(aa) != len(ab) or len(sa) != len(sb):
        return False
    xs = tuple(("L", f) for f in aa) + tuple(("R", f) for f in sa)
    ys = tuple(("L", f) for f in ab) + tuple(("R", f) for f in sb)
    return _match_sets(xs, ys, {}, {}) is not None
