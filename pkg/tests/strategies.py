"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from ptca.logic import And, EqAtom, Impl, Neg, Or, PredAtom, PropVar, Sequent, Succ, Var, Zero

ATOM_NAMES = ("p", "q", "r", "s")
VAR_NAMES = ("x", "y", "z")


def terms(var_names=VAR_NAMES, max_succ=3):
    base = st.one_of(st.just(Zero()), st.sampled_from(var_names).map(Var))
    return st.tuples(base, st.integers(0, max_succ)).map(_wrap_succ)


def _wrap_succ(pair):
    t, k = pair
    for _ in range(k):
        t = Succ(t)
    return t


def atoms(var_names=VAR_NAMES):
    return st.one_of(
        st.sampled_from(ATOM_NAMES).map(PropVar),
        st.builds(PredAtom, st.sampled_from("NEO"), terms(var_names)),
        st.builds(EqAtom, terms(var_names), terms(var_names)),
    )


def formulas(max_leaves=12, var_names=VAR_NAMES, leaves=None):
    leaves = atoms(var_names) if leaves is None else leaves
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(Neg, sub),
            st.builds(Or, sub, sub),
            st.builds(And, sub, sub),
            st.builds(Impl, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def depth(f) -> int:
    if isinstance(f, Neg):
        return 1 + depth(f.inner)
    if isinstance(f, (Or, And, Impl)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def bounded_formulas(max_depth=6, **kw):
    return formulas(**kw).filter(lambda f: depth(f) <= max_depth)


def sequents(max_side=3, **kw):
    side = st.lists(formulas(max_leaves=6, **kw), max_size=max_side).map(tuple)
    return st.builds(Sequent, side, side)


def predicate_sequents(max_side=3, var_names=VAR_NAMES):
    side = st.lists(st.one_of(
        st.builds(PredAtom, st.sampled_from("NEO"), terms(var_names, 2)),
        st.builds(EqAtom, terms(var_names, 1), terms(var_names, 1)),
    ), max_size=max_side).map(tuple)
    return st.builds(Sequent, side, side)


def implicational(max_leaves=6):
    """Formulas over p, q, r built with implication only."""
    return st.recursive(
        st.sampled_from(("p", "q", "r")).map(PropVar),
        lambda sub: st.builds(Impl, sub, sub),
        max_leaves=max_leaves,
    )
