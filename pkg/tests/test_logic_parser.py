import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptca.logic import (
    And,
    ArityError,
    EqAtom,
    FormulaSyntaxError,
    Impl,
    LexicalError,
    Neg,
    Or,
    ParseError,
    PredAtom,
    PropVar,
    Sequent,
    Succ,
    Var,
    Zero,
    format_formula,
    format_sequent,
    parse_formula,
    parse_sequent,
    parse_term,
)
from ptca.logic.parser import tokenize

from strategies import bounded_formulas, sequents

p, q, r = PropVar("p"), PropVar("q"), PropVar("r")


# -- worked examples -----------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(p->q)->r", Impl(Impl(p, q), r)),
        ("p", p),
        ("~p|q", Or(Neg(p), q)),
        ("p->q->p", Impl(p, Impl(q, p))),
        ("p&q|r", Or(And(p, q), r)),
        ("p|q&r", Or(p, And(q, r))),
        ("p|q|r", Or(Or(p, q), r)),
        ("~~p", Neg(Neg(p))),
        ("N(x+1)", PredAtom("N", Succ(Var("x")))),
        ("z=(y+1)", EqAtom(Var("z"), Succ(Var("y")))),
        ("z=y+1", EqAtom(Var("z"), Succ(Var("y")))),
        ("0=x", EqAtom(Zero(), Var("x"))),
        ("(x=0)", EqAtom(Var("x"), Zero())),
        ("~x=0", Neg(EqAtom(Var("x"), Zero()))),
        ("(p ⊃ q) ⊃ r", Impl(Impl(p, q), r)),
        ("¬p ∨ q", Or(Neg(p), q)),
    ],
)
def test_parse_formula_examples(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize(
    "f, text",
    [
        (Impl(Impl(p, q), r), "(p->q)->r"),
        (Or(Neg(p), q), "~p|q"),
        (Impl(p, Impl(q, p)), "p->q->p"),
        (Or(p, Or(q, r)), "p|(q|r)"),
        (Neg(Or(p, q)), "~(p|q)"),
        (And(Or(p, q), r), "(p|q)&r"),
        (EqAtom(Var("z"), Succ(Var("y"))), "z=y+1"),
    ],
)
def test_format_formula_examples(f, text):
    assert format_formula(f) == text
    assert parse_formula(text) == f


def test_parse_sequent_examples():
    assert parse_sequent("p => q, r") == Sequent((p,), (q, r))
    x = Var("x")
    assert parse_sequent("N(x) => O(x), E(x)") == Sequent((PredAtom("N", x),), (PredAtom("O", x), PredAtom("E", x)))
    assert parse_sequent("=>") == Sequent((), ())
    assert format_sequent(Sequent((), ())) == "=>"
    assert format_sequent(parse_sequent("p,q=>")) == "p, q =>"
    assert parse_sequent("p ↪ q") == Sequent((p,), (q,))


@pytest.mark.parametrize(
    "text, kind",
    [
        ("p->", FormulaSyntaxError),
        ("(p", FormulaSyntaxError),
        ("p q", FormulaSyntaxError),
        ("", FormulaSyntaxError),
        ("p $ q", LexicalError),
        ("N(2)", LexicalError),
        ("N()", ArityError),
        ("N(x, y)", ArityError),
        ("Q(x)", FormulaSyntaxError),
    ],
)
def test_parse_errors_are_distinct(text, kind):
    with pytest.raises(kind) as info:
        parse_formula(text)
    assert isinstance(info.value, ParseError)
    assert info.value.pos is not None


def test_error_position_points_at_problem():
    with pytest.raises(LexicalError) as info:
        parse_formula("p | $")
    assert info.value.pos == 4


@pytest.mark.parametrize("text", ["p => q => r", "p", "p, q", "=> =>"])
def test_sequent_needs_exactly_one_arrow(text):
    with pytest.raises(FormulaSyntaxError):
        parse_sequent(text)


def test_parse_term():
    assert parse_term("x+1+1") == Succ(Succ(Var("x")))
    assert str(parse_term("0+1")) == "0+1"


# -- oracle: exhaustive trees filtered by the precedence rules --------------------

LEVEL = {"->": 1, "|": 2, "&": 3}
CTOR = {"->": Impl, "|": Or, "&": And}
TIGHT = 4  # atoms, negations, parenthesised groups


def oracle_parses(tokens):
    """Every tree the ambiguous grammar F ::= a | ~F | F op F | (F) admits,
    kept only when each operand respects precedence and associativity."""
    n = len(tokens)
    memo = {}

    def spans(i, j):
        if (i, j) in memo:
            return memo[(i, j)]
        out = set()
        if j - i == 1 and tokens[i] in ("p", "q"):
            out.add((PropVar(tokens[i]), TIGHT))
        if j - i >= 2 and tokens[i] == "~":
            for f, lvl in spans(i + 1, j):
                if lvl >= TIGHT:
                    out.add((Neg(f), TIGHT))
        if j - i >= 3 and tokens[i] == "(" and tokens[j - 1] == ")":
            for f, _ in spans(i + 1, j - 1):
                out.add((f, TIGHT))
        for k in range(i + 1, j - 1):
            op = tokens[k]
            if op not in LEVEL:
                continue
            L = LEVEL[op]
            for lf, ll in spans(i, k):
                for rf, rl in spans(k + 1, j):
                    if op == "->":
                        ok = ll > L and rl >= L
                    else:
                        ok = ll >= L and rl > L
                    if ok:
                        out.add((CTOR[op](lf, rf), L))
        memo[(i, j)] = out
        return out

    return {f for f, _ in spans(0, n)}


ALPHABET = ["p", "q", "~", "&", "|", "->", "(", ")"]


def _check_against_oracle(tokens):
    trees = oracle_parses(tokens)
    assert len(trees) <= 1, f"precedence rules leave {tokens} ambiguous"
    text = " ".join(tokens)
    try:
        got = parse_formula(text)
    except ParseError:
        assert not trees, f"parser rejected {text!r}"
        return
    assert trees == {got}, f"{text!r}: parser {got}, oracle {trees}"


def test_parser_matches_oracle_exhaustively_up_to_5_tokens():
    for n in range(1, 6):
        for tokens in itertools.product(ALPHABET, repeat=n):
            _check_against_oracle(list(tokens))


@settings(max_examples=400, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), min_size=6, max_size=8))
def test_parser_matches_oracle_on_longer_strings(tokens):
    _check_against_oracle(tokens)


def test_oracle_agrees_on_precedence_example():
    assert oracle_parses(["~", "p", "|", "q"]) == {Or(Neg(p), q)}


# -- round trip and minimal parentheses ------------------------------------------


@settings(max_examples=1000, deadline=None)
@given(bounded_formulas(max_depth=6))
def test_formula_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@settings(max_examples=300, deadline=None)
@given(sequents())
def test_sequent_round_trip(s):
    assert parse_sequent(format_sequent(s)) == s


def _paren_pairs(text):
    stack, pairs = [], []
    for i, c in enumerate(text):
        if c == "(":
            stack.append(i)
        elif c == ")":
            pairs.append((stack.pop(), i))
    return pairs


@settings(max_examples=500, deadline=None)
@given(bounded_formulas(max_depth=6))
def test_no_removable_parentheses(f):
    text = format_formula(f)
    for i, j in _paren_pairs(text):
        stripped = text[:i] + text[i + 1:j] + text[j + 1:]
        try:
            assert parse_formula(stripped) != f, f"parentheses at {i}..{j} of {text!r} are redundant"
        except ParseError:
            pass


def test_tokenize_positions():
    toks = tokenize("p -> q")
    assert [(t.kind, t.pos) for t in toks] == [("ident", 0), ("->", 2), ("ident", 5), ("eof", 6)]
