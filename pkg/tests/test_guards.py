import pytest

from core.errors import FormulaSyntaxError, GuardTypeError, UnboundNameError
from core.guards import (
    Always,
    AndGuard,
    CompareConstant,
    CompareMessages,
    Has,
    NotGuard,
    OrGuard,
    evaluate_guard,
    guard_agents,
    guard_reads,
    parse_guard,
    render_guard,
)
from core.somas import Message

AGENTS = ("a1", "a2", "m")


def test_parse_atoms():
    assert parse_guard("true", AGENTS) == Always()
    assert parse_guard("msg(a1) >= msg(a2)", AGENTS) == CompareMessages(0, ">=", 1)
    assert parse_guard("msg(a2) < -1", AGENTS) == CompareConstant(1, "<", -1)
    assert parse_guard("has(msg(m), reg_u1_m1)", AGENTS) == Has(2, "reg_u1_m1")


def test_precedence():
    guard = parse_guard("!msg(a1) > 0 || msg(a2) == 1 && true", AGENTS)
    assert guard == OrGuard(
        NotGuard(CompareConstant(0, ">", 0)),
        AndGuard(CompareConstant(1, "==", 1), Always()),
    )


def test_render_uses_minimal_parentheses():
    text = "(msg(a1) > 0 || msg(a2) > 0) && !(true && has(msg(m), p))"
    guard = parse_guard(text, AGENTS)
    assert render_guard(guard, AGENTS) == text
    assert parse_guard(render_guard(guard, AGENTS), AGENTS) == guard


def test_syntax_error_has_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_guard("msg(a1) >= ", AGENTS)
    assert info.value.position is not None
    assert "position" in str(info.value)


def test_empty_guard():
    with pytest.raises(FormulaSyntaxError):
        parse_guard("  ", AGENTS)


def test_unknown_agent():
    with pytest.raises(UnboundNameError):
        parse_guard("msg(zz) > 1", AGENTS)


def test_guard_agents():
    assert guard_agents(parse_guard("msg(a1) > msg(m) && !has(msg(a2), p)", AGENTS)) == {0, 1, 2}
    assert guard_agents(Always()) == frozenset()


def test_guard_reads():
    guard = parse_guard("msg(a1) > msg(m) && !has(msg(a2), p) || has(msg(m), q)", AGENTS)
    assert guard_reads(guard) == {(0, True), (2, True), (1, False), (2, False)}
    assert guard_reads(Always()) == frozenset()


@pytest.mark.parametrize(
    "text,expected",
    [
        ("msg(a1) > msg(a2)", True),
        ("msg(a1) == 3", True),
        ("msg(a1) < msg(a2) || has(msg(m), p)", True),
        ("has(msg(m), q)", False),
        ("!(msg(a2) <= 2)", False),
    ],
)
def test_evaluate(text, expected):
    messages = {0: Message.integer(3), 1: Message.integer(2), 2: Message.propositions(["p"])}
    assert evaluate_guard(parse_guard(text, AGENTS), messages) is expected


def test_evaluate_kind_mismatch():
    with pytest.raises(GuardTypeError):
        evaluate_guard(parse_guard("msg(m) > 0", AGENTS), {2: Message.propositions([])})
    with pytest.raises(GuardTypeError):
        evaluate_guard(parse_guard("has(msg(a1), p)", AGENTS), {0: Message.integer(1)})


def test_evaluate_missing_message():
    with pytest.raises(GuardTypeError):
        evaluate_guard(parse_guard("msg(a1) > 0", AGENTS), {})
