"""Reading and writing model and query files.

A model file is one JSON object in one of three shapes:

* an explicit model (``agents``, ``states``, ``props``, ``labeling``,
  ``actions``, ``available``, ``transitions``, ``internals``, ``rules``);
* a built-in scenario, ``{"scenario": "two_trains", "u1": 3, "u2": 2}``;
* a community configuration (``users``, ``middles``, ``interests``,
  ``initial`` and optionally ``schedule``).
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from core.builder import SomasBuilder
from core.errors import InputError, ModelFormatError
from core.guards import render_guard
from core.somas import INT_MESSAGE, Message, Somas
from scenarios.community import community_model, config_from_dict, table_one
from scenarios.contrast import semantic_not_structural, structural_not_semantic
from scenarios.delegation import task_delegation
from scenarios.trains import two_trains, two_trains_strict

logger = logging.getLogger(__name__)

MODEL_KEYS = {"agents", "states", "props", "labeling", "actions", "available", "transitions", "internals", "rules"}
COMMUNITY_KEYS = {"users", "middles", "interests", "initial", "schedule"}
QUERY_KEYS = {"state", "formulas", "goals", "coalitions"}

SCENARIOS = {
    "two_trains": ({"u1", "u2"}, lambda data: two_trains(int(data["u1"]), int(data["u2"]))),
    "two_trains_strict": ({"u1", "u2"}, lambda data: two_trains_strict(int(data["u1"]), int(data["u2"]))),
    "task_delegation": (set(), lambda data: task_delegation()),
    "semantic_not_structural": (set(), lambda data: semantic_not_structural()),
    "structural_not_semantic": (set(), lambda data: structural_not_semantic()),
    "community": (COMMUNITY_KEYS, lambda data: community_model(config_from_dict(data) if data else table_one())),
}


@dataclass(frozen=True)
class QueryFile:
    state: str
    formulas: Tuple[str, ...] = ()
    goals: Tuple[str, ...] = ()
    coalitions: Tuple[Tuple[str, ...], ...] = ()


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _reject_unknown(data: Mapping, allowed: set, what: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ModelFormatError(f"unknown keys in {what}: {', '.join(sorted(unknown))}")


def _expect(value: Any, kind: type, what: str):
    if not isinstance(value, kind):
        raise ModelFormatError(f"{what} must be a {kind.__name__}")
    return value


def somas_from_dict(data: Mapping) -> Somas:
    """Build a Somas from any of the three model-file shapes."""
    _expect(data, dict, "model file")
    if "scenario" in data:
        name = data["scenario"]
        if name not in SCENARIOS:
            raise ModelFormatError(f"unknown scenario {name!r}; known: {', '.join(sorted(SCENARIOS))}")
        allowed, build = SCENARIOS[name]
        params = {key: value for key, value in data.items() if key != "scenario"}
        _reject_unknown(params, allowed, f"scenario {name}")
        missing = {"u1", "u2"} - set(params) if name.startswith("two_trains") else set()
        if missing:
            raise ModelFormatError(f"scenario {name} needs {', '.join(sorted(missing))}")
        try:
            return build(params)
        except (TypeError, ValueError) as e:
            raise ModelFormatError(f"bad parameters for scenario {name}: {e}") from None
    if "users" in data:
        _reject_unknown(data, COMMUNITY_KEYS, "community config")
        return community_model(config_from_dict(data))
    return _explicit_model(data)


def _explicit_model(data: Mapping) -> Somas:
    _reject_unknown(data, MODEL_KEYS, "model")
    missing = MODEL_KEYS - set(data)
    if missing:
        raise ModelFormatError(f"model is missing keys: {', '.join(sorted(missing))}")
    builder = SomasBuilder(
        _expect(data["agents"], list, "agents"),
        _expect(data["states"], list, "states"),
        props=_expect(data["props"], list, "props"),
        actions=_expect(data["actions"], list, "actions"),
    )
    for state, props in _expect(data["labeling"], dict, "labeling").items():
        builder.label(state, _expect(props, list, f"labeling of {state}"))
    for agent, per_state in _expect(data["available"], dict, "available").items():
        for state, actions in _expect(per_state, dict, f"available actions of {agent}").items():
            builder.allow(agent, state, _expect(actions, list, f"actions of {agent} at {state}"))
    for i, move in enumerate(_expect(data["transitions"], list, "transitions")):
        _expect(move, dict, f"transition {i}")
        _reject_unknown(move, {"from", "moves", "to"}, f"transition {i}")
        try:
            builder.move(move["from"], _expect(move["moves"], dict, f"moves of transition {i}"), move["to"])
        except KeyError as e:
            raise ModelFormatError(f"transition {i} is missing {e}") from None
    for agent, per_state in _expect(data["internals"], dict, "internals").items():
        for state, message in _expect(per_state, dict, f"internals of {agent}").items():
            builder.internal(agent, state, _message(message, f"internal of {agent} at {state}"))
    for agent, per_state in _expect(data["rules"], dict, "rules").items():
        for state, rule in _expect(per_state, dict, f"rules of {agent}").items():
            _expect(rule, dict, f"rule of {agent} at {state}")
            _reject_unknown(rule, {"tau", "gamma"}, f"rule of {agent} at {state}")
            gamma = []
            for entry in _expect(rule.get("gamma", []), list, f"gamma of {agent} at {state}"):
                _expect(entry, dict, f"gamma entry of {agent} at {state}")
                _reject_unknown(entry, {"guard", "action"}, f"gamma entry of {agent} at {state}")
                if "guard" not in entry or "action" not in entry:
                    raise ModelFormatError(f"gamma entry of {agent} at {state} needs guard and action")
                gamma.append(
                    (
                        _expect(entry["guard"], str, f"guard of {agent} at {state}"),
                        _expect(entry["action"], str, f"gamma action of {agent} at {state}"),
                    )
                )
            builder.rule(agent, state, _expect(rule.get("tau", []), list, f"tau of {agent} at {state}"), gamma)
    return builder.build("model")


def _message(data: Any, what: str) -> Message:
    _expect(data, dict, what)
    if set(data) == {"int"} and isinstance(data["int"], int) and not isinstance(data["int"], bool):
        return Message.integer(data["int"])
    if set(data) == {"props"} and isinstance(data["props"], list):
        return Message.propositions(data["props"])
    raise ModelFormatError(f"{what} must be {{\"int\": n}} or {{\"props\": [...]}}")


def load_somas(path: Union[str, Path]) -> Somas:
    data = read_json(path)
    somas = somas_from_dict(data)
    logger.info("loaded %s from %s: %d agents, %d states", somas.name, path, len(somas.agents), len(somas.states))
    return somas


def dump_somas(somas: Somas) -> Dict[str, Any]:
    """The explicit model-file form of ``somas``."""
    cgs = somas.cgs
    agents, states = cgs.agents, cgs.states
    transitions: List[Dict[str, Any]] = []
    for q in cgs.state_ids():
        for vector, target in cgs.moves(q):
            transitions.append({"from": states[q], "moves": dict(zip(agents, vector)), "to": states[target]})
    internals: Dict[str, Dict[str, Any]] = {}
    for (a, q), message in sorted(somas.internals.items()):
        payload = {"int": message.payload} if message.tag == INT_MESSAGE else {"props": sorted(message.payload)}
        internals.setdefault(agents[a], {})[states[q]] = payload
    rules: Dict[str, Dict[str, Any]] = {}
    for a, rule in sorted(somas.rules.items()):
        for q in cgs.state_ids():
            if q not in rule.tau and q not in rule.gamma:
                continue
            rules.setdefault(agents[a], {})[states[q]] = {
                "tau": sorted(agents[i] for i in rule.partners(q)),
                "gamma": [{"guard": render_guard(guard, agents), "action": action} for guard, action in rule.table(q)],
            }
    return {
        "agents": list(agents),
        "states": list(states),
        "props": list(cgs.props),
        "labeling": {states[q]: sorted(cgs.label(q)) for q in cgs.state_ids() if cgs.label(q)},
        "actions": list(cgs.actions),
        "available": {
            agents[a]: {states[q]: sorted(cgs.actions_of(a, q)) for q in cgs.state_ids() if (a, q) in cgs.available}
            for a in cgs.agent_ids()
        },
        "transitions": transitions,
        "internals": internals,
        "rules": rules,
    }


def save_somas(somas: Somas, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(dump_somas(somas), indent=2) + "\n", encoding="utf-8")


def load_query(path: Union[str, Path]) -> QueryFile:
    data = _expect(read_json(path), dict, "query file")
    _reject_unknown(data, QUERY_KEYS, "query file")
    if not isinstance(data.get("state"), str):
        raise ModelFormatError("query file needs a state name")

    def strings(key: str) -> Tuple[str, ...]:
        values = _expect(data.get(key, []), list, key)
        if not all(isinstance(value, str) for value in values):
            raise ModelFormatError(f"{key} must be a list of strings")
        return tuple(values)

    coalitions = []
    for coalition in _expect(data.get("coalitions", []), list, "coalitions"):
        if not isinstance(coalition, list) or not all(isinstance(name, str) for name in coalition):
            raise ModelFormatError("coalitions must be lists of agent names")
        coalitions.append(tuple(coalition))
    return QueryFile(data["state"], strings("formulas"), strings("goals"), tuple(coalitions))


def resolve_state(somas: Somas, name: Optional[str]) -> int:
    """State id for ``name``, defaulting to the first state."""
    return 0 if name is None else somas.state_id(name)
