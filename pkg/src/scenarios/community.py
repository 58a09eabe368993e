"""User communities formed through middle agents.

Every user is registered with one middle agent. Users query about the users
they are interested in; when requester and target sit with different middle
agents, the target's middle agent deregisters it and the requester's middle
agent registers it. Queries come from a fixed schedule that is part of the
state, and a query whose users already share a middle agent is consumed
without a step.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from core.builder import SomasBuilder
from core.errors import InputError, UnboundNameError
from core.somas import Message, Somas, StateId
from logic.formulas import Com

logger = logging.getLogger(__name__)

IDLE = "idle"
NOOP = "noop"


def reg_prop(user: str, middle: str) -> str:
    return f"reg_{user}_{middle}"


def transit_prop(user: str) -> str:
    return f"transit_{user}"


def query_prop(requester: str, target: str) -> str:
    return f"query_{requester}_{target}"


@dataclass(frozen=True)
class CommunityConfig:
    users: Tuple[str, ...]
    middles: Tuple[str, ...]
    interests: Mapping[str, FrozenSet[str]]
    initial_registration: Mapping[str, str]
    query_schedule: Optional[Tuple[Tuple[str, str], ...]] = None

    def schedule(self) -> Tuple[Tuple[str, str], ...]:
        """The explicit schedule, or each user asking about its interests in declaration order."""
        if self.query_schedule is not None:
            return self.query_schedule
        return tuple(
            (user, target)
            for user in self.users
            for target in sorted(self.interests.get(user, ()), key=self.users.index)
        )

    def validate(self) -> None:
        users, middles = set(self.users), set(self.middles)
        if not self.users or not self.middles:
            raise InputError("a community needs users and middle agents")
        if len(users) != len(self.users) or len(middles) != len(self.middles) or users & middles:
            raise InputError("user and middle agent names must be distinct")
        for user, targets in self.interests.items():
            if user not in users:
                raise InputError(f"interests of undeclared user {user}")
            if user in targets:
                raise InputError(f"user {user} cannot be interested in itself")
            if not set(targets) <= users:
                raise InputError(f"user {user} is interested in undeclared users")
        for user in self.users:
            if self.initial_registration.get(user) not in middles:
                raise InputError(f"user {user} must be registered with one declared middle agent")
        for requester, target in self.schedule():
            if requester not in users or target not in users or requester == target:
                raise InputError(f"bad query ({requester}, {target}) in schedule")


def table_one() -> CommunityConfig:
    """Four users, three middle agents; u1/u2 and u3/u4 are interested in each other."""
    return CommunityConfig(
        users=("u1", "u2", "u3", "u4"),
        middles=("m1", "m2", "m3"),
        interests={
            "u1": frozenset({"u2"}),
            "u2": frozenset({"u1"}),
            "u3": frozenset({"u4"}),
            "u4": frozenset({"u3"}),
        },
        initial_registration={"u1": "m1", "u2": "m2", "u3": "m3", "u4": "m1"},
    )


@dataclass(frozen=True)
class _Situation:
    # registration of every user in cfg.users order; None while in transit
    registration: Tuple[Optional[str], ...]
    position: int
    transit: Optional[str] = None
    provider: Optional[str] = None


@dataclass
class _Protocol:
    cfg: CommunityConfig
    schedule: Tuple[Tuple[str, str], ...] = field(init=False)

    def __post_init__(self):
        self.schedule = self.cfg.schedule()

    def where(self, situation: _Situation, user: str) -> Optional[str]:
        return situation.registration[self.cfg.users.index(user)]

    def settle(self, registration: Tuple[Optional[str], ...], position: int) -> _Situation:
        """Skip queries whose users already share a middle agent."""
        index = self.cfg.users.index
        while position < len(self.schedule):
            requester, target = self.schedule[position]
            if registration[index(requester)] != registration[index(target)]:
                break
            position += 1
        return _Situation(registration, position)

    def query(self, situation: _Situation) -> Optional[Tuple[str, str]]:
        if situation.position < len(self.schedule):
            return self.schedule[situation.position]
        return None

    def active(self, situation: _Situation) -> Optional[Tuple[str, str, str]]:
        """(middle agent, action, partner set kind) that moves the system on, if any."""
        query = self.query(situation)
        if query is None:
            return None
        requester, target = query
        if situation.transit is None:
            return self.where(situation, target), f"deregister_{target}", "provider"
        return self.where(situation, requester), f"register_{target}", "receiver"

    def step(self, situation: _Situation) -> _Situation:
        requester, target = self.query(situation)
        registration = list(situation.registration)
        i = self.cfg.users.index(target)
        if situation.transit is None:
            provider = registration[i]
            registration[i] = None
            return _Situation(tuple(registration), situation.position, target, provider)
        registration[i] = self.where(situation, requester)
        return self.settle(tuple(registration), situation.position + 1)

    def users_of(self, situation: _Situation, middle: str) -> List[str]:
        return [u for u, m in zip(self.cfg.users, situation.registration) if m == middle]

    def labels(self, situation: _Situation) -> List[str]:
        found = [reg_prop(u, m) for u, m in zip(self.cfg.users, situation.registration) if m is not None]
        if situation.transit is not None:
            found.append(transit_prop(situation.transit))
        query = self.query(situation)
        if query is not None:
            found.append(query_prop(*query))
        return found

    def message(self, situation: _Situation, agent: str) -> Message:
        if agent in self.cfg.users:
            props = [reg_prop(agent, m) for u, m in zip(self.cfg.users, situation.registration) if u == agent and m]
            query = self.query(situation)
            if query is not None and query[0] == agent:
                props.append(query_prop(*query))
            return Message.propositions(props)
        props = [reg_prop(u, agent) for u in self.users_of(situation, agent)]
        if situation.provider == agent:
            props.append(transit_prop(situation.transit))
        return Message.propositions(props)


def community_model(cfg: CommunityConfig) -> Somas:
    """Explore the protocol from the initial registration; states are named q0, q1, ... in BFS order."""
    cfg.validate()
    protocol = _Protocol(cfg)
    start = protocol.settle(tuple(cfg.initial_registration[u] for u in cfg.users), 0)

    order = [start]
    seen = {start: 0}
    frontier = deque([start])
    while frontier:
        situation = frontier.popleft()
        if protocol.active(situation) is None:
            continue
        nxt = protocol.step(situation)
        if nxt not in seen:
            seen[nxt] = len(order)
            order.append(nxt)
            frontier.append(nxt)

    agents = cfg.users + cfg.middles
    names = {situation: f"q{i}" for i, situation in enumerate(order)}
    props = [reg_prop(u, m) for u in cfg.users for m in cfg.middles]
    props += [transit_prop(u) for u in cfg.users]
    props += sorted({query_prop(*query) for query in protocol.schedule})
    builder = SomasBuilder(agents, [names[s] for s in order], props=props)

    for situation in order:
        state = names[situation]
        builder.label(state, protocol.labels(situation))
        for agent in agents:
            builder.internal(agent, state, protocol.message(situation, agent))
        for user in cfg.users:
            builder.allow(user, state, [IDLE])
            builder.rule(user, state, [user], [("true", IDLE)])

        active = protocol.active(situation)
        for middle in cfg.middles:
            if active is not None and active[0] == middle:
                builder.allow(middle, state, [active[1], NOOP])
            else:
                builder.allow(middle, state, [NOOP])
                builder.rule(middle, state, [middle], [("true", NOOP)])

        idle_vector = [IDLE] * len(cfg.users) + [NOOP] * len(cfg.middles)
        builder.move(state, idle_vector, state)
        if active is None:
            continue

        middle, action, role = active
        requester, target = protocol.query(situation)
        vector = list(idle_vector)
        vector[agents.index(middle)] = action
        builder.move(state, vector, names[protocol.step(situation)])

        if role == "provider":
            tau = [middle]
            guard = f"has(msg({middle}), {reg_prop(target, middle)})"
            # The last user of a middle agent is asked before it leaves.
            if protocol.users_of(situation, middle) == [target]:
                tau.append(target)
                guard += f" && has(msg({target}), {reg_prop(target, middle)})"
        else:
            provider = situation.provider
            tau = [middle, provider, requester, target]
            guard = (
                f"has(msg({provider}), {transit_prop(target)}) && has(msg({requester}), {reg_prop(requester, middle)})"
            )
        builder.rule(middle, state, tau, [(guard, action), ("true", NOOP)])

    logger.info("community model: %d states for %d queries", len(order), len(protocol.schedule))
    return builder.build("community", atom_hook=lambda somas, q, atom: eval_com(somas, cfg, q, atom))


def eval_com(somas: Somas, cfg: CommunityConfig, q: StateId, atom: Com) -> bool:
    """Every user of the atom shares one of its middle agents with each user it is interested in."""
    unknown = (set(atom.users) - set(cfg.users)) | (set(atom.middles) - set(cfg.middles))
    if unknown:
        raise UnboundNameError(f"community atom names undeclared agents: {', '.join(sorted(unknown))}")
    label = somas.cgs.label(q)
    return all(
        any(reg_prop(u, m) in label and reg_prop(other, m) in label for m in atom.middles)
        for u in atom.users
        for other in cfg.interests.get(u, ())
    )


def config_from_dict(data: Mapping) -> CommunityConfig:
    try:
        schedule = data.get("schedule")
        return CommunityConfig(
            users=tuple(data["users"]),
            middles=tuple(data["middles"]),
            interests={user: frozenset(targets) for user, targets in data.get("interests", {}).items()},
            initial_registration=dict(data["initial"]),
            query_schedule=None if schedule is None else tuple((r, t) for r, t in schedule),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"invalid community config: {e}") from None


def config_to_dict(cfg: CommunityConfig) -> Dict:
    data = {
        "users": list(cfg.users),
        "middles": list(cfg.middles),
        "interests": {user: sorted(targets) for user, targets in cfg.interests.items()},
        "initial": dict(cfg.initial_registration),
    }
    if cfg.query_schedule is not None:
        data["schedule"] = [list(query) for query in cfg.query_schedule]
    return data
