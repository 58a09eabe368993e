from scenarios.community import CommunityConfig, community_model, eval_com, table_one
from scenarios.contrast import semantic_not_structural, structural_not_semantic
from scenarios.delegation import task_delegation
from scenarios.trains import two_trains, two_trains_strict

__all__ = [
    "CommunityConfig",
    "community_model",
    "eval_com",
    "semantic_not_structural",
    "structural_not_semantic",
    "table_one",
    "task_delegation",
    "two_trains",
    "two_trains_strict",
]
