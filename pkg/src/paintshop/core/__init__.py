"""Problem model, simulation state and transition functions."""

from .engine import BACKEND, INVALID_REWARD
from .instance import INSTANCE_SCHEMA, Instance, make_instance
from .state import (
    RETRIEVE,
    STORE,
    Action,
    ShopState,
    Solution,
    actions_to_arrays,
    apply,
    color_changes,
    encode_observation,
    is_terminal,
    legal,
    new_state,
    replay,
    replay_change_count,
    retrieve,
    step_inplace,
    store,
)

__all__ = [
    "BACKEND",
    "INVALID_REWARD",
    "INSTANCE_SCHEMA",
    "Instance",
    "make_instance",
    "RETRIEVE",
    "STORE",
    "Action",
    "ShopState",
    "Solution",
    "actions_to_arrays",
    "apply",
    "color_changes",
    "encode_observation",
    "is_terminal",
    "legal",
    "new_state",
    "replay",
    "replay_change_count",
    "retrieve",
    "step_inplace",
    "store",
]
