from .config_loader import (
    MAX_DEGREE,
    MAX_EIGENLINE_ELEMENTS,
    MAX_ENUMERATION,
    MAX_EXTENSION_DEGREE,
    MAX_FIELD_ORDER,
    MAX_GROUP_RANK,
    MAX_RANK,
    RUNTIME_CFG,
    SYMBOLIC_MAX_RANK,
    effective_level,
    level_names,
    load_runtime_cfg,
)

__all__ = [
    "MAX_DEGREE",
    "MAX_EIGENLINE_ELEMENTS",
    "MAX_ENUMERATION",
    "MAX_EXTENSION_DEGREE",
    "MAX_FIELD_ORDER",
    "MAX_GROUP_RANK",
    "MAX_RANK",
    "RUNTIME_CFG",
    "SYMBOLIC_MAX_RANK",
    "effective_level",
    "level_names",
    "load_runtime_cfg",
]
