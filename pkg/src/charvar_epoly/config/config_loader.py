import json
import logging
from pathlib import Path

log = logging.getLogger(__name__)

# ---------- Config load ----------
_ROOT = Path(__file__).parent
RUNTIME_CFG_PATH = _ROOT / "runtime_config.json"


def load_runtime_cfg(path: Path = RUNTIME_CFG_PATH) -> dict:
    """Packaged runtime config, falling back to built-in guard limits."""
    cfg = {
        "defaults": {
            "max_rank": 64,
            "max_group_rank": 16,
            "max_degree": 10_000,
            "max_field_order": 2**20,
            "max_extension_degree": 12,
            "max_enumeration": 2**36,
            "max_eigenline_elements": 100_000,
            "symbolic_max_rank": 20,
        },
        "levels": {},
    }
    if path.exists():
        try:
            loaded = json.loads(path.read_text(encoding="utf-8"))
            cfg["defaults"].update(loaded.get("defaults", {}))
            cfg["levels"].update(loaded.get("levels", {}))
        except (OSError, json.JSONDecodeError) as e:
            log.warning("ignoring unreadable runtime config %s: %s", path, e)
    return cfg


def effective_level(level: str, runtime_cfg: dict) -> dict:
    """
    Resolve one verification level:
    - start from the defaults
    - walk the "extends" chain, parents first
    - concatenate the checks lists in that order
    Raises KeyError for an unknown level.
    """
    levels = runtime_cfg.get("levels", {})
    chain = []
    seen = set()
    key = level
    while key is not None:
        if key in seen:
            raise KeyError(f"cyclic 'extends' at level {key!r}")
        seen.add(key)
        chain.append(levels[key])
        key = levels[key].get("extends")

    d = dict(runtime_cfg.get("defaults", {}))
    checks = []
    for spec in reversed(chain):
        d.update({k: v for k, v in spec.items() if k not in ("checks", "extends")})
        checks.extend(spec.get("checks", []))
    d["checks"] = checks
    d["level"] = level
    return d


def level_names(runtime_cfg: dict) -> list[str]:
    return sorted(runtime_cfg.get("levels", {}))


_cfg = load_runtime_cfg()

# ---------- Exports ----------
RUNTIME_CFG = _cfg
MAX_RANK = int(_cfg["defaults"]["max_rank"])
MAX_GROUP_RANK = int(_cfg["defaults"]["max_group_rank"])
MAX_DEGREE = int(_cfg["defaults"]["max_degree"])
MAX_FIELD_ORDER = int(_cfg["defaults"]["max_field_order"])
MAX_EXTENSION_DEGREE = int(_cfg["defaults"]["max_extension_degree"])
MAX_ENUMERATION = int(_cfg["defaults"]["max_enumeration"])
MAX_EIGENLINE_ELEMENTS = int(_cfg["defaults"]["max_eigenline_elements"])
SYMBOLIC_MAX_RANK = int(_cfg["defaults"]["symbolic_max_rank"])
