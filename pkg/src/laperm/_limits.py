"""Size bounds with a single environment override (``LAPERM_MAX_N``)."""

import os

DEFAULTS = {
    "canonical": 32,
    "matching": 20,
    "naive": 9,
    "ryser": 28,
    "char_poly": 16,
    "trees": 16,
    "unicyclic": 13,
    "grow": 24,
    "lemma34": 200,
}


def bound(name: str, override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("LAPERM_MAX_N")
    if env:
        return int(env)
    return DEFAULTS[name]
