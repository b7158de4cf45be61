"""Built-in rings and modules used by ``corpus run`` and the test-suite."""
from __future__ import annotations

from .modules import LeftModule, module_make
from .rings import FiniteRing, ring_build


RING_SPECS = [f"zmod:{n}" for n in range(1, 33)] + [
    "mat:2:2", "mat:3:2", "gf:4", "gf:8", "gf:9", "prod:zmod:2;zmod:4", "prod:gf:4;zmod:3", "ex:f2xy",
    "ex:ut2", "ex:f2x3",
]

MODULE_SPECS = [
    "matmod:2:1:1", "matmod:2:1:2", "matmod:2:2:1", "matmod:2:1:3", "matmod:2:2:2", "matmod:3:1:2",
    "subfield:4:2", "subfield:8:2", "subfield:9:3", "subfield:16:4",
    "ringself:zmod:4", "ringself:zmod:6", "ringself:zmod:8", "ringself:zmod:9",
    "ringself:ex:f2xy", "ringself:mat:2:2", "ringself:gf:4", "ringself:prod:zmod:2;zmod:4",
    "ringself:ex:ut2",
]


def corpus_rings() -> list[tuple[str, FiniteRing]]:
    """(name, ring) pairs. mat:3:2 has 81 elements, above the default ideal cap."""
    return [(s, ring_build(s)) for s in RING_SPECS]


def corpus_modules() -> list[tuple[str, LeftModule]]:
    return [(s, module_make(s)) for s in MODULE_SPECS]
