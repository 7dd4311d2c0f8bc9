"""The built-in verification corpus.

Compiled in rather than downloaded so runs are reproducible offline:
all cyclic groups up to order 40, dihedral groups up to D(12),
the three smallest generalized quaternion groups, small symmetric and
alternating groups, and the elementary-abelian-times-cyclic-3-power
family up to order 72.
"""

from __future__ import annotations

from typing import Iterator

from .groups import Group, build_group


def _family_specs() -> list[str]:
    specs = [f"Z({n})" for n in range(1, 41)]
    specs += [f"D({n})" for n in range(1, 13)]
    specs += ["Q(8)", "Q(16)", "Q(32)"]
    specs += ["S(3)", "S(4)", "A(4)"]
    for k in range(1, 7):
        for m in range(1, 5):
            if 2**k * 3**m <= 72:
                specs.append(f"E(2,{k})xZ(3^)".replace("3^", str(3**m)))
    return specs


CORPUS_SPECS: tuple[str, ...] = tuple(_family_specs())


def iter_corpus(max_order: int | None = None) -> Iterator[tuple[str, Group]]:
    """Yield (spec text, built group) in fixed corpus order."""
    for spec in CORPUS_SPECS:
        g = build_group(spec)
        if max_order is not None and g.n > max_order:
            continue
        yield spec, g
