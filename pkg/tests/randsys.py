"""Seeded random knowledge systems for property tests."""

from __future__ import annotations

import random

from proofinfo import KnowledgeSystem


def random_system(
    rng: random.Random,
    max_goals: int = 4,
    max_class_size: int = 3,
    max_fillers: int = 8,
    max_extra: int = 5,
) -> KnowledgeSystem:
    """A small valid system: every goal covered, bodies pairwise distinct."""
    goals = [f"g{i}" for i in range(rng.randint(1, max_goals))]
    fillers = [f"f{i}" for i in range(rng.randint(1, max_fillers))]
    proofs: list[tuple[str, list[str]]] = []
    seen: set[frozenset[str]] = set()
    n = 0
    for g in goals:
        for _ in range(rng.randint(1, max_class_size)):
            extra = rng.sample(fillers, k=rng.randint(0, min(max_extra, len(fillers))))
            body = frozenset([g, *extra])
            if body in seen:
                body = frozenset([*body, f"u{n}"])  # fresh token keeps bodies distinct
            seen.add(body)
            proofs.append((f"P{n}", sorted(body)))
            n += 1
    return KnowledgeSystem(goals, proofs)


def random_subset(rng: random.Random, formulas: frozenset[str]) -> list[str]:
    items = sorted(formulas)
    return rng.sample(items, k=rng.randint(0, len(items)))
