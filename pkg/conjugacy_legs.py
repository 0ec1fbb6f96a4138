"""
conjugacy_legs.py
--------------------------------
Conjugacy classes in GL_n given by Jordan type, and the type A legs they
determine through a minimal marking.

Eigenvalues are opaque labels: only which partitions occur, and on which
labels, matters. Ranks of partial products prod (A - xi_j) are read off the
conjugate partitions, so no matrix is ever formed.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from sympy.utilities.iterables import multiset_permutations

from runtime import ValidationError


# ============================================================
# 1️⃣ Jordan classes
# ============================================================
@dataclass(frozen=True)
class JordanClass:
    n: int
    entries: tuple[tuple[str, tuple[int, ...]], ...]

    @classmethod
    def of(cls, entries: Iterable[tuple[str, Iterable[int]]]) -> JordanClass:
        cleaned = []
        seen = set()
        for label, parts in entries:
            parts = tuple(sorted((int(p) for p in parts), reverse=True))
            if label in seen:
                raise ValidationError(f"eigenvalue label {label!r} repeated in class")
            if not parts or parts[-1] < 1:
                raise ValidationError(f"partition for {label!r} must be nonempty positive integers, got {list(parts)}")
            seen.add(label)
            cleaned.append((label, parts))
        if not cleaned:
            raise ValidationError("conjugacy class needs at least one eigenvalue")
        return cls(sum(sum(p) for _, p in cleaned), tuple(cleaned))

    @classmethod
    def regular_semisimple(cls, n: int, prefix: str = "e") -> JordanClass:
        return cls.of((f"{prefix}{k}", (1,)) for k in range(1, n + 1))

    @classmethod
    def central(cls, n: int, label: str = "e1") -> JordanClass:
        return cls.of([(label, (1,) * n)])

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    def is_central(self) -> bool:
        return len(self.entries) == 1 and self.entries[0][1][0] == 1

    def direct_sum(self, other: JordanClass) -> JordanClass:
        """Block sum; a label present in both keeps one eigenvalue with joined blocks."""
        combined = {label: list(parts) for label, parts in self.entries}
        for label, parts in other.entries:
            combined.setdefault(label, []).extend(parts)
        return JordanClass.of(combined.items())

    def __str__(self) -> str:
        body = ", ".join(f"{label}:[{','.join(map(str, parts))}]" for label, parts in self.entries)
        return "{" + body + "}"


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(max(parts)))


# ============================================================
# 2️⃣ Invariants of a class
# ============================================================
def min_poly_degree(c: JordanClass) -> int:
    return sum(parts[0] for _, parts in c.entries)


def class_dim(c: JordanClass) -> int:
    return c.n**2 - sum(t * t for _, parts in c.entries for t in conjugate_partition(parts))


# ============================================================
# 3️⃣ Legs
# ============================================================
def leg_dims(c: JordanClass) -> tuple[int, ...]:
    """Dimensions down the leg for the greedy (largest drop first) minimal marking."""
    drops = {label: conjugate_partition(parts) for label, parts in c.entries}
    used = dict.fromkeys(drops, 0)
    dims = [c.n]
    for _ in range(min_poly_degree(c) - 1):
        best_label, best_drop = None, 0
        for label in c.labels:
            t = used[label]
            if t < len(drops[label]) and drops[label][t] > best_drop:
                best_label, best_drop = label, drops[label][t]
        used[best_label] += 1
        dims.append(dims[-1] - best_drop)
    assert c.is_central() or dims[-1] >= 1
    return tuple(dims)


def minimal_markings(c: JordanClass):
    """Every ordering of the eigenvalues, each repeated (largest block) times."""
    pool = [label for label, parts in c.entries for _ in range(parts[0])]
    yield from multiset_permutations(pool)


def leg_dims_for_marking(c: JordanClass, marking: Sequence[str]) -> tuple[int, ...]:
    expected = sorted(label for label, parts in c.entries for _ in range(parts[0]))
    if sorted(marking) != expected:
        raise ValidationError(f"{list(marking)} is not a minimal marking of {c}")
    drops = {label: conjugate_partition(parts) for label, parts in c.entries}
    used = dict.fromkeys(drops, 0)
    dims = [c.n]
    for label in marking[:-1]:
        dims.append(dims[-1] - drops[label][used[label]])
        used[label] += 1
    return tuple(dims)


def leg_pairing(dims: Sequence[int]) -> int:
    """(d, d) for the type A chain with these dimensions; equals 2n^2 - class_dim."""
    squares = sum(d * d for d in dims)
    links = sum(a * b for a, b in zip(dims, dims[1:]))
    return 2 * squares - 2 * links
