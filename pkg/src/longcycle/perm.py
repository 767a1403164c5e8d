"""Permutations of {1..n}, cycle structure and set partitions.

Composition is right-to-left: ``compose(s, t)(x) == s(t(x))``, so the
product ``a1 * a2 * ... * ar`` applies ``ar`` first.  All labels are
1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} stored as its image table.

    ``images[x - 1]`` is the image of ``x``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("a permutation needs n >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __repr__(self):
        return f"Permutation({cycle_string(self)}, n={self.n})"

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from disjoint cycles; unlisted points are fixed."""
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen or not 1 <= x <= n:
                    raise ValueError(f"bad cycle {cyc} for n={n}")
                seen.add(x)
                images[x - 1] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def to_list(self) -> list[int]:
        return list(self.images)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Return ``sigma o tau``, i.e. ``x -> sigma(tau(x))``."""
    if sigma.n != tau.n:
        raise ValueError(f"size mismatch: {sigma.n} != {tau.n}")
    s = sigma.images
    return Permutation(tuple(s[y - 1] for y in tau.images))


def compose_all(perms: Sequence[Permutation]) -> Permutation:
    """Product ``perms[0] o perms[1] o ... o perms[-1]`` (last acts first)."""
    if not perms:
        raise ValueError("empty product")
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = compose(p, out)
    return out


def long_cycle(n: int) -> Permutation:
    """The cycle (1 2 ... n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(tuple(range(2, n + 1)) + (1,))


def cycles(p: Permutation) -> list[list[int]]:
    """Disjoint cycles, each starting at its minimum, sorted by minimum."""
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p(x)
        out.append(cyc)
    return out


def cycle_type(p: Permutation) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def num_cycles(p: Permutation) -> int:
    return len(cycles(p))


def cycle_string(p: Permutation) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p))


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order of image tables."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


@dataclass(frozen=True)
class SetPartition:
    """A set partition of {1..n} in canonical form.

    Blocks are sorted tuples, ordered by their minimum element.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        object.__setattr__(self, "blocks", blocks)
        flat = [x for b in blocks for x in b]
        if any(not b for b in blocks):
            raise ValueError("empty block")
        if sorted(flat) != list(range(1, self.n + 1)):
            raise ValueError(f"{[list(b) for b in blocks]} is not a set partition of 1..{self.n}")

    def __len__(self):
        return len(self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def to_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def is_stable(sp: SetPartition, p: Permutation) -> bool:
    """True iff every block of ``sp`` is a union of cycles of ``p``."""
    if sp.n != p.n:
        raise ValueError(f"size mismatch: {sp.n} != {p.n}")
    for b in sp.blocks:
        members = set(b)
        if any(p(x) not in members for x in b):
            return False
    return True


def orbit_partition(p: Permutation) -> SetPartition:
    return SetPartition(p.n, tuple(tuple(c) for c in cycles(p)))


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions of ``items`` via restricted growth strings.

    Blocks come out ordered by first occurrence; elements keep input order.
    """
    items = list(items)
    if not items:
        yield []
        return

    def grow(k: int, blocks: list[list]):
        if k == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[k]
        for b in blocks:
            b.append(x)
            yield from grow(k + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from grow(k + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def stable_partitions(p: Permutation) -> Iterator[SetPartition]:
    """Every set partition of {1..n} stable under ``p``."""
    cyc = cycles(p)
    for grouping in set_partitions(cyc):
        yield SetPartition(p.n, tuple(tuple(x for c in group for x in c) for group in grouping))
