"""Cacti (factorizations of the long cycle) and partitioned cacti."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm import Permutation, SetPartition, compose, compose_all, cycles, is_stable, long_cycle


@dataclass(frozen=True)
class Cactus:
    """An r-tuple ``(a1, ..., ar)`` with ``a1 * a2 * ... * ar == (1 2 ... n)``.

    Color ``i`` vertices are the cycles of ``alphas[i - 1]``; r-gon ``g``
    is the face labelled ``g``.
    """

    alphas: tuple[Permutation, ...]

    def __post_init__(self):
        alphas = tuple(a if isinstance(a, Permutation) else Permutation(tuple(a)) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) < 2:
            raise ValueError("a cactus needs r >= 2 factors")
        n = alphas[0].n
        if any(a.n != n for a in alphas):
            raise ValueError("factors have different sizes")
        if compose_all(alphas) != long_cycle(n):
            raise ValueError("factors do not multiply to the long cycle")

    @property
    def n(self) -> int:
        return self.alphas[0].n

    @property
    def r(self) -> int:
        return len(self.alphas)

    def label_maps(self) -> list[Permutation]:
        """``sigma[l - 1]`` sends r-gon ``g`` to its color-``l`` edge label.

        ``sigma_1`` is the identity and ``sigma_l = ar^-1 o ... o al^-1``
        for ``l >= 2``.
        """
        r = self.r
        sig: list[Permutation] = [Permutation.identity(self.n)] * r
        acc = Permutation.identity(self.n)
        for l in range(r, 1, -1):
            acc = compose(acc, self.alphas[l - 1].inverse())
            sig[l - 1] = acc
        return sig

    def edge_labels(self) -> list[list[int]]:
        """Row ``l - 1`` lists the color-``l`` edge label of r-gons 1..n."""
        return [s.to_list() for s in self.label_maps()]

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "alphas": [a.to_list() for a in self.alphas]}


def edge_labels(c: Cactus) -> list[list[int]]:
    return c.edge_labels()


@dataclass(frozen=True)
class PartitionedCactus:
    """A cactus plus, for every color, a set partition stable under that factor."""

    cactus: Cactus
    partitions: tuple[SetPartition, ...]

    def __post_init__(self):
        parts = tuple(self.partitions)
        object.__setattr__(self, "partitions", parts)
        if len(parts) != self.cactus.r:
            raise ValueError(f"need {self.cactus.r} partitions, got {len(parts)}")
        for i, (sp, a) in enumerate(zip(parts, self.cactus.alphas), start=1):
            if sp.n != self.cactus.n:
                raise ValueError(f"partition {i} is on the wrong ground set")
            if not is_stable(sp, a):
                raise ValueError(f"partition {i} is not stable under alpha_{i}")

    @property
    def n(self) -> int:
        return self.cactus.n

    @property
    def r(self) -> int:
        return self.cactus.r

    @property
    def alphas(self) -> tuple[Permutation, ...]:
        return self.cactus.alphas

    def p_vector(self) -> tuple[int, ...]:
        return tuple(len(sp) for sp in self.partitions)

    def to_dict(self) -> dict:
        d = self.cactus.to_dict()
        d["partitions"] = [sp.to_list() for sp in self.partitions]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> PartitionedCactus:
        alphas = tuple(Permutation(tuple(a)) for a in d["alphas"])
        n = alphas[0].n
        parts = tuple(SetPartition(n, tuple(tuple(b) for b in sp)) for sp in d["partitions"])
        return cls(Cactus(alphas), parts)

    @classmethod
    def build(cls, alphas: Sequence, partitions: Sequence[Sequence[Sequence[int]]]) -> PartitionedCactus:
        alphas = tuple(a if isinstance(a, Permutation) else Permutation(tuple(a)) for a in alphas)
        n = alphas[0].n
        return cls(Cactus(alphas), tuple(SetPartition(n, tuple(tuple(b) for b in sp)) for sp in partitions))


def cactus_to_dot(pc: PartitionedCactus | Cactus) -> str:
    """Faces and vertices as a bipartite graph; partition blocks become clusters."""
    cactus = pc.cactus if isinstance(pc, PartitionedCactus) else pc
    lines = ["graph cactus {"]
    for g in range(1, cactus.n + 1):
        lines.append(f'  f{g} [label="{g}", shape=box, style=filled, fillcolor=gray];')
    for i, a in enumerate(cactus.alphas, start=1):
        groups = pc.partitions[i - 1].blocks if isinstance(pc, PartitionedCactus) else None
        for cyc in cycles(a):
            name = f"c{i}_{cyc[0]}"
            lines.append(f'  {name} [label="{i}:{"".join(map(str, cyc))}"];')
            for g in cyc:
                lines.append(f"  {name} -- f{g};")
        if groups:
            for k, b in enumerate(groups):
                members = " ".join(f"c{i}_{cyc[0]};" for cyc in cycles(a) if cyc[0] in b)
                lines.append(f'  subgraph cluster_{i}_{k} {{ label="pi{i} block {k + 1}"; {members} }}')
    lines.append("}")
    return "\n".join(lines) + "\n"
