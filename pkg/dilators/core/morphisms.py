"""Strictly increasing maps between finite ordinals m -> n."""
from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Sequence, Tuple

from ..errors import ArityError


@dataclass(frozen=True)
class Morphism:
    images: Tuple[int, ...]
    codomain: int

    def __post_init__(self) -> None:
        prev = -1
        for x in self.images:
            if x <= prev or x >= self.codomain:
                raise ArityError(f"{self.images} is not a strictly increasing map into {self.codomain}")
            prev = x

    @property
    def domain(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def range(self) -> frozenset:
        return frozenset(self.images)

    def compose(self, inner: "Morphism") -> "Morphism":
        """``self . inner``: first ``inner``, then ``self``."""
        if inner.codomain != self.domain:
            raise ArityError(f"cannot compose {inner} into {self}")
        return Morphism(tuple(self.images[i] for i in inner.images), self.codomain)

    def restrict(self, k: int) -> "Morphism":
        """``f|k : k -> f(k)``, defined for ``k < domain``."""
        return Morphism(self.images[:k], self.images[k])

    def image_of(self, subset: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.images[i] for i in subset)

    def preimage(self, j: int) -> int:
        return self.images.index(j)

    def missing(self) -> List[int]:
        hit = self.range()
        return [j for j in range(self.codomain) if j not in hit]


def identity(n: int) -> Morphism:
    return Morphism(tuple(range(n)), n)


def coface(n: int, i: int) -> Morphism:
    """delta_i : n -> n+1, skipping ``i``."""
    if not 0 <= i <= n:
        raise ArityError(f"no coface delta_{i} on {n}")
    return Morphism(tuple(range(i)) + tuple(range(i + 1, n + 1)), n + 1)


def factor_cofaces(f: Morphism, descending: bool = False) -> List[Tuple[int, int]]:
    """Cofaces ``(n, i)`` whose composition, applied left to right, equals ``f``.

    Ascending order skips the missing points from the bottom up; descending
    order skips them from the top down with shifted indices.
    """
    missing = f.missing()
    n = f.domain
    steps = []
    if not descending:
        for i in missing:
            steps.append((n, i))
            n += 1
        return steps
    k = len(missing)
    for pos, i in enumerate(reversed(missing)):
        steps.append((n, i - (k - 1 - pos)))
        n += 1
    return steps


def morphisms(m: int, n: int) -> Iterator[Morphism]:
    for images in combinations(range(n), m):
        yield Morphism(images, n)


def all_morphisms(bound: int) -> Iterator[Morphism]:
    """Every strictly increasing m -> n with m <= n <= bound, ordered by (n, m, images)."""
    for n in range(bound + 1):
        for m in range(n + 1):
            yield from morphisms(m, n)


def inclusion_pattern(small: Sequence, large: Sequence) -> Morphism:
    """``|iota_c^d|``: positions of the sorted ``small`` inside the sorted ``large``."""
    index = {x: i for i, x in enumerate(large)}
    try:
        return Morphism(tuple(index[x] for x in small), len(large))
    except KeyError as exc:
        raise ArityError(f"{exc.args[0]} is not in the larger set") from exc
