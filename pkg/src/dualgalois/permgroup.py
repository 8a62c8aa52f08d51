"""Permutation groups: orders via a stabilizer chain, element statistics and
recognition of the small groups that show up as monodromy groups here.

Permutations act on {0, ..., N-1} internally and print 1-based in cycle
notation.  Products compose left to right: ``(p * q)(i) == q(p(i))``, so a
loop product reads in the order the loops are travelled.
"""
from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial, gcd

__all__ = [
    "Permutation",
    "PermGroup",
    "GroupTag",
    "NotTransitiveError",
    "ENUMERATION_CAP",
    "group_order",
    "element_order_profile",
    "classify",
    "is_regular",
]

ENUMERATION_CAP = 10_000


class NotTransitiveError(ValueError):
    pass


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``()``."""
        images = list(range(degree))
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) - 1 for tok in body.replace(",", " ").split()]
            if any(not 0 <= p < degree for p in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle ({body}) for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"unparseable cycle notation: {text!r}")
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(other.images[i] for i in self.images)

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def moved_point(self):
        return next((i for i, j in enumerate(self.images) if i != j), None)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __repr__(self):
        return f"Permutation({self})"


@dataclass(frozen=True)
class GroupTag:
    name: str
    order: int
    family: str
    parameter: int | None = None

    def __str__(self):
        return self.name

    def to_json(self):
        return {"name": self.name, "order": self.order, "family": self.family, "parameter": self.parameter}


def _orbit_transversal(point: int, gens, n: int):
    table = {point: Permutation.identity(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        u = table[x]
        for g in gens:
            y = g(x)
            if y not in table:
                table[y] = u * g
                queue.append(y)
    return table


class _StabilizerChain:
    """Deterministic Schreier-Sims."""

    def __init__(self, gens, n: int):
        self.n = n
        self.base: list[int] = []
        self.strong: list[Permutation] = []
        for g in gens:
            if g.is_identity():
                continue
            self.strong.append(g)
            if all(g(b) == b for b in self.base):
                self.base.append(g.moved_point())
        self.transversals = [None] * len(self.base)
        for i in range(len(self.base)):
            self._rebuild(i)
        self._complete()

    def level_gens(self, i: int):
        return [s for s in self.strong if all(s(b) == b for b in self.base[:i])]

    def _rebuild(self, i: int):
        self.transversals[i] = _orbit_transversal(self.base[i], self.level_gens(i), self.n)

    def sift(self, g: Permutation, start: int = 0):
        for i in range(start, len(self.base)):
            beta = g(self.base[i])
            table = self.transversals[i]
            if beta not in table:
                return g, i
            g = g * table[beta].inverse()
        return g, len(self.base)

    def _complete(self):
        i = len(self.base) - 1
        while i >= 0:
            restarted = False
            table = self.transversals[i]
            for beta, u in list(table.items()):
                for s in self.level_gens(i):
                    h = u * s * table[s(beta)].inverse()
                    residue, j = self.sift(h, i + 1)
                    if j < len(self.base) or not residue.is_identity():
                        if j == len(self.base):
                            self.base.append(residue.moved_point())
                            self.transversals.append(None)
                        self.strong.append(residue)
                        for level in range(i + 1, j + 1):
                            self._rebuild(level)
                        i = j
                        restarted = True
                        break
                if restarted:
                    break
            if not restarted:
                i -= 1

    @property
    def order(self) -> int:
        total = 1
        for t in self.transversals:
            total *= len(t)
        return total


class PermGroup:
    def __init__(self, generators, degree: int | None = None):
        generators = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not generators:
                raise ValueError("degree required for a group without generators")
            degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators act on different sets")
        self.degree = degree
        self.generators = tuple(generators)

    @classmethod
    def from_cycles(cls, texts, degree: int) -> "PermGroup":
        return cls([Permutation.from_cycles(t, degree) for t in texts], degree)

    @cached_property
    def chain(self) -> _StabilizerChain:
        return _StabilizerChain(self.generators, self.degree)

    @property
    def order(self) -> int:
        return self.chain.order

    def __contains__(self, g: Permutation) -> bool:
        residue, j = self.chain.sift(g)
        return j == len(self.chain.base) and residue.is_identity()

    def orbits(self):
        seen, out = set(), []
        for p in range(self.degree):
            if p not in seen:
                orb = set(_orbit_transversal(p, self.generators, self.degree))
                seen |= orb
                out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_regular(self) -> bool:
        if not self.is_transitive():
            raise NotTransitiveError("regularity is only defined for transitive groups")
        return self.order == self.degree

    def closure_elements(self, cap: int = ENUMERATION_CAP):
        """All elements by breadth-first closure; None when there are more than ``cap``."""
        e = Permutation.identity(self.degree)
        seen = {e}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = x * g
                if y not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(y)
                    queue.append(y)
        return sorted(seen, key=lambda p: p.images)

    @cached_property
    def elements(self):
        if self.order > ENUMERATION_CAP:
            return None
        return self.closure_elements()

    def element_order_profile(self) -> dict | None:
        if self.elements is None:
            return None
        return dict(sorted(Counter(g.order() for g in self.elements).items()))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def center(self):
        if self.elements is None:
            return None
        return [z for z in self.elements if all(z * g == g * z for g in self.generators)]

    def has_elementary_abelian_square(self, p: int) -> bool:
        """Elements of order dividing p form a group isomorphic to (Z/p)^2."""
        if self.elements is None:
            return False
        sub = [g for g in self.elements if p % g.order() == 0]
        if len(sub) != p * p:
            return False
        members = set(sub)
        return all(a * b in members and a * b == b * a for a in sub for b in sub)

    def to_json(self):
        tag = classify(self)
        return {
            "degree": self.degree,
            "generators": [str(g) for g in self.generators],
            "order": self.order,
            "transitive": self.is_transitive(),
            "classification": tag.to_json(),
            "element_order_profile": (
                {str(k): v for k, v in self.element_order_profile().items()}
                if self.elements is not None else None
            ),
        }


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def _dihedral_product_profile(p: int) -> dict:
    return {1: 1, 2: p, p: p * p - 1, 2 * p: p * (p - 1)}


def classify(group: PermGroup) -> GroupTag:
    n = group.order
    profile = group.element_order_profile()
    if group.is_abelian():
        if profile is not None and n in profile or n == 1:
            return GroupTag(f"cyclic({n})", n, "cyclic", n)
        return GroupTag(f"order-only({n})", n, "order-only")
    if n == factorial(group.degree) and group.degree >= 3:
        return GroupTag(f"S({group.degree})", n, "symmetric", group.degree)
    if profile is None:
        return GroupTag(f"order-only({n})", n, "order-only")
    if n == 8:
        involutions = profile.get(2, 0)
        if involutions == 5:
            return GroupTag("D_8", 8, "dihedral", 4)
        if involutions == 1:
            return GroupTag("Q_8", 8, "quaternion")
    if n % 2 == 0 and _is_odd_prime(n // 2):
        return GroupTag(f"D_{n}", n, "dihedral", n // 2)
    if n % 2 == 0:
        p = round((n // 2) ** 0.5)
        if p * p * 2 == n and _is_odd_prime(p):
            center = group.center()
            if len(center) == p and profile == _dihedral_product_profile(p):
                return GroupTag(f"Z/{p} x D_{2 * p}", n, "cyclic-times-dihedral", p)
    return GroupTag(f"order-only({n})", n, "order-only")


def group_order(group: PermGroup) -> int:
    return group.order


def element_order_profile(group: PermGroup):
    return group.element_order_profile()


def is_regular(group: PermGroup) -> bool:
    return group.is_regular()
