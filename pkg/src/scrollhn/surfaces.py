"""Intersection lattices of the rational surfaces used by the trigonal and
genus-6 analyses, plus the divisor/curve pairing on the Segre threefold."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence


class LatticeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionLattice:
    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]

    def __post_init__(self):
        n = len(self.basis)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError("gram must be square over the basis")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram must be symmetric")
        if len(self.canonical) != n:
            raise ValueError("canonical class has wrong length")

    def cls(self, *coords: int) -> "DivisorClass":
        return DivisorClass(self, tuple(coords))

    def basis_class(self, label: str) -> "DivisorClass":
        i = self.basis.index(label)
        return self.cls(*(int(j == i) for j in range(len(self.basis))))

    @property
    def K(self) -> "DivisorClass":
        return DivisorClass(self, self.canonical)


@dataclass(frozen=True)
class DivisorClass:
    lattice: IntersectionLattice = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.lattice.basis):
            raise ValueError("coords length must equal basis length")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def _check(self, other: "DivisorClass"):
        if other.lattice != self.lattice:
            raise LatticeMismatch(f"{self.lattice.name} vs {other.lattice.name}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(k * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return intersect(self, other)
        return self.__rmul__(other)

    def to_json(self) -> dict:
        return {"lattice": self.lattice.name, "coords": list(self.coords)}

    def __str__(self) -> str:
        parts = []
        for c, label in zip(self.coords, self.lattice.basis):
            if c:
                parts.append(f"{c}{label}" if c != 1 else label)
        return " + ".join(parts).replace("+ -", "- ") or "0"


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    a._check(b)
    gram = a.lattice.gram
    return sum(x * gram[i][j] * y for i, x in enumerate(a.coords) for j, y in enumerate(b.coords))


def adjunction_genus(c: DivisorClass) -> int:
    """Arithmetic genus from ``2g - 2 = C.(C + K)``."""
    two_g_minus_2 = intersect(c, c + c.lattice.K)
    if two_g_minus_2 % 2:
        raise ValueError("non-integral genus")
    return two_g_minus_2 // 2 + 1


def embedding_degree(c: DivisorClass, h: DivisorClass) -> int:
    return intersect(c, h)


@lru_cache(maxsize=None)
def hirzebruch(n: int) -> IntersectionLattice:
    if n < 0:
        raise ValueError("Hirzebruch index must be >= 0")
    return IntersectionLattice(
        name=f"Hirzebruch({n})",
        basis=("E", "F"),
        gram=((-n, 1), (1, 0)),
        canonical=(-2, -(n + 2)),
    )


@lru_cache(maxsize=None)
def del_pezzo4() -> IntersectionLattice:
    """The plane blown up at four points (degree-5 del Pezzo surface)."""
    basis = ("H", "E1", "E2", "E3", "E4")
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(5)) for i in range(5))
    return IntersectionLattice("DelPezzo4", basis, gram, (-3, 1, 1, 1, 1))


def dp4_class(h: int, e: int | Sequence[int]) -> DivisorClass:
    """``h*H - sum(e_i*E_i)``; a scalar ``e`` is used for all four points."""
    es = [e] * 4 if isinstance(e, int) else list(e)
    return del_pezzo4().cls(h, *(-x for x in es))


@dataclass(frozen=True)
class SegrePairing:
    """Degree pairing on P^1 x P^2 between divisors (alpha, beta) and curve
    classes (alpha*beta, beta^2); alpha^2 = 0, beta^3 = 0, alpha*beta^2 = point."""

    name: str = "SegreP1xP2"
    divisor_basis: tuple[str, str] = ("alpha", "beta")
    curve_basis: tuple[str, str] = ("alpha*beta", "beta^2")
    # rows: alpha, beta; columns: alpha*beta, beta^2
    pairing: tuple[tuple[int, int], tuple[int, int]] = ((0, 1), (1, 0))
    canonical: tuple[int, int] = (-2, -3)
    hyperplane: tuple[int, int] = (1, 1)

    def degree(self, divisor: Sequence[int], curve: Sequence[int]) -> int:
        return sum(divisor[i] * self.pairing[i][j] * curve[j] for i in range(2) for j in range(2))

    def normal_bundle_c1(self, ambient_dim: int = 5) -> tuple[int, int]:
        """c1(N_{Q/P^n}) = (n+1)H + K_Q as a divisor class."""
        return tuple((ambient_dim + 1) * h + k for h, k in zip(self.hyperplane, self.canonical))


SEGRE = SegrePairing()

_REGISTRY = {"DelPezzo4": del_pezzo4}


def lattice_by_name(name: str) -> IntersectionLattice:
    if name.startswith("Hirzebruch(") and name.endswith(")"):
        return hirzebruch(int(name[len("Hirzebruch(") : -1]))
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown lattice {name!r}") from None


def divisor_from_json(obj: dict) -> DivisorClass:
    return DivisorClass(lattice_by_name(obj["lattice"]), tuple(obj["coords"]))
