"""Seeded generic-position configurations of vectors and exact subspace
arithmetic over Q.

The oracles here instantiate the linear-algebra shadow of the pointing-bundle
arguments: pointing directions ``v_1..v_n`` in a vector space ``V``, the
hyperplanes ``U_i`` spanned by all but one of them, and subspaces ``W``
attached to candidate subbundles.

Randomness: numpy's PCG64 seeded directly with the 64-bit seed; child streams
come from ``SeedSequence.spawn`` so every check is replayable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .linalg import bareiss_det, bareiss_rank, clear_denominators, inverse_mod_p, nullspace, rref

PRNG_NAME = "numpy.PCG64"
COORD_BOUND = 10_000


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Generator for ``seed``; extra integers select an independent child stream."""
    ss = np.random.SeedSequence(int(seed) & ((1 << 64) - 1), spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def annihilator(self) -> list[list[Fraction]]:
        """Rows spanning ``{f : f(v) = 0 for v in self}``."""
        if not self.basis:
            return [[Fraction(int(i == j)) for j in range(self.ambient_dim)] for i in range(self.ambient_dim)]
        return nullspace([list(b) for b in self.basis], self.ambient_dim)

    def contains(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        if other.dim == 0:
            return True
        stacked = [list(b) for b in self.basis] + [list(b) for b in other.basis]
        return bareiss_rank(stacked) == self.dim

    def __contains__(self, vec) -> bool:
        return self.contains(span([vec], self.ambient_dim))


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def span(vectors: Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
    vecs = [list(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise ValueError("ambient_dim required for an empty span")
        ambient_dim = len(vecs[0])
    if any(len(v) != ambient_dim for v in vecs):
        raise ValueError("vectors must share the ambient dimension")
    red, _ = rref(vecs) if vecs else ([], [])
    return Subspace(ambient_dim, tuple(tuple(r) for r in red))


def full_space(n: int) -> Subspace:
    return span([[int(i == j) for j in range(n)] for i in range(n)], n)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, as the kernel of the stacked annihilators."""
    _same_ambient(a, b)
    constraints = a.annihilator() + b.annihilator()
    if not constraints:
        return full_space(a.ambient_dim)
    return span(nullspace(constraints, a.ambient_dim), a.ambient_dim)


def meet_all(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("need at least one subspace")
    n = spaces[0].ambient_dim
    constraints = []
    for s in spaces:
        if s.ambient_dim != n:
            raise ValueError("ambient dimension mismatch")
        constraints.extend(s.annihilator())
    if not constraints:
        return full_space(n)
    return span(nullspace(constraints, n), n)


def codim_in(f1: Subspace, f2: Subspace) -> int:
    """Codimension of ``f1 & f2`` inside ``f1`` (fibers of equal rank)."""
    if f1.dim != f2.dim:
        raise ValueError(f"dimension mismatch: {f1.dim} vs {f2.dim}")
    return f1.dim - meet(f1, f2).dim


def zero_diagonal_det(kappa: int) -> Fraction:
    """Determinant of the all-ones matrix minus the identity."""
    mat = [[int(i != j) for j in range(kappa)] for i in range(kappa)]
    return bareiss_det(mat)


def li_basis_check(kappa: int) -> bool:
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    det = zero_diagonal_det(kappa)
    # eigenvalues kappa-1 (once) and -1 (kappa-1 times)
    if det != (-1) ** (kappa - 1) * (kappa - 1):
        raise AssertionError(f"determinant {det} disagrees with the eigenvalue formula")
    return det != 0


@dataclass(frozen=True)
class GenericConfig:
    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]
    seed: int
    stream: tuple[int, ...] = ()
    resamples: int = 0

    def subspace(self, indices: Iterable[int]) -> Subspace:
        return span([self.vectors[i] for i in indices], self.ambient_dim)

    def hyperplane(self, i: int) -> Subspace:
        """``U_i``: span of every vector except ``v_i``."""
        return self.subspace(j for j in range(len(self.vectors)) if j != i)

    def to_json(self) -> dict:
        return {
            "prng": PRNG_NAME,
            "seed": self.seed,
            "stream": list(self.stream),
            "ambient_dim": self.ambient_dim,
            "count": len(self.vectors),
            "resamples": self.resamples,
        }


def is_generic(vectors: Sequence[Sequence[int]], ambient_dim: int) -> bool:
    """Every subset of at most ``ambient_dim`` vectors is independent."""
    k = min(len(vectors), ambient_dim)
    if len(vectors) <= ambient_dim:
        return bareiss_rank(vectors) == len(vectors) if vectors else True
    return all(bareiss_rank([vectors[i] for i in sub]) == k for sub in itertools.combinations(range(len(vectors)), k))


def generic_config(ambient_dim: int, count: int, seed: int, stream: tuple[int, ...] = ()) -> GenericConfig:
    """Draw ``count`` integer vectors with coordinates in ``[-10^4, 10^4]``,
    redrawing until they are in general position."""
    if ambient_dim < 0 or count < 0:
        raise ValueError("dimensions must be nonnegative")
    rng = rng_for(seed, *stream)
    for attempt in range(1000):
        arr = rng.integers(-COORD_BOUND, COORD_BOUND, size=(count, ambient_dim), endpoint=True)
        vecs = tuple(tuple(int(x) for x in row) for row in arr)
        if is_generic(vecs, ambient_dim):
            return GenericConfig(ambient_dim, vecs, int(seed), tuple(stream), attempt)
    raise RuntimeError("could not draw a generic configuration")  # pragma: no cover


def random_subspace(dim: int, ambient_dim: int, rng: np.random.Generator) -> Subspace:
    arr = rng.integers(-COORD_BOUND, COORD_BOUND, size=(dim, ambient_dim), endpoint=True)
    return span(arr.tolist(), ambient_dim) if dim else Subspace(ambient_dim, ())


# ---------------------------------------------------------------------------
# oracles
#
# For n generic vectors forming a basis of Q^n, the functional cutting out
# U_i is the i-th dual basis vector, i.e. column i of M^-1 (rows of M are the
# v_j). Everything below is asserted as a full-rank or nonvanishing statement,
# so a computation modulo a prime certifies it over Q; only zero residues are
# re-examined exactly.

P = _kernels.MODULUS


def _dot_mod(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v)) % P


def dual_functionals_mod_p(cfg: GenericConfig) -> list[list[int]] | None:
    """Row ``i`` vanishes on ``U_i`` (mod p); ``None`` if ``M`` is singular mod p."""
    if len(cfg.vectors) != cfg.ambient_dim:
        raise ValueError("dual basis needs exactly ambient_dim vectors")
    inv = inverse_mod_p(cfg.vectors, P)
    if inv is None:
        return None
    return [list(col) for col in zip(*inv)]


def _hyperplane_functionals_exact(cfg: GenericConfig) -> list[list[Fraction]]:
    out = []
    for i in range(len(cfg.vectors)):
        ann = cfg.hyperplane(i).annihilator()
        if len(ann) != 1:
            raise AssertionError(f"U_{i} is not a hyperplane")
        out.append(ann[0])
    return out


def _masks(n: int, max_subsets: int | None, rng: np.random.Generator) -> np.ndarray:
    if max_subsets is None or (1 << n) - 1 <= max_subsets:
        return np.arange(1, 1 << n, dtype=np.uint64)
    picks = {1 << i for i in range(n)} | {(1 << n) - 1}
    while len(picks) < max_subsets:
        k = int(rng.integers(2, n)) if n > 2 else 1
        idx = rng.choice(n, size=k, replace=False)
        picks.add(int(sum(1 << int(i) for i in idx)))
    return np.array(sorted(picks), dtype=np.uint64)


@dataclass
class Lemma5Result:
    d: int
    seed: int
    ambient_dim: int
    spans_full: bool
    hyperplanes_ok: bool
    meets_checked: int
    meet_failures: list[tuple[int, ...]] = field(default_factory=list)
    exact_fallbacks: int = 0

    @property
    def ok(self) -> bool:
        return self.spans_full and self.hyperplanes_ok and not self.meet_failures

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "seed": self.seed,
            "ambient_dim": self.ambient_dim,
            "spans_full": self.spans_full,
            "hyperplanes_ok": self.hyperplanes_ok,
            "meets_checked": self.meets_checked,
            "meet_failures": [list(f) for f in self.meet_failures],
            "exact_fallbacks": self.exact_fallbacks,
            "ok": self.ok,
        }


def lemma5_oracle(d: int, seed: int, max_subsets: int | None = None, backend: str | None = None) -> Lemma5Result:
    """``d-1`` generic pointing directions in a ``(d-1)``-space span it, each
    ``U_i`` has dimension ``d-2``, and ``k`` distinct ``U_i`` meet in
    dimension ``d-1-k``.

    The meet over ``I`` is the kernel of the stacked functionals, so its
    dimension is ``n - rank``. Ranks are computed modulo a prime; a subset
    that is not full rank mod p is recomputed exactly. ``max_subsets``
    samples subsets instead of visiting all ``2^(d-1) - 1``.
    """
    if d < 3:
        raise ValueError("d must be >= 3")
    n = d - 1
    cfg = generic_config(n, n, seed, stream=(d,))
    funcs = dual_functionals_mod_p(cfg)
    fallbacks = 0
    if funcs is None:
        # singular mod p although generic over Q: exact functionals instead
        fallbacks += 1
        exact = _hyperplane_functionals_exact(cfg)
        funcs_exact = clear_denominators(exact)
        funcs = [[x % P for x in row] for row in funcs_exact]
    else:
        funcs_exact = None
    # M invertible mod p: the v_i span and any n-1 of them are independent
    spans_full = True
    hyper_ok = True
    masks = _masks(n, max_subsets, rng_for(seed, d, 1))
    ranks = _kernels.subset_ranks_mod_p(np.array(funcs, dtype=np.int64), masks, backend)
    failures = []
    for mask, rk in zip(masks.tolist(), ranks.tolist()):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        if rk != len(idx):
            fallbacks += 1
            if funcs_exact is None:
                funcs_exact = clear_denominators(_hyperplane_functionals_exact(cfg))
            rk = bareiss_rank([funcs_exact[i] for i in idx])
        if n - rk != n - len(idx):
            failures.append(idx)
    return Lemma5Result(d, seed, n, spans_full, hyper_ok, len(masks), failures, fallbacks)


def lemma5_oracle_exact(d: int, seed: int) -> Lemma5Result:
    """The same checks by explicit subspace meets, depth-first over subsets.
    Slow; cross-checks :func:`lemma5_oracle` for small ``d``."""
    n = d - 1
    cfg = generic_config(n, n, seed, stream=(d,))
    hyper = [cfg.hyperplane(i) for i in range(n)]
    failures: list[tuple[int, ...]] = []
    checked = 0

    def walk(start: int, acc: Subspace, idx: tuple[int, ...]):
        nonlocal checked
        for i in range(start, n):
            m = meet(acc, hyper[i])
            checked += 1
            if m.dim != n - len(idx) - 1:
                failures.append(idx + (i,))
            walk(i + 1, m, idx + (i,))

    walk(0, full_space(n), ())
    return Lemma5Result(d, seed, n, span(cfg.vectors, n).dim == n, all(h.dim == n - 1 for h in hyper), checked, failures)


@dataclass
class ContainmentResult:
    g: int
    seed: int
    ambient_dim: int
    a2: int
    generic_count: int
    bound: int
    adversarial_count: int
    adversarial_bound: int

    @property
    def ok(self) -> bool:
        return self.generic_count <= self.bound and self.adversarial_count <= self.adversarial_bound

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"ok": self.ok}


def containment_config(g: int, seed: int) -> GenericConfig:
    """Pointing directions ``v_(y_i)`` in ``V_(C_2)``, whose dimension is
    ``deg C_2 - 1 = floor(g/2)``; one vector per point of ``C_1 & C_2``."""
    kappa2 = g // 2
    return generic_config(kappa2, kappa2, seed, stream=(g, 43))


@lru_cache(maxsize=64)
def _containment_setup(g: int, seed: int) -> tuple[GenericConfig, list[list[int]]]:
    cfg = containment_config(g, seed)
    funcs = dual_functionals_mod_p(cfg)
    if funcs is None:
        funcs = [[x % P for x in row] for row in clear_denominators(_hyperplane_functionals_exact(cfg))]
    return cfg, funcs


def _contained_count(cfg: GenericConfig, funcs: list[list[int]], w_rows: list[list[int]]) -> int:
    n = cfg.ambient_dim
    count = 0
    for i, f in enumerate(funcs):
        inside = True
        for w in w_rows:
            if _dot_mod(f, w):
                inside = False  # nonzero mod p, so nonzero over Q
                break
            if any(tuple(w) == cfg.vectors[j] for j in range(n) if j != i):
                continue  # a spanning vector of U_i
            others = [cfg.vectors[j] for j in range(n) if j != i]
            if bareiss_rank(others + [list(w)]) != n - 1:
                inside = False
                break
        count += inside
    return count


def containment_count(g: int, a2: int, seed: int) -> ContainmentResult:
    """How many ``U_i`` contain an ``a2``-dimensional ``W`` inside ``V_(C_2)``.

    ``generic_count`` uses a seeded random ``W`` and is compared with
    ``floor((g-2)/2) - a2``. ``adversarial_count`` uses ``W = <v_1..v_a2>``,
    the placement contained in the most ``U_i``; it equals ``floor(g/2) - a2``.
    """
    if not 1 <= a2 <= (g - 2) // 2:
        raise ValueError("a2 must lie in [1, floor((g-2)/2)]")
    cfg, funcs = _containment_setup(g, seed)
    n = cfg.ambient_dim
    rng = rng_for(seed, g, 43, a2)
    w_rows = rng.integers(-COORD_BOUND, COORD_BOUND, size=(a2, n), endpoint=True).tolist()
    if bareiss_rank(w_rows) != a2:  # pragma: no cover - probability ~ 0
        raise RuntimeError("degenerate random subspace")
    # W = <v_1..v_a2> lies in U_i exactly for i >= a2 (the v's are a basis)
    return ContainmentResult(
        g=g,
        seed=seed,
        ambient_dim=n,
        a2=a2,
        generic_count=_contained_count(cfg, funcs, w_rows),
        bound=(g - 2) // 2 - a2,
        adversarial_count=_contained_count(cfg, funcs, [list(v) for v in cfg.vectors[:a2]]),
        adversarial_bound=n - a2,
    )


@dataclass
class Rank2Result:
    g: int
    seed: int
    ambient_dim: int
    pairwise_meets_are_lines: bool
    triple_meet_zero: bool
    w_meets_zero: bool
    codim_at_p1: int

    @property
    def ok(self) -> bool:
        return self.pairwise_meets_are_lines and self.triple_meet_zero and self.w_meets_zero and self.codim_at_p1 == 2

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"ok": self.ok}


def rank2_check(g: int, seed: int) -> Rank2Result:
    """Node directions ``v_p1, v_p2, v_p3`` and a generic plane ``<w1, w2>``
    in ``V_(C_2)``: the planes ``<v_pi, v_pj>`` meet pairwise in lines and
    triply in zero, and ``<w1, w2>`` meets ``<v_p2, v_p3>`` trivially, so
    the fibres over ``p_1`` differ in codimension 2.

    Dimensions come from ``dim(A & B) = dim A + dim B - rank(A + B)``.
    """
    n = max(g // 2, 4)
    cfg = generic_config(n, 3, seed, stream=(g, 44))
    v = cfg.vectors
    rng = rng_for(seed, g, 44, 1)
    w = rng.integers(-COORD_BOUND, COORD_BOUND, size=(2, n), endpoint=True).tolist()
    rk = bareiss_rank
    pair = [(0, 1), (0, 2), (1, 2)]
    lines = all(2 + 2 - rk([v[i] for i in set(a) | set(b)]) == 1 for a, b in itertools.combinations(pair, 2))
    # the pairwise meets are <v_i>; the triple meet is <v_1> & <v_2, v_3>
    triple_zero = lines and rk([v[0], v[1], v[2]]) == 3
    w_dim = rk(w)
    meet_dim = w_dim + 2 - rk(w + [v[1], v[2]])
    return Rank2Result(g, seed, n, lines, triple_zero, w_dim == 2 and meet_dim == 0, 2 - meet_dim)
