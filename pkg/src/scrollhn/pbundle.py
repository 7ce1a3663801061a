"""Split bundles on P^1 and splitting types of kernels/cokernels of graded maps.

A map ``O(s_1) + ... + O(s_n) -> O(u_1) + ... + O(u_m)`` is a matrix of binary
forms, entry ``(i, j)`` of degree ``u_i - s_j``. Kernel splitting types are
recovered from the Hilbert function ``t -> h^0(K(t))``, computed exactly as
the kernel dimension of the induced map on degree-``t`` graded pieces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import G, poly_identity_check
from .linalg import bareiss_rank, clear_denominators, sparse_rank


class SplittingError(ValueError):
    pass


@dataclass(frozen=True)
class SplitBundle:
    """``O(d_1) + ... + O(d_r)`` on P^1; twists kept in descending order."""

    twists: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted((int(t) for t in self.twists), reverse=True)))

    @classmethod
    def of(cls, *parts: tuple[int, int]) -> "SplitBundle":
        """``SplitBundle.of((5, 2), (1, 1))`` is ``O(5)^2 + O(1)``."""
        tw = []
        for twist, mult in parts:
            tw.extend([twist] * mult)
        return cls(tuple(tw))

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def is_semistable(self) -> bool:
        return len(set(self.twists)) <= 1

    def __add__(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(self.twists + other.twists)

    def twist(self, t: int) -> "SplitBundle":
        return SplitBundle(tuple(d + t for d in self.twists))

    def dual(self) -> "SplitBundle":
        return SplitBundle(tuple(-d for d in self.twists))

    def h0(self, t: int = 0) -> int:
        return sum(max(0, d + t + 1) for d in self.twists)

    def to_json(self) -> dict:
        return {"twists": list(self.twists)}

    @classmethod
    def from_json(cls, obj: dict) -> "SplitBundle":
        return cls(tuple(obj["twists"]))

    def __str__(self) -> str:
        if not self.twists:
            return "0"
        parts = []
        for twist, mult in sorted(Counter(self.twists).items(), reverse=True):
            parts.append(f"O({twist})" + (f"^{mult}" if mult > 1 else ""))
        return " + ".join(parts)


def slope(b: SplitBundle) -> Fraction:
    if b.rank == 0:
        raise ValueError("slope of a rank-0 bundle is undefined")
    return Fraction(b.degree, b.rank)


def hn_filtration(b: SplitBundle) -> list[tuple[Fraction, int]]:
    """Graded pieces of the HN filtration: ``(slope, multiplicity)``, slopes
    strictly decreasing."""
    if b.rank == 0:
        raise ValueError("empty bundle has no HN filtration")
    counts = Counter(b.twists)
    return [(Fraction(t), counts[t]) for t in sorted(counts, reverse=True)]


def rnc_normal_bundle(d: int) -> SplitBundle:
    """Normal bundle of the degree-``d`` rational normal curve in P^d."""
    if d < 2:
        raise ValueError("rational normal curve needs d >= 2")
    return SplitBundle((d + 2,) * (d - 1))


@dataclass(frozen=True)
class BinaryForm:
    """``sum_i coeffs[i] * x^(degree-i) * y^i``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != self.degree + 1:
            raise ValueError("need degree+1 coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BinaryForm":
        """``c * x^a * y^b``"""
        co = [0] * (a + b + 1)
        co[b] = c
        return cls(a + b, tuple(co))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __call__(self, x, y) -> Fraction:
        return sum((c * x ** (self.degree - i) * y**i for i, c in enumerate(self.coeffs)), Fraction(0))


X = BinaryForm.monomial(1, 0)
Y = BinaryForm.monomial(0, 1)


class GradedMap:
    """Matrix of binary forms ``source -> target`` between split bundles.

    ``source`` and ``target`` are the twist sequences in matrix order (column
    ``j`` is the summand ``O(source[j])``, row ``i`` is ``O(target[i])``).
    Entries with negative required degree must be zero and may be ``None``.
    """

    def __init__(self, source: Sequence[int], target: Sequence[int], entries):
        self.source = tuple(int(s) for s in source)
        self.target = tuple(int(u) for u in target)
        rows = []
        for i, u in enumerate(self.target):
            row = []
            for j, s in enumerate(self.source):
                e = entries[i][j] if entries else None
                need = u - s
                if isinstance(e, (int, Fraction)):
                    if e != 0 and need != 0:
                        raise ValueError(f"entry ({i},{j}) must have degree {need}")
                    e = None if e == 0 else BinaryForm(0, (e,))
                if e is None or (isinstance(e, BinaryForm) and e.is_zero()):
                    row.append(None)
                    continue
                if e.degree != need:
                    raise ValueError(f"entry ({i},{j}) has degree {e.degree}, expected {need}")
                row.append(e)
            rows.append(tuple(row))
        self.entries: tuple[tuple[BinaryForm | None, ...], ...] = tuple(rows)

    @property
    def source_bundle(self) -> SplitBundle:
        return SplitBundle(self.source)

    @property
    def target_bundle(self) -> SplitBundle:
        return SplitBundle(self.target)

    def dual(self) -> "GradedMap":
        """Transpose map between the dual bundles."""
        ent = [[self.entries[i][j] for i in range(len(self.target))] for j in range(len(self.source))]
        return GradedMap([-u for u in self.target], [-s for s in self.source], ent)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``"""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        ent = []
        for i, u in enumerate(self.target):
            row = []
            for j, s in enumerate(other.source):
                acc = None
                for k in range(len(self.source)):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a is None or b is None:
                        continue
                    p = a * b
                    acc = p if acc is None else acc + p
                row.append(acc)
            ent.append(row)
        return GradedMap(other.source, self.target, ent)

    def is_zero(self) -> bool:
        return all(e is None or e.is_zero() for row in self.entries for e in row)

    def graded_piece(self, t: int) -> list[list[Fraction]]:
        """Matrix of ``H^0(source(t)) -> H^0(target(t))`` in monomial bases
        ordered by ascending power of ``y``."""
        col_off, ncols = [], 0
        for s in self.source:
            col_off.append(ncols)
            ncols += max(0, s + t + 1)
        row_off, nrows = [], 0
        for u in self.target:
            row_off.append(nrows)
            nrows += max(0, u + t + 1)
        mat = [[Fraction(0)] * ncols for _ in range(nrows)]
        for i, u in enumerate(self.target):
            if u + t < 0:
                continue
            for j, s in enumerate(self.source):
                f = self.entries[i][j]
                if f is None or s + t < 0:
                    continue
                for b in range(s + t + 1):
                    col = col_off[j] + b
                    for k, c in enumerate(f.coeffs):
                        if c:
                            mat[row_off[i] + k + b][col] += c
        return mat

    def graded_rank(self, t: int) -> int:
        return sparse_rank(self.sparse_graded_piece(t))

    def sparse_graded_piece(self, t: int) -> list[dict[int, int]]:
        """Rows of :meth:`graded_piece` as ``{col: value}``, scaled to integers."""
        col_off, ncols = [], 0
        for s in self.source:
            col_off.append(ncols)
            ncols += max(0, s + t + 1)
        rows: list[dict[int, Fraction]] = []
        for i, u in enumerate(self.target):
            if u + t < 0:
                continue
            block = [dict() for _ in range(u + t + 1)]
            for j, s in enumerate(self.source):
                f = self.entries[i][j]
                if f is None or s + t < 0:
                    continue
                for b in range(s + t + 1):
                    col = col_off[j] + b
                    for k, c in enumerate(f.coeffs):
                        if c:
                            block[k + b][col] = block[k + b].get(col, 0) + c
            rows.extend(block)
        out = []
        for row in rows:
            cols = list(row)
            if not cols:
                continue
            ints = clear_denominators([[row[c] for c in cols]])[0]
            out.append({c: v for c, v in zip(cols, ints) if v})
        return out

    def kernel_h0(self, t: int) -> int:
        return self.source_bundle.h0(t) - self.graded_rank(t)

    def generic_rank(self) -> int:
        """Rank over the function field, certified by evaluation.

        Every minor is a binary form of degree at most ``D`` (sum of the
        largest entry degree per column), so testing ``D + 1`` distinct points
        of P^1 detects any nonvanishing minor.
        """
        if not self.source or not self.target:
            return 0
        bound = sum(max((e.degree for e in col if e is not None), default=0) for col in zip(*self.entries))
        best = 0
        full = min(len(self.source), len(self.target))
        for pt in range(bound + 1):
            num = [[(e(1, pt) if e is not None else 0) for e in row] for row in self.entries]
            best = max(best, bareiss_rank(num))
            if best == full:
                break
        return best

    def to_json(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "entries": [[list(map(_q, e.coeffs)) if e is not None else [] for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedMap":
        from .exact import rational_from_json

        src, tgt = obj["source"], obj["target"]
        ent = []
        for i, row in enumerate(obj["entries"]):
            r = []
            for j, co in enumerate(row):
                if not co:
                    r.append(None)
                else:
                    r.append(BinaryForm(tgt[i] - src[j], tuple(rational_from_json(str(c)) for c in co)))
            ent.append(r)
        return cls(src, tgt, ent)


def _q(c: Fraction) -> str:
    from .exact import rational_to_json

    return rational_to_json(c)


def kernel_splitting(m: GradedMap) -> SplitBundle:
    """Splitting type of ``ker(m)`` for ``m`` surjective as a sheaf map."""
    s, u = m.source, m.target
    rho = len(s) - len(u)
    if not u:
        return SplitBundle(s)
    if rho < 0:
        raise SplittingError("cokernel has torsion or positive rank; kernel splitting refused")
    deg_k = sum(s) - sum(u)
    # twists of a subbundle are bounded by the source's; the lower bound then
    # follows from the kernel degree
    e_hi = max(s)
    e_lo = deg_k - (rho - 1) * e_hi if rho else e_hi
    t_top = max(-min(u), -e_lo)
    # target(t_top) is globally generated and H^1(K(t_top)) = 0, so sheaf
    # surjectivity is equivalent to surjectivity on this graded piece
    if m.graded_rank(t_top) != m.target_bundle.h0(t_top):
        raise SplittingError("cokernel has torsion or positive rank; kernel splitting refused")
    if rho == 0:
        return SplitBundle(())
    t_bot = -e_hi - 1
    h = {t: m.kernel_h0(t) for t in range(t_bot, t_top + 1)}
    twists = hilbert_to_twists(h)
    if len(twists) != rho or sum(twists) != deg_k:
        raise SplittingError(
            f"degree bookkeeping failed: kernel {twists} vs expected rank {rho}, degree {deg_k}"
        )
    return SplitBundle(tuple(twists))


def hilbert_to_twists(h: dict[int, int]) -> list[int]:
    """Invert ``h(t) = sum_j max(0, e_j + t + 1)`` on a window ``[a, b]``
    where ``h(a) = 0`` and ``e_j + b >= -1`` for all ``j``.

    ``h(t) - h(t-1)`` counts the ``e_j >= -t``; its first difference counts
    ``e_j == -t``.
    """
    ts = sorted(h)
    if h[ts[0]] != 0:
        raise SplittingError("window does not start at h0 = 0")
    first = {ts[0]: 0}
    for a, b in zip(ts, ts[1:]):
        first[b] = h[b] - h[a]
    out = []
    prev = 0
    for t in ts:
        n = first[t] - prev
        if n < 0:
            raise SplittingError("Hilbert function is not that of a split bundle")
        out.extend([-t] * n)
        prev = first[t]
    # all twists must be visible by the top of the window
    top = ts[-1]
    if sum(max(0, e + top + 1) for e in out) != h[top]:
        raise SplittingError("window too short to resolve the splitting type")
    return out


def cokernel_splitting(m: GradedMap) -> SplitBundle:
    """Splitting type of ``coker(m)`` for ``m`` injective with locally free
    cokernel, via ``coker(m)^dual = ker(m^dual)``."""
    if m.generic_rank() != len(m.source):
        raise SplittingError("map is not injective; cokernel splitting refused")
    try:
        k = kernel_splitting(m.dual())
    except SplittingError as exc:
        raise SplittingError("cokernel has torsion; cokernel splitting refused") from exc
    return k.dual()


def lemma6_k(g: int, d: int, parity_model: str) -> int:
    """Degree of the rational normal curve ``E + dF`` on the scroll."""
    _check_model(g, d, parity_model)
    return (g + 2 * d - 3) // 2 if parity_model == "odd" else (g + 2 * d - 2) // 2


def _check_model(g: int, d: int, parity_model: str) -> None:
    if parity_model == "odd":
        if g < 5 or g % 2 == 0 or not 1 <= d <= (g - 1) // 2:
            raise ValueError(f"odd model needs odd g >= 5 and 1 <= d <= (g-1)/2, got g={g}, d={d}")
    elif parity_model == "even":
        if g < 6 or g % 2 or not 1 <= d <= (g - 2) // 2:
            raise ValueError(f"even model needs even g >= 6 and 1 <= d <= (g-2)/2, got g={g}, d={d}")
    else:
        raise ValueError(f"parity_model must be 'odd' or 'even', not {parity_model!r}")


def _self_intersection(g: int, d: int, parity_model: str) -> int:
    # (E + dF)^2 on F_1 resp. F_0
    return 2 * d - 1 if parity_model == "odd" else 2 * d


def monomial_map(g: int, d: int, parity_model: str = "odd") -> GradedMap:
    """``N_{C/S} -> O(k)^(g-k-1)`` given by all monomials of degree ``g-k-2``."""
    k = lemma6_k(g, d, parity_model)
    m = g - k - 1
    c2 = _self_intersection(g, d, parity_model)
    ent = [[BinaryForm.monomial(m - 1 - i, i)] for i in range(m)]
    return GradedMap([c2], [k] * m, ent)


def phi_map(g: int, d: int, parity_model: str = "odd") -> GradedMap:
    """The dual map ``O(-k)^(g-k-1) -> O(-C^2)``."""
    return monomial_map(g, d, parity_model).dual()


def bidiagonal_map(g: int, d: int, parity_model: str = "odd") -> GradedMap:
    """``O(-k-1)^(g-k-2) -> O(-k)^(g-k-1)``: column ``j`` is ``y e_j - x e_(j+1)``."""
    k = lemma6_k(g, d, parity_model)
    m = g - k - 1
    minus_x = BinaryForm.monomial(1, 0, -1)
    ent = [[None] * (m - 1) for _ in range(m)]
    for j in range(m - 1):
        ent[j][j] = Y
        ent[j + 1][j] = minus_x
    return GradedMap([-k - 1] * (m - 1), [-k] * m, ent)


def bidiagonal_oracle(g: int, d: int, parity_model: str = "odd") -> SplitBundle:
    """Kernel of ``phi_map`` certified through the bidiagonal matrix ``B``.

    Checks ``phi o B = 0``, that ``B`` is injective, and that ``B`` fills the
    sections of ``ker(phi)`` in a degree where the kernel is globally
    generated; returns the source of ``B``. Does not invert Hilbert functions.
    """
    phi = phi_map(g, d, parity_model)
    b = bidiagonal_map(g, d, parity_model)
    if not phi.compose(b).is_zero():
        raise SplittingError("phi o B is not zero")
    k = lemma6_k(g, d, parity_model)
    m = g - k - 1
    if b.generic_rank() != m - 1:
        raise SplittingError("B is not injective")
    # ker(phi) has twists >= C^2 - 2k, so it is globally generated from this
    # degree on; B filling its sections there forces im(B) = ker(phi)
    t_top = max(k + 1, 2 * k - _self_intersection(g, d, parity_model))
    if b.graded_rank(t_top) != phi.kernel_h0(t_top):
        raise SplittingError(f"image of B misses part of ker(phi) in degree {t_top}")
    return b.source_bundle


def lemma6_quotient(g: int, d: int, parity_model: str = "odd") -> SplitBundle:
    return cokernel_splitting(monomial_map(g, d, parity_model))


def lemma6_restriction(g: int, d: int, parity_model: str = "odd") -> SplitBundle:
    """``N_{S/P^(g-1)}`` restricted to a curve of class ``E + dF``.

    The quotient summand is computed from the monomial map and checked
    against the closed form ``O(k+1)^(g-k-2)`` and the degree of the
    restriction from the normal-bundle sequences.
    """
    k = lemma6_k(g, d, parity_model)
    q = lemma6_quotient(g, d, parity_model)
    expected_q = SplitBundle((k + 1,) * (g - k - 2))
    if q != expected_q:
        raise SplittingError(f"quotient {q} differs from {expected_q}")
    out = rnc_normal_bundle(k) + q
    # deg N_{C/P^(g-1)} - deg N_{C/S} for a rational curve of degree k
    deg_expected = k * g - 2 - _self_intersection(g, d, parity_model)
    if out.rank != g - 3 or out.degree != deg_expected:
        raise SplittingError(f"bookkeeping mismatch for g={g}, d={d}: {out}")
    return out


def quotient_degree_identity(d: int) -> bool:
    """``k(g-k-1) - (2d-1) = (k+1)(g-k-2)`` with ``k = (g+2d-3)/2``, as a
    polynomial identity in ``g``."""
    k = (G + (2 * d - 3)) * Fraction(1, 2)
    lhs = k * (G - k - 1) - (2 * d - 1)
    rhs = (k + 1) * (G - k - 2)
    return poly_identity_check(lhs, rhs)


def valid_lemma6_pairs(g_values: Iterable[int], parity_model: str = "odd"):
    for g in g_values:
        top = (g - 1) // 2 if parity_model == "odd" else (g - 2) // 2
        for d in range(1, top + 1):
            yield g, d


__all__ = [
    "SplitBundle",
    "BinaryForm",
    "GradedMap",
    "SplittingError",
    "slope",
    "hn_filtration",
    "rnc_normal_bundle",
    "kernel_splitting",
    "cokernel_splitting",
    "lemma6_restriction",
    "monomial_map",
    "phi_map",
    "bidiagonal_map",
    "bidiagonal_oracle",
    "quotient_degree_identity",
    "lemma6_quotient",
    "lemma6_k",
    "valid_lemma6_pairs",
]
