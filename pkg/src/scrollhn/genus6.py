"""The general genus-6 curve: it is tetragonal, lies on a quintic del Pezzo
surface ``S`` inside the Segre threefold ``Q = P^1 x P^2`` in ``P^5``, and its
normal bundle has the two-step filtration ``0 < N_(C/S) < N_(C/P^5)``.

This module checks the slope table through lattice arithmetic and verifies
the quadric lemma for the Segre threefold by exact linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import rational_to_json
from .genpos import COORD_BOUND, rng_for
from .linalg import bareiss_rank, left_nullspace, rref
from .surfaces import SEGRE, adjunction_genus, del_pezzo4, dp4_class, embedding_degree, intersect
from .trigonal import BookkeepingError, FiltrationStep, HNReport, mu_curve_in_Pn

N_VARS = 6
# monomials z_i z_j with i <= j, in lexicographic order
QUADRIC_MONOMIALS = tuple(itertools.combinations_with_replacement(range(N_VARS), 2))
# z_(3i + j) = u_i * v_j with u = (s, t), v = (x, y, z)
_SEGRE_FACTORS = tuple((i, j) for i in range(2) for j in range(3))
# bidegree-(2,2) monomials: (exponent pair in s,t) x (exponent triple in x,y,z)
_BIDEG_MONOMIALS = tuple(
    (u, v)
    for u in itertools.combinations_with_replacement(range(2), 2)
    for v in itertools.combinations_with_replacement(range(3), 2)
)

ASSUMPTIONS = (
    "hyperelliptic exclusion for the rank-2 quotient is a geometric input, not computed",
    "semistability of N_S/P5 on two elliptic normal quintics is a cited input; only slopes are checked",
)


@dataclass(frozen=True)
class QuadricForm:
    """Quadratic form on ``z_0..z_5`` as a symmetric 6x6 matrix."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = self.matrix
        if len(m) != N_VARS or any(len(row) != N_VARS for row in m):
            raise ValueError("quadric matrix must be 6x6")
        if any(m[i][j] != m[j][i] for i in range(N_VARS) for j in range(N_VARS)):
            raise ValueError("quadric matrix must be symmetric")

    @classmethod
    def from_coefficients(cls, coeffs) -> "QuadricForm":
        """From coefficients of the monomials in ``QUADRIC_MONOMIALS`` order."""
        coeffs = list(coeffs)
        if len(coeffs) != len(QUADRIC_MONOMIALS):
            raise ValueError("need 21 coefficients")
        m = [[Fraction(0)] * N_VARS for _ in range(N_VARS)]
        for (i, j), c in zip(QUADRIC_MONOMIALS, coeffs):
            c = Fraction(c)
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return cls(tuple(tuple(row) for row in m))

    @classmethod
    def from_terms(cls, *terms: tuple[int, int, int]) -> "QuadricForm":
        """From ``(c, i, j)`` triples meaning ``c * z_i * z_j``."""
        coeffs = [0] * len(QUADRIC_MONOMIALS)
        for c, i, j in terms:
            coeffs[QUADRIC_MONOMIALS.index((min(i, j), max(i, j)))] += c
        return cls.from_coefficients(coeffs)

    def coefficients(self) -> list[Fraction]:
        return [self.matrix[i][j] * (1 if i == j else 2) for i, j in QUADRIC_MONOMIALS]

    def __call__(self, z) -> Fraction:
        return sum(self.matrix[i][j] * z[i] * z[j] for i in range(N_VARS) for j in range(N_VARS))

    @property
    def rank(self) -> int:
        return bareiss_rank(self.matrix)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)


def segre_point(s, t, x, y, z) -> tuple:
    """``([s:t], [x:y:z]) -> [sx:sy:sz:tx:ty:tz]``."""
    return (s * x, s * y, s * z, t * x, t * y, t * z)


SEGRE_GENERATORS = (
    QuadricForm.from_terms((1, 0, 4), (-1, 1, 3)),
    QuadricForm.from_terms((1, 0, 5), (-1, 2, 3)),
    QuadricForm.from_terms((1, 1, 5), (-1, 2, 4)),
)


def substitution_matrix() -> list[list[int]]:
    """21 x 18 matrix: row ``z_i z_j`` lists the pullback's coefficients on the
    bidegree-(2,2) monomials in ``(s,t) x (x,y,z)``."""
    index = {m: k for k, m in enumerate(_BIDEG_MONOMIALS)}
    rows = []
    for i, j in QUADRIC_MONOMIALS:
        (ui, vi), (uj, vj) = _SEGRE_FACTORS[i], _SEGRE_FACTORS[j]
        key = (tuple(sorted((ui, uj))), tuple(sorted((vi, vj))))
        row = [0] * len(_BIDEG_MONOMIALS)
        row[index[key]] = 1
        rows.append(row)
    return rows


def quadrics_through_segre() -> list[QuadricForm]:
    """Basis of the quadrics vanishing on the Segre threefold, computed as the
    left kernel of the substitution matrix and checked against the three
    2x2 minors."""
    kernel = left_nullspace(substitution_matrix())
    if len(kernel) != 3:
        raise BookkeepingError(f"space of quadrics through Q has dimension {len(kernel)}, not 3")
    basis, _ = rref(kernel)
    expected, _ = rref([q.coefficients() for q in SEGRE_GENERATORS])
    if basis != expected:
        raise BookkeepingError("kernel does not row-reduce to the 2x2 minors")
    return [QuadricForm.from_coefficients(row) for row in basis]


def in_segre_span(q: QuadricForm) -> bool:
    stacked = [g.coefficients() for g in SEGRE_GENERATORS] + [q.coefficients()]
    return bareiss_rank(stacked) == 3


def singular_locus_dim(q: QuadricForm) -> tuple[int, int]:
    """Rank and dimension of the projectivized kernel (``-1`` means empty)."""
    if q.is_zero():
        raise ValueError("zero form has no singular locus")
    r = q.rank
    return r, N_VARS - r - 1


def random_span_ranks(samples: int = 100, seed: int = 0xC0FFEE) -> list[int]:
    """Ranks of seeded random nonzero members of the span of the generators."""
    rng = rng_for(seed, 6, 2)
    out = []
    while len(out) < samples:
        c = [int(x) for x in rng.integers(-COORD_BOUND, COORD_BOUND, size=3, endpoint=True)]
        if not any(c):
            continue
        coeffs = [sum(ci * g for ci, g in zip(c, col)) for col in zip(*(q.coefficients() for q in SEGRE_GENERATORS))]
        out.append(QuadricForm.from_coefficients(coeffs).rank)
    return out


@dataclass(frozen=True)
class SlopeRow:
    name: str
    rank: int
    degree: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "degree": rational_to_json(self.degree),
            "slope": rational_to_json(self.slope),
        }


@dataclass
class Genus6Table:
    rows: dict[str, SlopeRow]
    sequence: tuple[str, str, str]
    three_step_factors: tuple[str, str, str]
    hn_slopes: tuple[Fraction, Fraction]
    brill_noether: int
    elliptic_quintic_slope: Fraction
    genus: int
    degree: int

    @property
    def three_step_slopes(self) -> list[Fraction]:
        return [self.rows[n].slope for n in self.three_step_factors]

    @property
    def three_step_decreasing(self) -> bool:
        s = self.three_step_slopes
        return all(a > b for a, b in zip(s, s[1:]))

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows.values()],
            "sequence": list(self.sequence),
            "three_step_factors": list(self.three_step_factors),
            "three_step_slopes": [rational_to_json(s) for s in self.three_step_slopes],
            "three_step_decreasing": self.three_step_decreasing,
            "hn_slopes": [rational_to_json(s) for s in self.hn_slopes],
            "brill_noether": rational_to_json(self.brill_noether),
            "elliptic_quintic_slope": rational_to_json(self.elliptic_quintic_slope),
            "genus": self.genus,
            "degree": self.degree,
            "assumptions": list(ASSUMPTIONS),
        }


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise BookkeepingError(what)


def genus6_slopes() -> Genus6Table:
    c = dp4_class(6, 2)
    anti = -del_pezzo4().K
    g = adjunction_genus(c)
    deg_c = embedding_degree(c, anti)
    _require(g == 6 and deg_c == 10, f"6H - 2E has genus {g} and degree {deg_c}")

    # N_(C/P^5): Euler sequence
    n_total = SlopeRow("N_C/P5", 4, deg_c * 6 + 2 * g - 2)
    _require(n_total.slope == mu_curve_in_Pn(deg_c, g, 5), "Euler-sequence slope mismatch")
    n_cs = SlopeRow("N_C/S", 1, intersect(c, c))
    # C on the Segre threefold: class 6 alpha.beta + 4 beta^2 (degree 10)
    curve = (6, 4)
    _require(SEGRE.degree(SEGRE.hyperplane, curve) == deg_c, "Segre curve class has the wrong degree")
    n_q = SlopeRow("N_Q/P5|C", 2, SEGRE.degree(SEGRE.normal_bundle_c1(5), curve))
    n_cq = SlopeRow("N_C/Q", 2, n_total.degree - n_q.degree)
    n_sq = SlopeRow("N_S/Q|C", 1, n_cq.degree - n_cs.degree)
    # 0 -> N_(Q/Y)|C(s1+s2) -> N_(Q/P^5)|C -> O_C(2 - s1 - s2) -> 0
    cokernel = SlopeRow("O_C(2-s1-s2)", 1, 2 * deg_c - 2)
    sub = SlopeRow("N_Q/Y|C(s1+s2)", 1, n_q.degree - cokernel.degree)
    quotient = SlopeRow("N_C/P5 / N_C/S", 3, n_total.degree - n_cs.degree)
    rows = {r.name: r for r in (n_cs, n_total, n_cq, n_sq, n_q, sub, cokernel, quotient)}

    _require(n_q.degree == sub.degree + cokernel.degree == 34, "34 = 16 + 18 fails")
    _require(n_cs.degree + quotient.degree == n_total.degree == 70, "70 = 20 + 50 fails")
    _require(n_cs.rank + n_sq.rank + n_q.rank == n_total.rank, "ranks of the three-step chain do not add up")
    _require(n_q.slope.denominator == 1 and n_q.slope % 2 == 1, "slope of N_Q/P5|C is not an odd integer")
    hn = (n_cs.slope, quotient.slope)
    _require(hn[0] > n_total.slope > hn[1], "HN slopes are not strictly decreasing")

    rho = g - 3 * (g - 6 + 2)  # rho(g, r=2, d=6) = g - (r+1)(g-d+r)
    elliptic = mu_curve_in_Pn(5, 1, 4)
    return Genus6Table(
        rows=rows,
        sequence=(sub.name, n_q.name, cokernel.name),
        three_step_factors=(n_cs.name, n_sq.name, n_q.name),
        hn_slopes=hn,
        brill_noether=rho,
        elliptic_quintic_slope=elliptic,
        genus=g,
        degree=deg_c,
    )


def hn_genus6() -> HNReport:
    table = genus6_slopes()
    n_cs = table.rows["N_C/S"]
    q = table.rows["N_C/P5 / N_C/S"]
    total = table.rows["N_C/P5"]
    steps = [FiltrationStep(n_cs.name, n_cs.rank, n_cs.slope), FiltrationStep("N_C/P5 / N_C/S", q.rank, q.slope)]
    return HNReport(6, total.slope, n_cs.degree, q.slope, None, steps, None, ASSUMPTIONS)
