"""Harder-Narasimhan report for the normal bundle of a general trigonal
canonical curve.

The curve ``C`` lies on a rational normal scroll ``S``; the filtration is
``0 < N_(C/S) < N_(C/P^(g-1))``. Every slope is computed twice: once from a
closed form and once from degree and rank bookkeeping on the surface
lattice. A mismatch raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import nodal
from .exact import G, UniPoly, nonneg_on_range_from, poly_identity_check, rational_to_json
from .surfaces import DivisorClass, adjunction_genus, hirzebruch, intersect


class BookkeepingError(AssertionError):
    pass


def mu_curve_in_Pn(d: int, g: int, n: int) -> Fraction:
    """Slope of the normal bundle of a degree-``d`` genus-``g`` curve in ``P^n``,
    from the Euler sequence: degree ``d(n+1) + 2g - 2``, rank ``n - 1``."""
    if n < 2:
        raise ValueError("n must be >= 2 (the normal bundle has rank n - 1)")
    return Fraction(d * (n + 1) + 2 * g - 2, n - 1)


def mu_canonical_normal(g: int) -> Fraction:
    if g < 3:
        raise ValueError("canonical curves need g >= 3")
    mu = mu_curve_in_Pn(2 * g - 2, g, g - 1)
    closed = 2 * g + 4 + Fraction(6, g - 2)
    if mu != closed:
        raise BookkeepingError(f"slope {mu} != 2g+4+6/(g-2) = {closed}")
    return mu


def trigonal_class(g: int, n: int) -> DivisorClass:
    """Class ``3E + ((g + 3n)/2 + 1) F`` of the curve on ``F_n``."""
    if n not in (0, 1):
        raise ValueError("only Maroni invariant 0 or 1 is supported")
    if (g + 3 * n) % 2:
        raise ValueError(f"g + 3n must be even (g={g}, n={n})")
    return hirzebruch(n).cls(3, (g + 3 * n) // 2 + 1)


@dataclass(frozen=True)
class FiltrationStep:
    label: str
    rank: int
    slope: Fraction

    @property
    def degree(self) -> Fraction:
        return self.slope * self.rank

    def to_json(self) -> dict:
        return {"label": self.label, "rank": self.rank, "slope": rational_to_json(self.slope)}


@dataclass
class HNReport:
    g: int
    mu_N: Fraction
    deg_NCS: int | None
    mu_quotient: Fraction | None
    coprimality_witness: int | None
    filtration: list[FiltrationStep]
    degeneration_verdict: bool | None
    notes: tuple[str, ...] = ()

    @property
    def slopes(self) -> list[Fraction]:
        return [s.slope for s in self.filtration]

    @property
    def is_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.slopes, self.slopes[1:]))

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else rational_to_json(x)

        out = {
            "g": self.g,
            "mu_N": rational_to_json(self.mu_N),
            "deg_NCS": opt(self.deg_NCS),
            "mu_quotient": opt(self.mu_quotient),
            "coprimality_witness": opt(self.coprimality_witness),
            "filtration": [s.to_json() for s in self.filtration],
            "degeneration_verdict": self.degeneration_verdict,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def coprimality_identity() -> bool:
    """``2g^2 - 3g - 8 - (2g+3)(g-3) = 1`` identically in ``g``."""
    return poly_identity_check(2 * G**2 - 3 * G - 8 - (2 * G + 3) * (G - 3), 1)


def destabilization_inequality() -> bool:
    """``(g+2)(g-2) >= 6`` for every integer ``g >= 4``; equivalent to
    ``3g + 6 > 2g + 4 + 6/(g-2)`` once ``g > 4``."""
    return nonneg_on_range_from((G + 2) * (G - 2) - 6, 4)


def slope_gap_polynomials() -> tuple[UniPoly, UniPoly]:
    """Numerators of ``3g+6 - mu_N`` and ``mu_N - mu_quotient`` over the
    common denominator ``(g-2)(g-3)``."""
    mu_n_num = 2 * (G**2 - 1) * (G - 3)  # deg N = 2g^2 - 2 over rank g - 2
    top = (3 * G + 6) * (G - 2) * (G - 3) - mu_n_num
    bottom = mu_n_num - (2 * G**2 - 3 * G - 8) * (G - 2)
    return top, bottom


def hn_report(g: int, seed: int = 0xC0FFEE, backend: str | None = None, with_degeneration: bool = True) -> HNReport:
    if g < 5:
        raise ValueError("hn_report needs g >= 5; use small_genus_cases for g = 3, 4")
    n = g % 2
    c = trigonal_class(g, n)
    lat = c.lattice
    # C sits on the scroll embedded by E + ((g - 2 + n)/2) F
    hyper = lat.cls(1, (g - 2 + n) // 2)
    if adjunction_genus(c) != g or intersect(c, hyper) != 2 * g - 2:
        raise BookkeepingError(f"trigonal class {c} does not give a canonical genus-{g} curve")

    mu_n = mu_canonical_normal(g)
    deg_n = 2 * g * g - 2  # (2g-2) g + 2g - 2
    rank_n = g - 2
    if mu_n * rank_n != deg_n:
        raise BookkeepingError("degree of N_(C/P^(g-1)) disagrees with its slope")

    deg_ncs = intersect(c, c)
    if deg_ncs != 3 * g + 6:
        raise BookkeepingError(f"[C]^2 = {deg_ncs}, expected 3g+6")
    deg_q = deg_n - deg_ncs
    rank_q = rank_n - 1
    mu_q = Fraction(deg_q, rank_q)
    closed = 2 * g + 3 + Fraction(1, g - 3)
    if mu_q != closed or mu_q != nodal.mu_total(g):
        raise BookkeepingError(f"quotient slope {mu_q} != 2g+3+1/(g-3)")
    witness = deg_q - (2 * g + 3) * rank_q
    if witness != 1 or not coprimality_identity():
        raise BookkeepingError("coprimality witness is not 1")

    steps = [FiltrationStep("N_C/S", 1, Fraction(deg_ncs)), FiltrationStep("N_S/P|_C", rank_q, mu_q)]
    if not (steps[0].slope > mu_n > steps[1].slope):
        raise BookkeepingError("slopes are not strictly ordered")
    verdict = None
    if with_degeneration:
        verdict = nodal.destabilizer_search(g, seed, backend).ok
    return HNReport(g, mu_n, deg_ncs, mu_q, witness, steps, verdict)


def small_genus_cases(g: int) -> HNReport:
    """Genus 3 (plane quartic) and genus 4 (complete intersection of a
    quadric and a cubic in ``P^3``)."""
    if g == 3:
        deg_c = 4
        steps = [FiltrationStep("O_C(4)", 1, Fraction(4 * deg_c))]
        notes = ("line bundle, hence stable",)
    elif g == 4:
        deg_c = 6
        # N = O_C(2) + O_C(3), the normal bundles of the quadric and the cubic
        steps = [FiltrationStep("O_C(3)", 1, Fraction(3 * deg_c)), FiltrationStep("O_C(2)", 1, Fraction(2 * deg_c))]
        notes = ("N = N_C/Q + N_C/Y",)
    else:
        raise ValueError("small_genus_cases covers g = 3 and g = 4 only")
    mu = mu_canonical_normal(g)
    total = sum(s.degree for s in steps)
    if total != mu * (g - 2):
        raise BookkeepingError(f"degrees {total} disagree with mu * rank = {mu * (g - 2)}")
    return HNReport(g, mu, None, None, None, steps, None, notes)


def report(g: int, seed: int = 0xC0FFEE, backend: str | None = None) -> HNReport:
    return small_genus_cases(g) if g in (3, 4) else hn_report(g, seed, backend)
