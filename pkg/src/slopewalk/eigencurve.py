"""Classical points of the 2-adic tame-level-1 eigencurve, at model granularity.

A point is (weight character, slope, flags). That is exactly the data the
annulus-walk arguments consume: boundary points lie on the annulus X_i with
i = slope / v(w), the twin involution swaps the two refinements so slopes
satisfy s + s' = k - 1 with (k, m) fixed, and classicality is decided by the
numerical criterion slope < k - 1 (ordinary meaning slope 0).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import NonIntegralIndex, NotInBoundary, NotPotentiallyCrystalline
from .serialize import rat_from_str, rat_to_str
from .weightspace import WeightCharacter, in_boundary, w_valuation


@dataclass(frozen=True)
class EigencurvePointModel:
    """Slope-and-weight model of a classical point.

    pc: potentially crystalline, i.e. not a twist of Steinberg at 2; the twin
    involution is only defined there. classical_claim is a recorded flag and
    is validated against the numerical criterion by classify().
    """

    wc: WeightCharacter
    slope: Fraction
    pc: bool = True
    classical_claim: bool = True

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        if self.slope < 0:
            raise ValueError(f"slope must be >= 0, got {self.slope}")

    @property
    def k(self) -> int:
        return self.wc.k

    def to_json_obj(self) -> dict:
        return {
            "k": self.wc.k,
            "m": self.wc.m,
            "slope": rat_to_str(self.slope),
            "pc": self.pc,
            "classical": self.classical_claim,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "EigencurvePointModel":
        return cls(
            WeightCharacter(int(obj["k"]), int(obj["m"])),
            rat_from_str(obj["slope"]),
            bool(obj["pc"]),
            bool(obj["classical"]),
        )


def annulus_index(pt: EigencurvePointModel) -> int:
    """i with pt on X_i: slope / v(w), enforced to be a positive integer."""
    if not in_boundary(pt.wc):
        raise NotInBoundary(f"{pt.wc.label()} is not in the boundary annulus")
    ratio = pt.slope / w_valuation(pt.wc)
    if ratio.denominator != 1 or ratio.numerator < 1:
        raise NonIntegralIndex(
            f"slope {pt.slope} over v(w) {w_valuation(pt.wc)} gives index {ratio}"
        )
    return ratio.numerator


def twin(pt: EigencurvePointModel) -> EigencurvePointModel:
    """The twin point: same (k, m), slope k - 1 - s, pc preserved.

    An involution: twin(twin(pt)) == pt. Refuses non-pc points, where no twin
    is defined.
    """
    if not pt.pc:
        raise NotPotentiallyCrystalline("twin is defined on pc points only")
    new_slope = pt.k - 1 - pt.slope
    if new_slope < 0:
        raise ValueError(f"slope {pt.slope} exceeds k-1 = {pt.k - 1}; not a twin pair")
    return replace(pt, slope=new_slope)


def twin_index_sum_check(pt: EigencurvePointModel) -> bool:
    """Verify i + i' = (k-1)/v(w) with the quotient an integer."""
    i = annulus_index(pt)
    i_twin = annulus_index(twin(pt))
    total = Fraction(pt.k - 1) / w_valuation(pt.wc)
    return total.denominator == 1 and i + i_twin == total


def classify(pt: EigencurvePointModel) -> str:
    """'ordinary' (slope 0), 'numerically_non_critical' (0 < slope < k-1),
    or 'neither' (slope >= k-1)."""
    if pt.slope == 0:
        return "ordinary"
    if pt.slope < pt.k - 1:
        return "numerically_non_critical"
    return "neither"


def is_numerically_non_critical(pt: EigencurvePointModel) -> bool:
    """slope < k - 1 (ordinary points included)."""
    return pt.slope < pt.k - 1


def bk_predicted_slope(i: int, wc: WeightCharacter) -> Fraction:
    """Slope of the point of X_i above wc: i * v(w)."""
    if i < 1:
        raise ValueError(f"annulus index must be >= 1, got {i}")
    if not in_boundary(wc):
        raise NotInBoundary(f"{wc.label()} is not in the boundary annulus")
    return i * w_valuation(wc)


def boundary_point(i: int, wc: WeightCharacter, pc: bool = True) -> EigencurvePointModel:
    """The point of X_i above wc, with its slope filled in."""
    slope = bk_predicted_slope(i, wc)
    return EigencurvePointModel(wc, slope, pc=pc, classical_claim=slope < wc.k - 1)
