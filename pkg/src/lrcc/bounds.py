"""Read-bandwidth lower bound, achievable construction cost, and the
download-entropy constraint for stable global-merge conversions.

All values are exact rationals (fractions.Fraction); equality and tightness
checks must never go through floating point.  Functions take any object with
the merge-spec attributes (kI, gI, r, delta, lam, gF, alpha, muI).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

CASE_MIN_G_ABOVE_R = "MinGAboveR"
CASE_GF_LE_GI_AND_R = "GfLeGiAndR"
CASE_GI_LT_GF_LE_R = "GiLtGfLeR"
CASE_OTHERWISE = "Otherwise"


class InvalidSpec(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class BoundViolation(AssertionError):
    """An executed procedure reported bandwidth below the lower bound."""


@dataclass
class BoundReport:
    spec: object
    case_label: str
    bound_gammaR: Fraction
    construction_gammaR: Fraction
    tight: bool
    achieved_gammaR: Fraction | None = None
    gap: Fraction | None = None

    def to_json(self) -> dict:
        obj = {
            "case": self.case_label,
            "bound": format_exact(self.bound_gammaR),
            "construction_cost": format_exact(self.construction_gammaR),
            "tight": self.tight,
        }
        if self.achieved_gammaR is not None:
            obj["achieved"] = format_exact(self.achieved_gammaR)
            obj["gap"] = format_exact(self.gap)
        return obj


def format_exact(value: Fraction | int | None) -> str:
    """Exact decimal-free rendering: '6' or '22/3'."""
    if value is None:
        return "n/a"
    return str(Fraction(value))


def _validate(spec) -> None:
    if spec.lam < 2:
        raise InvalidSpec(f"merge regime requires lambda >= 2, got {spec.lam}")
    if spec.kI % spec.r != 0:
        raise InvalidSpec(f"r must divide kI (kI={spec.kI}, r={spec.r})")


def classify_case(spec) -> str:
    """Which guard of the piecewise lower bound fires (evaluated in order)."""
    _validate(spec)
    if min(spec.gI, spec.gF) > spec.r:
        return CASE_MIN_G_ABOVE_R
    if spec.gI >= spec.gF and spec.r >= spec.gF:
        return CASE_GF_LE_GI_AND_R
    if spec.gI < spec.gF <= spec.r:
        return CASE_GI_LT_GF_LE_R
    return CASE_OTHERWISE


def read_bandwidth_bound(spec) -> BoundReport:
    """Lower bound on total symbols the coordinator must download.

    Piecewise over (gI, gF, r); tight (achievable) whenever gF <= r.  The
    GiLtGfLeR case can be non-integral: achieving it requires alpha divisible
    by gF + 1.
    """
    case = classify_case(spec)
    lam, a = spec.lam, spec.alpha
    if case == CASE_MIN_G_ABOVE_R:
        bound = Fraction(lam * spec.r * a)
    elif case == CASE_GF_LE_GI_AND_R:
        bound = Fraction(lam * spec.gF * a)
    elif case == CASE_GI_LT_GF_LE_R:
        bound = (Fraction(lam * spec.gI * a)
                 + lam * spec.muI * (spec.gF - spec.gI)
                 * Fraction(spec.r + 1, spec.gF + 1) * a)
    else:
        bound = Fraction(lam * spec.gI * a + lam * spec.muI * (spec.r - spec.gI) * a)
    return BoundReport(
        spec=spec,
        case_label=case,
        bound_gammaR=bound,
        construction_gammaR=construction_cost(spec),
        tight=spec.gF <= spec.r,
    )


def construction_cost(spec) -> Fraction:
    """Read bandwidth of the known conversion constructions (exact rational)."""
    _validate(spec)
    lam, a = spec.lam, spec.alpha
    if spec.gF <= spec.gI:
        return Fraction(lam * spec.gF * a)
    per_cw = (Fraction((spec.kI + spec.muI * spec.delta) * (spec.gF - spec.gI),
                       spec.gF + 1)
              + spec.gI)
    return lam * per_cw * a


def download_constraint_rhs(spec) -> Fraction:
    return Fraction(spec.lam * min(spec.gF, spec.r) * spec.alpha)


def download_constraint_lhs(u_blocks, v, w, spec) -> Fraction:
    """LHS of the per-conversion entropy constraint.

    u_blocks: joint entropy of the downloads from each initial codeword's
    global parities (lam entries); v: per-information-node download entropies
    (lam*kI entries); w: per-local-parity download entropies
    (lam*muI*delta entries).  Entropies are in field-symbol units.
    """
    _validate(spec)
    if len(u_blocks) != spec.lam:
        raise SizeMismatch(f"expected {spec.lam} U blocks, got {len(u_blocks)}")
    if len(v) != spec.lam * spec.kI:
        raise SizeMismatch(f"expected {spec.lam * spec.kI} V entries, got {len(v)}")
    if len(w) != spec.lam * spec.muI * spec.delta:
        raise SizeMismatch(
            f"expected {spec.lam * spec.muI * spec.delta} W entries, got {len(w)}")
    cap = spec.gI * spec.alpha
    if any(not 0 <= x <= cap for x in u_blocks):
        raise SizeMismatch("U-block entropy outside [0, gI*alpha]")
    if any(not 0 <= x <= spec.alpha for x in list(v) + list(w)):
        raise SizeMismatch("per-node entropy outside [0, alpha]")
    factor = Fraction(min(spec.gF, spec.r) + 1, spec.muI * (spec.r + 1))
    return sum(map(Fraction, u_blocks), Fraction(0)) + factor * (
        sum(map(Fraction, v), Fraction(0)) + sum(map(Fraction, w), Fraction(0)))


def gap_report(spec, achieved_gammaR) -> BoundReport:
    """Attach an achieved bandwidth to the bound; OPTIMAL means gap == 0."""
    report = read_bandwidth_bound(spec)
    achieved = Fraction(achieved_gammaR)
    gap = achieved - report.bound_gammaR
    if gap < 0:
        raise BoundViolation(
            f"achieved {achieved} below lower bound {report.bound_gammaR}")
    report.achieved_gammaR = achieved
    report.gap = gap
    return report
