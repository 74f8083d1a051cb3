"""Bar-tree quantities and the stored template fingerprint.

A template with ``P[d]`` nodes at depth ``d`` is drawn as nested bars. The
bar at depth ``d`` has width

    w[0] = I,   w[d] = (I - (d-1)*r) / P[d-1] * w[d-1]

and area ``A[d] = d * w[d]``. The part of a bar not covered by the deeper
bar (its nett area) equals ``w[d]``, and the template's total area is the
sum of the nett areas. Everything is computed with :class:`fractions.Fraction`
so that equal templates compare exactly equal.
"""
from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Mapping

from .errors import InvalidRatio
from .reverse import DepthProfile
from .text import normalize_text


class NettForm(enum.Enum):
    RECURSIVE = "recursive"
    PRODUCT = "product"


@dataclass(frozen=True)
class BarParams:
    I: Fraction
    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "I", Fraction(self.I))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.I <= 0:
            raise InvalidRatio(f"initial width must be positive, got {self.I}")
        if self.r < 0:
            raise InvalidRatio(f"ratio must be non-negative, got {self.r}")

    @classmethod
    def default_for(cls, d_max: int, I: Fraction | int = 1) -> "BarParams":
        I = Fraction(I)
        return cls(I, I / (d_max + 1))

    def check(self, d_max: int) -> None:
        if d_max > 0 and self.r > self.I / d_max:
            raise InvalidRatio(f"r = {self.r} exceeds I/d_max = {self.I / d_max}")


def widths(profile: DepthProfile, params: BarParams) -> tuple[Fraction, ...]:
    params.check(profile.d_max)
    I, r = params.I, params.r
    w = [I]
    for d in range(1, profile.d_max + 1):
        w.append((I - (d - 1) * r) / profile.P[d - 1] * w[d - 1])
    return tuple(w)


def areas(profile: DepthProfile, params: BarParams) -> tuple[Fraction, ...]:
    w = widths(profile, params)
    return tuple(d * wd for d, wd in enumerate(w))


def nett_areas(
    profile: DepthProfile, params: BarParams, form: NettForm = NettForm.RECURSIVE
) -> tuple[Fraction, ...]:
    """Nett areas for depths ``1..d_max`` (depth 0 has no bar beneath it)."""
    if form is NettForm.RECURSIVE:
        w = widths(profile, params)
        A = areas(profile, params)
        return tuple(A[d] - (d - 1) * w[d] for d in range(1, profile.d_max + 1))
    params.check(profile.d_max)
    I, r, P = params.I, params.r, profile.P
    out = []
    for d in range(1, profile.d_max + 1):
        prod = Fraction(1)
        for n in range(d):
            prod *= (I - (d - 1 - n) * r) / P[d - 1 - n]
        out.append(prod * I)
    return tuple(out)


def total_area(profile: DepthProfile, params: BarParams) -> Fraction:
    return sum(nett_areas(profile, params), Fraction(0))


@dataclass(frozen=True)
class BarTree:
    params: BarParams
    profile: DepthProfile
    w: tuple[Fraction, ...]
    A: tuple[Fraction, ...]
    A_nett: tuple[Fraction, ...]
    A_total: Fraction


def bar_tree(profile: DepthProfile, params: BarParams) -> BarTree:
    w = widths(profile, params)
    A = tuple(d * wd for d, wd in enumerate(w))
    nett = tuple(A[d] - (d - 1) * w[d] for d in range(1, profile.d_max + 1))
    return BarTree(params, profile, w, A, nett, sum(nett, Fraction(0)))


def describe(tree: BarTree) -> str:
    """Plain-text table of the bars, one line per depth."""
    lines = [f"I={tree.params.I} r={tree.params.r} d_max={tree.profile.d_max}"]
    for d, wd in enumerate(tree.w):
        p = tree.profile.P[d] if d < tree.profile.d_max else "-"
        lines.append(f"d={d:>2} P={p!s:>3} w={wd!s:>14} A={tree.A[d]!s:>14}")
    lines.append(f"A_total={tree.A_total}")
    return "\n".join(lines)


# -- fingerprint -------------------------------------------------------------


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    if not isinstance(s, str) or s.count("/") != 1:
        raise ValueError(f"expected 'num/den', got {s!r}")
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def roi_digest(roi_text: str) -> str:
    return hashlib.sha256(normalize_text(roi_text).encode("utf-8")).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class Fingerprint:
    d_max: int
    A_total: Fraction
    P: tuple[int, ...]
    A: tuple[Fraction, ...]
    sigma_upper: int
    sigma_lower: int
    delta: int
    params: BarParams
    captured_at: str
    roi_digest: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "d_max": self.d_max,
            "A_total": frac_str(self.A_total),
            "P": list(self.P),
            "A": [frac_str(a) for a in self.A],
            "sigma_upper": self.sigma_upper,
            "sigma_lower": self.sigma_lower,
            "delta": self.delta,
            "I": frac_str(self.params.I),
            "r": frac_str(self.params.r),
            "captured_at": self.captured_at,
            "roi_digest": self.roi_digest,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Fingerprint":
        """Inverse of :meth:`to_dict`; raises ``KeyError``/``ValueError`` on bad input."""
        fp = cls(
            d_max=_int(data["d_max"]),
            A_total=parse_frac(data["A_total"]),
            P=tuple(_int(p) for p in data["P"]),
            A=tuple(parse_frac(a) for a in data["A"]),
            sigma_upper=_int(data["sigma_upper"]),
            sigma_lower=_int(data["sigma_lower"]),
            delta=_int(data["delta"]),
            params=BarParams(parse_frac(data["I"]), parse_frac(data["r"])),
            captured_at=str(data["captured_at"]),
            roi_digest=str(data["roi_digest"]),
        )
        if fp.delta != fp.sigma_upper - fp.sigma_lower:
            raise ValueError("delta != sigma_upper - sigma_lower")
        if len(fp.P) != fp.d_max or len(fp.A) != fp.d_max + 1:
            raise ValueError("P/A lengths disagree with d_max")
        return fp


def _int(v: Any) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"expected integer, got {v!r}")
    return v


def fingerprint(
    profile: DepthProfile,
    sigma_upper: int,
    sigma_lower: int,
    params: BarParams | None = None,
    *,
    roi_text: str = "",
    captured_at: str | None = None,
) -> Fingerprint:
    if params is None:
        params = BarParams.default_for(profile.d_max)
    tree = bar_tree(profile, params)
    return Fingerprint(
        d_max=profile.d_max,
        A_total=tree.A_total,
        P=profile.P,
        A=tree.A,
        sigma_upper=sigma_upper,
        sigma_lower=sigma_lower,
        delta=sigma_upper - sigma_lower,
        params=params,
        captured_at=captured_at or _now(),
        roi_digest=roi_digest(roi_text),
    )
