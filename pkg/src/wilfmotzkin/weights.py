"""Height-indexed step weights for weighted Motzkin paths.

A weight function is stored as two small integer polynomials, one for even
heights and one for odd heights.  Both are polynomials in the *half index*
``j = x // 2`` rather than in the height ``x`` itself: halved weights such as
``(-x - 1) / 2`` on odd heights then have integer coefficients
(``-j - 1`` for ``x = 2j + 1``), and products of two affine weights stay
within degree 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

MAX_DEGREE = 2
STEP_KINDS = ("rise", "level", "fall")
PRESETS = ("motzkin", "wilf_plain", "wilf_halved", "flajolet_stirling")


class DegreeOverflowError(ValueError):
    """A product of weight polynomials left the representable degree."""


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = [int(a) for a in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (0,)


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


@dataclass(frozen=True)
class ParityPoly:
    even_coeffs: tuple[int, ...]
    odd_coeffs: tuple[int, ...]

    def __post_init__(self):
        even, odd = _trim(self.even_coeffs), _trim(self.odd_coeffs)
        for coeffs in (even, odd):
            if len(coeffs) - 1 > MAX_DEGREE:
                raise DegreeOverflowError(f"degree {len(coeffs) - 1} > {MAX_DEGREE}: {coeffs}")
        object.__setattr__(self, "even_coeffs", even)
        object.__setattr__(self, "odd_coeffs", odd)

    @classmethod
    def constant(cls, value: int) -> "ParityPoly":
        return cls((value,), (value,))

    def __call__(self, x: int) -> int:
        if x < 0:
            raise ValueError(f"height must be nonnegative, got {x}")
        coeffs = self.odd_coeffs if x & 1 else self.even_coeffs
        j = x >> 1
        acc = 0
        for a in reversed(coeffs):
            acc = acc * j + a
        return acc

    def __mul__(self, other: "ParityPoly") -> "ParityPoly":
        return ParityPoly(_poly_mul(self.even_coeffs, other.even_coeffs),
                          _poly_mul(self.odd_coeffs, other.odd_coeffs))

    def is_one(self) -> bool:
        return self.even_coeffs == (1,) and self.odd_coeffs == (1,)

    def to_dict(self) -> dict:
        return {"even": list(self.even_coeffs), "odd": list(self.odd_coeffs)}

    @classmethod
    def from_dict(cls, data: dict) -> "ParityPoly":
        return cls(tuple(data["even"]), tuple(data["odd"]))


@dataclass(frozen=True)
class WeightSystem:
    """Rise (b), level (c) and fall (d) weights indexed by step height."""

    rise: ParityPoly
    level: ParityPoly
    fall: ParityPoly = field(default_factory=lambda: ParityPoly.constant(1))
    label: str = "custom"

    def weight_at(self, kind: str, height: int) -> int:
        if kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {kind!r}")
        return getattr(self, kind)(height)

    def b(self, x: int) -> int:
        return self.rise(x)

    def c(self, x: int) -> int:
        return self.level(x)

    def d(self, x: int) -> int:
        return self.fall(x)

    def vectors(self, width: int) -> tuple[list[int], list[int], list[int]]:
        """Weights b_x, c_x, d_x for heights 0..width-1."""
        return ([self.rise(x) for x in range(width)],
                [self.level(x) for x in range(width)],
                [self.fall(x) for x in range(width)])

    def to_dict(self) -> dict:
        return {"label": self.label, "rise": self.rise.to_dict(),
                "level": self.level.to_dict(), "fall": self.fall.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "WeightSystem":
        return cls(ParityPoly.from_dict(data["rise"]), ParityPoly.from_dict(data["level"]),
                   ParityPoly.from_dict(data["fall"]), data.get("label", "custom"))

    @classmethod
    def from_json(cls, text: str) -> "WeightSystem":
        return cls.from_dict(json.loads(text))


def weight_at(system: WeightSystem, kind: str, height: int) -> int:
    return system.weight_at(kind, height)


def preset(name: str, u: int | None = None) -> WeightSystem:
    """Return one of the named weight systems.

    ``motzkin``           b = c = d = 1 (classical Motzkin numbers)
    ``wilf_plain``        b_x = -x-1, c_x = x-1, d = 1; M_n = f(n)
    ``wilf_halved``       as wilf_plain but b_x halved and d_x = 2 on odd x
    ``flajolet_stirling`` b_x = u(x+1), c_x = u+x; M_n = sum_k S(n,k) u^k
    """
    one = ParityPoly.constant(1)
    if name == "flajolet_stirling":
        if u is None:
            raise ValueError("preset 'flajolet_stirling' requires an integer u")
        # x = 2j: u(2j+1), u+2j;  x = 2j+1: u(2j+2), u+2j+1
        return WeightSystem(ParityPoly((u, 2 * u), (2 * u, 2 * u)),
                            ParityPoly((u, 2), (u + 1, 2)), one, f"flajolet_stirling(u={u})")
    if name == "motzkin":
        return WeightSystem(one, one, one, "motzkin")
    # c_x = x-1: even 2j-1, odd 2j
    level = ParityPoly((-1, 2), (0, 2))
    if name == "wilf_plain":
        return WeightSystem(ParityPoly((-1, -2), (-2, -2)), level, one, "wilf_plain")
    if name == "wilf_halved":
        # odd x = 2j+1: (-x-1)/2 = -j-1, fall weight 2
        return WeightSystem(ParityPoly((-1, -2), (-1, -1)), level,
                            ParityPoly((1,), (2,)), "wilf_halved")
    raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")


def fold_fall(system: WeightSystem) -> WeightSystem:
    """Move the fall weights onto the rise steps: M^{b,c,d} = M^{bd,c,1}.

    Raises DegreeOverflowError when b*d is not representable; callers should
    then run the frontier engine on the original system.
    """
    if system.fall.is_one():
        return system
    return WeightSystem(system.rise * system.fall, system.level,
                        ParityPoly.constant(1), f"fold({system.label})")
