"""Rotation, ray translation and scaling of grid cells.

All maps act on cell indices; the integer-code forms decode, map and
re-encode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import DomainError, ScaleUndefined, TranslationUndefined
from .grid import AreaRef, GridParams, decode, encode

Cells = Iterable[AreaRef]


def _exact(v) -> Fraction:
    # floats convert exactly; strings such as "1/3" or "0.1" parse exactly
    return Fraction(v)


def rotation_shift(params: GridParams, t: int, theta) -> int:
    """Index shift ``floor(theta / (360 / ((2t-1) n)))`` on track ``t``."""
    return math.floor(_exact(theta) * (2 * t - 1) * params.n / 360)


def _sorted(params: GridParams, cells: Iterable[AreaRef]) -> list[AreaRef]:
    return sorted(set(cells), key=lambda c: (c.t, c.j))


def rotate(params: GridParams, cells: Cells, theta) -> list[AreaRef]:
    out = []
    for c in cells:
        params.check(c)
        if c.t == 0:
            out.append(c)
            continue
        size = params.areas_in_track(c.t)
        out.append(AreaRef(c.t, (c.j + rotation_shift(params, c.t, theta)) % size))
    return _sorted(params, out)


def rotate_inverse(params: GridParams, cells: Cells, theta) -> list[AreaRef]:
    """Undo :func:`rotate` by subtracting the same per-track shift."""
    out = []
    for c in cells:
        params.check(c)
        if c.t == 0:
            out.append(c)
            continue
        size = params.areas_in_track(c.t)
        out.append(AreaRef(c.t, (c.j - rotation_shift(params, c.t, theta)) % size))
    return _sorted(params, out)


def translate_cell(params: GridParams, c: AreaRef, ray: int, k: int) -> AreaRef:
    if not 0 <= ray < params.n:
        raise DomainError(f"ray index must be in 0..{params.n - 1}, got {ray}")
    params.check(c)
    if k == 0:
        return c
    if c.t == 0:
        raise TranslationUndefined("the origin cell has no offset from a ray", c)
    t2 = c.t + k
    if t2 < 1:
        raise TranslationUndefined(f"{c} moved {k} tracks falls below track 1", c)
    offset = c.j - (2 * c.t - 1) * ray
    j2 = (2 * t2 - 1) * ray + offset
    if not 0 <= j2 < params.areas_in_track(t2):
        raise TranslationUndefined(
            f"{c} keeps offset {offset} from ray {ray}, which does not fit track {t2}", c
        )
    return AreaRef(t2, j2)


def translate(params: GridParams, cells: Cells, ray: int, k: int) -> list[AreaRef]:
    return _sorted(params, [translate_cell(params, c, ray, int(k)) for c in cells])


def scale_cell(params: GridParams, c: AreaRef, factor) -> AreaRef:
    k = _exact(factor)
    if k <= 0:
        raise DomainError(f"scale factor must be positive, got {factor}")
    params.check(c)
    if c.t == 0:
        return c
    t2 = math.ceil(c.t * k)
    j2 = math.ceil(c.j * k)
    if not 0 <= j2 < params.areas_in_track(t2):
        raise ScaleUndefined(f"{c} scaled by {k} lands outside track {t2}", c)
    return AreaRef(t2, j2)


def scale(params: GridParams, cells: Cells, factor) -> list[AreaRef]:
    return _sorted(params, [scale_cell(params, c, factor) for c in cells])


def on_codes(
    params: GridParams,
    codes: Iterable[int],
    fn: Callable[..., list[AreaRef]],
    *args,
) -> list[int]:
    """Apply a cell transform to integer codes; returns sorted codes."""
    out = fn(params, [decode(params, c) for c in codes], *args)
    return sorted(encode(params, c) for c in out if c.t)


@dataclass(frozen=True)
class TransformSpec:
    kind: str
    theta: Fraction = Fraction(0)
    ray: int = 0
    k: int = 0
    factor: Fraction = Fraction(1)

    @classmethod
    def rotation(cls, theta) -> "TransformSpec":
        return cls("rotate", theta=_exact(theta))

    @classmethod
    def translation(cls, ray: int, k: int) -> "TransformSpec":
        return cls("translate", ray=int(ray), k=int(k))

    @classmethod
    def scaling(cls, factor) -> "TransformSpec":
        f = _exact(factor)
        if f <= 0:
            raise DomainError(f"scale factor must be positive, got {factor}")
        return cls("scale", factor=f)

    def apply(self, params: GridParams, cells: Cells) -> list[AreaRef]:
        if self.kind == "rotate":
            return rotate(params, cells, self.theta)
        if self.kind == "translate":
            return translate(params, cells, self.ray, self.k)
        if self.kind == "scale":
            return scale(params, cells, self.factor)
        raise DomainError(f"unknown transform {self.kind!r}")

    def describe(self) -> dict:
        if self.kind == "rotate":
            return {"kind": "rotate", "theta": str(self.theta)}
        if self.kind == "translate":
            return {"kind": "translate", "ray": self.ray, "k": self.k}
        return {"kind": "scale", "factor": str(self.factor)}
