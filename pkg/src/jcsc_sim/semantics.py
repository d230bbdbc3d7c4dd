"""Raw-image versus semantic payload sizes.

Semantic extraction is represented only by its net effect: a compression
ratio between the raw frame and the transmitted semantic description.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SOURCES = ("cityscapes_frame", "camvid_frame", "custom")


@dataclass(frozen=True)
class PayloadSpec:
    source: str
    width: int
    height: int
    bits_per_pixel: int = 24
    semantic_ratio: float = 10.0
    name: str = ""

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown payload source {self.source!r}; expected one of {SOURCES}")
        for attr in ("width", "height", "bits_per_pixel"):
            v = getattr(self, attr)
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise ValueError(f"{attr} must be a positive integer, got {v!r}")
        if not (self.semantic_ratio >= 1 and math.isfinite(self.semantic_ratio)):
            raise ValueError(f"semantic_ratio must be >= 1, got {self.semantic_ratio!r}")
        if not self.name:
            object.__setattr__(self, "name", self.source.removesuffix("_frame"))


def cityscapes(**kw) -> PayloadSpec:
    return PayloadSpec("cityscapes_frame", 1024, 512, **kw)


def camvid(**kw) -> PayloadSpec:
    return PayloadSpec("camvid_frame", 960, 720, **kw)


def raw_payload_bits(spec: PayloadSpec) -> int:
    return spec.width * spec.height * spec.bits_per_pixel


def semantic_payload_bits(spec: PayloadSpec) -> int:
    raw = raw_payload_bits(spec)
    ratio = spec.semantic_ratio
    if float(ratio).is_integer():
        return -(-raw // int(ratio))
    return math.ceil(raw / ratio)


def efficiency_gain(raw: float, semantic: float) -> float:
    """Spectrum-efficiency gain of sending ``semantic`` bits instead of ``raw``.

    At a fixed link rate channel uses scale with bits, so this is the bit ratio.
    """
    if semantic <= 0:
        raise ZeroDivisionError("efficiency gain undefined for an empty semantic payload")
    return raw / semantic
