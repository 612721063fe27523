"""Versioned stroke-color palette and perceptual-distance utilities.

The default table was built by greedy max-min selection over CSS named
colors in CIELAB: starting from the six classic hues, each further entry
maximizes its minimum CIE76 distance to everything already chosen. Entry
order therefore matters — any prefix of the table is itself well spread,
so the first N colors handed to N tracks stay maximally distinguishable.

Every pair in the default table is at least MIN_PERCEPTUAL_DISTANCE apart
(actual minimum 28.3, between violet and plum).
"""

from __future__ import annotations

from dataclasses import dataclass

PALETTE_VERSION = 1

# Documented lower bound on pairwise CIE76 distance within DEFAULT_PALETTE.
MIN_PERCEPTUAL_DISTANCE = 25.0

RGB = tuple[int, int, int]


@dataclass(frozen=True)
class PaletteEntry:
    rgb: RGB
    name: str


@dataclass(frozen=True)
class Palette:
    """Ordered stroke colors with canonical English names.

    Names and RGB values must be pairwise distinct, and names may not
    contain ';' (the legend entry separator).
    """

    entries: tuple[PaletteEntry, ...]

    def __post_init__(self) -> None:
        names = [e.name for e in self.entries]
        rgbs = [e.rgb for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("palette names must be pairwise distinct")
        if len(set(rgbs)) != len(rgbs):
            raise ValueError("palette colors must be pairwise distinct")
        for name in names:
            if ";" in name:
                raise ValueError(f"palette name {name!r} contains ';'")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> PaletteEntry:
        return self.entries[index]

    @property
    def size(self) -> int:
        return len(self.entries)

    def rgb_values(self) -> frozenset[RGB]:
        return frozenset(e.rgb for e in self.entries)


def srgb_to_lab(rgb: RGB) -> tuple[float, float, float]:
    """sRGB (0..255) to CIELAB under D65, via linear RGB and XYZ."""

    def lin(u: float) -> float:
        u = u / 255.0
        return u / 12.92 if u <= 0.04045 else ((u + 0.055) / 1.055) ** 2.4

    r, g, b = (lin(c) for c in rgb)
    x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b
    y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b
    z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b

    def f(t: float) -> float:
        return t ** (1 / 3) if t > (6 / 29) ** 3 else t / (3 * (6 / 29) ** 2) + 4 / 29

    fx, fy, fz = f(x / 0.95047), f(y / 1.0), f(z / 1.08883)
    return 116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)


def perceptual_distance(a: RGB, b: RGB) -> float:
    """CIE76 delta-E between two sRGB colors."""
    la, lb = srgb_to_lab(a), srgb_to_lab(b)
    return sum((u - v) ** 2 for u, v in zip(la, lb)) ** 0.5


def min_pairwise_distance(palette: Palette) -> float:
    entries = palette.entries
    return min(
        perceptual_distance(entries[i].rgb, entries[j].rgb)
        for i in range(len(entries))
        for j in range(i + 1, len(entries))
    )


DEFAULT_PALETTE = Palette(
    entries=(
        PaletteEntry(rgb=(255, 0, 0), name="red"),
        PaletteEntry(rgb=(0, 0, 255), name="blue"),
        PaletteEntry(rgb=(0, 128, 0), name="green"),
        PaletteEntry(rgb=(255, 165, 0), name="orange"),
        PaletteEntry(rgb=(128, 0, 128), name="purple"),
        PaletteEntry(rgb=(0, 255, 255), name="cyan"),
        PaletteEntry(rgb=(255, 192, 203), name="pink"),
        PaletteEntry(rgb=(47, 79, 79), name="dark slate gray"),
        PaletteEntry(rgb=(0, 255, 0), name="lime"),
        PaletteEntry(rgb=(30, 144, 255), name="dodger blue"),
        PaletteEntry(rgb=(255, 0, 255), name="magenta"),
        PaletteEntry(rgb=(255, 255, 0), name="yellow"),
        PaletteEntry(rgb=(160, 82, 45), name="sienna"),
        PaletteEntry(rgb=(240, 230, 140), name="khaki"),
        PaletteEntry(rgb=(255, 20, 147), name="deep pink"),
        PaletteEntry(rgb=(238, 130, 238), name="violet"),
        PaletteEntry(rgb=(152, 251, 152), name="pale green"),
        PaletteEntry(rgb=(128, 128, 0), name="olive"),
        PaletteEntry(rgb=(173, 216, 230), name="light blue"),
        PaletteEntry(rgb=(138, 43, 226), name="blue violet"),
        PaletteEntry(rgb=(220, 20, 60), name="crimson"),
        PaletteEntry(rgb=(70, 130, 180), name="steel blue"),
        PaletteEntry(rgb=(0, 0, 128), name="navy"),
        PaletteEntry(rgb=(72, 61, 139), name="dark slate blue"),
        PaletteEntry(rgb=(50, 205, 50), name="lime green"),
        PaletteEntry(rgb=(46, 139, 87), name="sea green"),
        PaletteEntry(rgb=(244, 164, 96), name="sandy brown"),
        PaletteEntry(rgb=(219, 112, 147), name="pale violet red"),
        PaletteEntry(rgb=(250, 128, 114), name="salmon"),
        PaletteEntry(rgb=(210, 180, 140), name="tan"),
        PaletteEntry(rgb=(0, 139, 139), name="dark cyan"),
        PaletteEntry(rgb=(221, 160, 221), name="plum"),
    )
)
