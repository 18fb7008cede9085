"""Reading and writing 8-bit grayscale images.

Input formats are PGM (P2 ascii / P5 binary, maxval 255) and, when Pillow is
available, single-channel 8-bit PNG. Output is always binary PGM (P5).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

__all__ = ["GrayImage", "ImageFormatError", "read_image", "write_image"]

_PathLike = Union[str, Path]


class ImageFormatError(ValueError):
    """The file is not an image format this tool accepts."""


@dataclass(frozen=True, eq=False)
class GrayImage:
    """An 8-bit grayscale image: row-major pixels, values in 0..255."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        px = np.asarray(self.pixels)
        if px.ndim != 1:
            px = px.reshape(-1)
        if px.size != self.width * self.height:
            raise ValueError(
                f"pixel count {px.size} does not match {self.width}x{self.height}"
            )
        if px.dtype != np.uint8:
            as_int = px.astype(np.int64)
            if np.any(as_int < 0) or np.any(as_int > 255):
                raise ValueError("pixel values must lie in 0..255")
            px = as_int.astype(np.uint8)
        px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.pixels, other.pixels))
        )

    def rows(self) -> np.ndarray:
        """Pixels as a read-only (height, width) array view."""
        return self.pixels.reshape(self.height, self.width)


def _pgm_tokens(data: bytes):
    """Yield whitespace-separated header tokens, skipping '#' comments.

    Yields (token, end_offset) where end_offset is the index just past the
    single whitespace byte that terminated the token.
    """
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c == b"#":
            j = data.find(b"\n", i)
            i = n if j < 0 else j + 1
            continue
        if c.isspace():
            i += 1
            continue
        j = i
        while j < n and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
            j += 1
        # the raster in P5 begins right after one whitespace byte
        end = j + 1 if j < n and data[j : j + 1].isspace() else j
        yield data[i:j], end
        i = j


def _read_pgm(data: bytes, path: _PathLike) -> GrayImage:
    tokens = _pgm_tokens(data)

    def next_token(what: str) -> tuple[bytes, int]:
        try:
            return next(tokens)
        except StopIteration:
            raise ImageFormatError(f"{path}: truncated PGM header, missing {what}") from None

    magic, _ = next_token("magic")
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"{path}: unsupported PNM magic {magic!r} (only P2/P5)")

    def next_int(what: str) -> tuple[int, int]:
        tok, end = next_token(what)
        try:
            return int(tok), end
        except ValueError:
            raise ImageFormatError(f"{path}: malformed PGM header, bad {what} {tok!r}") from None

    width, _ = next_int("width")
    height, _ = next_int("height")
    maxval, raster_start = next_int("maxval")
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: non-positive PGM dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(
            f"{path}: PGM maxval {maxval} unsupported; only 8-bit images (maxval 255)"
        )

    count = width * height
    if magic == b"P5":
        raster = data[raster_start : raster_start + count]
        if len(raster) < count:
            raise ImageFormatError(f"{path}: P5 raster truncated ({len(raster)} of {count} bytes)")
        px = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        values = []
        for tok, _ in tokens:
            try:
                v = int(tok)
            except ValueError:
                raise ImageFormatError(f"{path}: malformed P2 sample {tok!r}") from None
            if not 0 <= v <= maxval:
                raise ImageFormatError(f"{path}: P2 sample {v} outside 0..{maxval}")
            values.append(v)
            if len(values) == count:
                break
        if len(values) < count:
            raise ImageFormatError(f"{path}: P2 raster truncated ({len(values)} of {count} samples)")
        px = np.asarray(values, dtype=np.uint8)
    return GrayImage(width, height, px)


def _read_png(path: _PathLike) -> GrayImage:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode != "L":
            raise ImageFormatError(
                f"{path}: PNG mode {im.mode!r} unsupported; convert to 8-bit grayscale first"
            )
        px = np.asarray(im, dtype=np.uint8)
        return GrayImage(im.width, im.height, px.reshape(-1))


def read_image(path: _PathLike) -> GrayImage:
    """Read a PGM (P2/P5) or 8-bit grayscale PNG file.

    Pixel values are taken exactly as stored; nothing is rescaled. Raises
    ImageFormatError for anything that is not an 8-bit single-channel image,
    and OSError if the file cannot be read at all.
    """
    with open(path, "rb") as fh:
        head = fh.read(8)
    if head.startswith(b"\x89PNG"):
        return _read_png(path)
    if head[:2] in (b"P2", b"P5"):
        with open(path, "rb") as fh:
            return _read_pgm(fh.read(), path)
    raise ImageFormatError(f"{path}: unrecognized format (expected PGM P2/P5 or PNG)")


def write_image(img: GrayImage, path: _PathLike) -> None:
    """Write img as binary PGM (P5, maxval 255).

    write_image followed by read_image reproduces the image bit-exactly.
    """
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.pixels.tobytes())
