"""Readers for the command-line input formats: signal CSV and PGM images."""

from __future__ import annotations

import numpy as np

from .amplitude import MAX_STATE_SIZE

__all__ = ["ParseError", "parse_signal_csv", "load_pgm", "MAX_IMAGE_SIDE"]

MAX_IMAGE_SIDE = int(np.sqrt(MAX_STATE_SIZE))


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_signal_csv(text: bytes | str) -> np.ndarray:
    """One sample per line, ``re`` or ``re,im``.  Blank and ``#`` lines are skipped."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    samples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) > 2:
            raise ParseError(f"expected 're' or 're,im', got {line!r}", lineno)
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise ParseError(f"non-numeric sample {line!r}", lineno) from None
        if not all(np.isfinite(vals)):
            raise ParseError(f"non-finite sample {line!r}", lineno)
        samples.append(complex(vals[0], vals[1] if len(vals) == 2 else 0.0))
    if not samples:
        raise ValueError("signal has no samples")
    return np.array(samples, dtype=complex)


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise ParseError("truncated PGM header")
        if data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    if pos < n:
        pos += 1
    return tokens, pos


def _center_square(img: np.ndarray) -> np.ndarray:
    h, w = img.shape
    side = min(h, w, MAX_IMAGE_SIDE)
    top = (h - side) // 2
    left = (w - side) // 2
    return img[top : top + side, left : left + side]


def load_pgm(data: bytes) -> np.ndarray:
    """Decode a P2 or P5 PGM and center-crop it to the largest square."""
    tokens, offset = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"unsupported magic number {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise ParseError("non-integer PGM header field") from None
    if width < 1 or height < 1:
        raise ParseError(f"bad image size {width}x{height}")
    if not 0 < maxval <= 65535:
        raise ParseError(f"maxval {maxval} outside 1..65535")
    count = width * height
    if magic == b"P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raw = data[offset : offset + count * dtype.itemsize]
        if len(raw) < count * dtype.itemsize:
            raise ParseError(f"expected {count} pixels, file is truncated")
        pixels = np.frombuffer(raw, dtype=dtype).astype(float)
    else:
        body = data[offset:]
        values = []
        for line in body.splitlines():
            line = line.split(b"#", 1)[0]
            values.extend(line.split())
        if len(values) < count:
            raise ParseError(f"expected {count} pixels, found {len(values)}")
        try:
            pixels = np.array([int(v) for v in values[:count]], dtype=float)
        except ValueError:
            raise ParseError("non-integer pixel value") from None
    if pixels.max(initial=0) > maxval:
        raise ParseError("pixel value exceeds maxval")
    img = pixels.reshape(height, width)
    return _center_square(img).astype(complex)
