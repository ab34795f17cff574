"""File I/O and preprocessing for the pipelines.

Reads PGM (P2/P5), PPM (P3/P6) and 8-bit PNG; writes PGM P5 or PNG with
deterministic bytes.  Loaded images are normalized to [0, 1] and padded
with zeros (or center-cropped) to a power-of-two square of side >= 2.
"""

from __future__ import annotations

import numpy as np

from .encoders import GrayImage, RgbImage
from .errors import InputError, ValidationError

PAD_MODES = ("zero", "crop")
COLOR_MODES = ("luminance", "rgb-angle", "keep")

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _read_pnm_tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    """Read whitespace-separated tokens, skipping '#' comments."""
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise InputError("corrupt PNM header: unexpected end of file")
        if data[pos : pos + 1] == b"#":
            while pos < n and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _parse_pnm(data: bytes) -> tuple[np.ndarray, int]:
    """Return (samples array, maxval); array is (h, w) or (h, w, 3)."""
    (magic,), pos = _read_pnm_tokens(data, 1, 0)
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise InputError(f"unsupported PNM magic {magic!r} (want P2/P3/P5/P6)")
    channels = 3 if magic in (b"P3", b"P6") else 1
    try:
        (w, h, maxval), pos = _read_pnm_tokens(data, 3, pos)
        width, height, maxval = int(w), int(h), int(maxval)
    except (ValueError, InputError) as exc:
        raise InputError(f"corrupt PNM header: {exc}") from exc
    if width <= 0 or height <= 0:
        raise InputError(f"zero-sized image ({width}x{height})")
    if not 1 <= maxval <= 65535:
        raise InputError(f"PNM maxval {maxval} out of range [1, 65535]")
    count = width * height * channels
    if magic in (b"P2", b"P3"):
        try:
            tokens, _ = _read_pnm_tokens(data, count, pos)
            samples = np.array([int(t) for t in tokens], dtype=np.int64)
        except (ValueError, InputError) as exc:
            raise InputError(f"corrupt ASCII PNM data: {exc}") from exc
    else:
        pos += 1  # single whitespace byte after maxval
        bytes_per = 2 if maxval > 255 else 1
        raw = data[pos : pos + count * bytes_per]
        if len(raw) != count * bytes_per:
            raise InputError("binary PNM data truncated")
        dtype = ">u2" if bytes_per == 2 else np.uint8
        samples = np.frombuffer(raw, dtype=dtype).astype(np.int64)
    if np.any(samples > maxval) or np.any(samples < 0):
        raise InputError("PNM sample exceeds declared maxval")
    shape = (height, width, 3) if channels == 3 else (height, width)
    return samples.reshape(shape), maxval


def _load_png(path: str) -> tuple[np.ndarray, int]:
    from PIL import Image

    try:
        with Image.open(path) as im:
            if im.mode not in ("L", "RGB"):
                im = im.convert("RGB" if im.mode in ("RGBA", "P", "CMYK") else "L")
            arr = np.asarray(im, dtype=np.int64)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read PNG {path}: {exc}") from exc
    if arr.size == 0:
        raise InputError("zero-sized image")
    return arr, 255


def _next_pow2(x: int) -> int:
    return 1 << max(x - 1, 1).bit_length()


def _prev_pow2(x: int) -> int:
    return 1 << (x.bit_length() - 1)


def _fit_to_square(arr: np.ndarray, pad: str) -> np.ndarray:
    """Zero-pad (top-left origin) or center-crop to a power-of-two square >= 2."""
    h, w = arr.shape[:2]
    if pad == "zero":
        side = max(2, _next_pow2(max(h, w)))
        out = np.zeros((side, side) + arr.shape[2:], dtype=arr.dtype)
        out[:h, :w] = arr
        return out
    side = _prev_pow2(min(h, w))
    if side < 2:
        raise InputError(f"image {h}x{w} too small to crop to a power-of-two square")
    top = (h - side) // 2
    left = (w - side) // 2
    return arr[top : top + side, left : left + side].copy()


def load_image(path: str, pad: str = "zero", color: str = "luminance"):
    """Load and normalize an image file.

    Color sources collapse to grayscale via Rec.601 luminance, or via the
    base-256 channel packing when ``color="rgb-angle"``; ``color="keep"``
    returns an :class:`RgbImage` with channels rescaled to [0, 255].
    """
    if pad not in PAD_MODES:
        raise ValidationError(f"unknown pad mode {pad!r}")
    if color not in COLOR_MODES:
        raise ValidationError(f"unknown color mode {color!r}")
    try:
        with open(path, "rb") as fh:
            head = fh.read(8)
            rest = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if head.startswith(_PNG_MAGIC):
        arr, maxval = _load_png(path)
    elif head[:1] == b"P":
        arr, maxval = _parse_pnm(head + rest)
    else:
        raise InputError(f"unsupported image format in {path}")
    arr = _fit_to_square(arr, pad)
    if arr.ndim == 2:
        return GrayImage(arr / maxval)
    rgb = np.rint(arr * (255.0 / maxval)).astype(np.int64)
    if color == "keep":
        return RgbImage(rgb)
    if color == "rgb-angle":
        vals = rgb[..., 0] / 256 + rgb[..., 1] / 256**2 + rgb[..., 2] / 256**3
        return GrayImage(vals)
    lum = (0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]) / 255.0
    return GrayImage(np.clip(lum, 0.0, 1.0))


def _write_bytes(path: str, payload: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(payload)


def save_u8(values: np.ndarray, path: str) -> None:
    """Write a (h, w) uint8 array as PGM P5, or PNG if the path says so."""
    if str(path).lower().endswith(".png"):
        from PIL import Image

        Image.fromarray(values, mode="L").save(path, format="PNG")
        return
    h, w = values.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    _write_bytes(path, header + values.tobytes())


def save_gray(img: GrayImage, path: str) -> None:
    """Write intensities as an 8-bit grayscale image."""
    save_u8(np.rint(img.pixels * 255.0).astype(np.uint8), path)


def save_edge_map(edge_map, path: str) -> None:
    """Write an edge map as 255-on-0 grayscale."""
    save_u8((edge_map.bits * np.uint8(255)), path)
