"""Digit blocks and digit strings: construction, counting, enumeration, file IO.

A block is a finite string of digits drawn from ``{0, ..., base-1}``; a digit
string is a finite string of non-negative integers with no base attached.
Occurrence counting is always overlapping, with 1-based start positions.

Digits are arbitrary-precision integers at the API boundary.  Internally a
digit sequence is packed as ``bytes`` whenever every digit fits in one byte,
which keeps multi-megabyte blocks cheap and lets the counting routines use
C-speed scans; anything larger falls back to a tuple of ints.
"""
from __future__ import annotations

import itertools
import struct
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpecError, NeedsMoreDigitsError, SizeLimitError
from .limits import resolve_cap

_TALLY_CHUNK = 1 << 22


def _pack_digits(digits) -> bytes | tuple[int, ...]:
    """Canonicalize a digit sequence: bytes iff every digit fits in a byte."""
    if isinstance(digits, bytes):
        return digits
    if isinstance(digits, bytearray):
        return bytes(digits)
    packed = tuple(int(d) for d in digits)
    for d in packed:
        if d < 0:
            raise ValueError(f"digits must be non-negative, got {d}")
    if packed and max(packed) <= 0xFF:
        return bytes(packed)
    if not packed:
        return b""
    return packed


def digit_data(x) -> bytes | tuple[int, ...]:
    """Raw packed digit sequence behind a Block/DigitString/plain sequence."""
    if isinstance(x, (Block, DigitString)):
        return x.digits
    return _pack_digits(x)


@dataclass(frozen=True)
class DigitString:
    """Immutable string of non-negative integer digits, no base attached."""

    digits: bytes | tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", _pack_digits(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return DigitString(self.digits[idx])
        return self.digits[idx]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.digits)


@dataclass(frozen=True)
class Block:
    """A digit string over ``{0, ..., base-1}`` for a fixed base >= 2."""

    base: int
    digits: bytes | tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise ValueError(f"block base must be an integer >= 2, got {self.base}")
        packed = _pack_digits(self.digits)
        if len(packed) > 0 and max(packed) >= self.base:
            raise ValueError(
                f"digit {max(packed)} out of range for base {self.base}"
            )
        object.__setattr__(self, "digits", packed)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Block(self.base, self.digits[idx])
        return self.digits[idx]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.digits)

    def to_json(self) -> dict:
        return {"digits": list(self.digits), "base": self.base}

    @classmethod
    def from_json(cls, obj: dict) -> "Block":
        return cls(base=int(obj["base"]), digits=obj["digits"])


@dataclass(frozen=True)
class ConcatSpec:
    """Concatenation recipe: ordered (multiplicity, block) parts.

    Multiplicities are >= 0 and at least one must be positive.
    """

    parts: tuple[tuple[int, Block], ...]

    def __post_init__(self):
        parts = tuple((int(m), b) for m, b in self.parts)
        for m, b in parts:
            if m < 0:
                raise InvalidSpecError(f"multiplicity must be >= 0, got {m}")
            if not isinstance(b, (Block, DigitString)):
                raise InvalidSpecError("concat parts must pair an int with a Block")
        if not any(m > 0 for m, _ in parts):
            raise InvalidSpecError("at least one multiplicity must be positive")
        object.__setattr__(self, "parts", parts)


def concat(spec) -> DigitString:
    """Concatenate blocks with multiplicities: m1*B1 then m2*B2, etc.

    ``spec`` is a ConcatSpec or a sequence of (multiplicity, block) pairs.
    Zero multiplicities contribute nothing; all-zero spec is rejected.
    """
    if not isinstance(spec, ConcatSpec):
        spec = ConcatSpec(tuple(spec))
    raws = []
    for mult, blk in spec.parts:
        if mult == 0:
            continue
        raws.append((mult, digit_data(blk)))
    if all(isinstance(r, bytes) for _, r in raws):
        return DigitString(b"".join(r * m for m, r in raws))
    out: list[int] = []
    for mult, raw in raws:
        out.extend(tuple(raw) * mult)
    return DigitString(tuple(out))


def count_occurrences(block, text) -> int:
    """Number of (overlapping) occurrences of ``block`` inside ``text``."""
    pat = digit_data(block)
    hay = digit_data(text)
    k = len(pat)
    if k == 0:
        raise ValueError("occurrence counting needs a nonempty block")
    if k > len(hay):
        return 0
    if isinstance(hay, bytes):
        if not isinstance(pat, bytes):
            return 0  # some pattern digit exceeds every text digit
        count = 0
        start = 0
        while True:
            idx = hay.find(pat, start)
            if idx < 0:
                return count
            count += 1
            start = idx + 1
    patt = tuple(pat)
    hayt = tuple(hay)
    return sum(1 for i in range(len(hayt) - k + 1) if hayt[i : i + k] == patt)


def count_prefix_occurrences(block, text, n: int) -> int:
    """Occurrences of ``block`` starting at positions 1..n of ``text``.

    Equals counting over the prefix of length n + len(block) - 1; raises
    NeedsMoreDigitsError when the text is shorter than that.
    """
    pat = digit_data(block)
    hay = digit_data(text)
    k = len(pat)
    if k == 0:
        raise ValueError("occurrence counting needs a nonempty block")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"position bound must be an integer >= 1, got {n}")
    required = n + k - 1
    if len(hay) < required:
        raise NeedsMoreDigitsError(required, available=len(hay))
    return count_occurrences(pat, hay[:required])


def count_top_digit(block, b: int) -> int:
    """How many digits of ``block`` equal ``b`` (the top digit of base b+1)."""
    if not isinstance(b, int) or b < 1:
        raise ValueError(f"top digit must be an integer >= 1, got {b}")
    raw = digit_data(block)
    if len(raw) > 0 and max(raw) > b:
        raise ValueError(f"digit {max(raw)} exceeds top digit {b}")
    if isinstance(raw, bytes) and b <= 0xFF:
        return raw.count(b)
    return sum(1 for d in raw if d == b)


def enumerate_blocks(base: int, length: int, cap: int | None = None) -> Iterator[Block]:
    """Yield every base-``base`` block of ``length`` digits in lexicographic order."""
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base}")
    if not isinstance(length, int) or length < 0:
        raise ValueError(f"length must be an integer >= 0, got {length}")
    total = base**length
    limit = resolve_cap(cap)
    if total > limit:
        raise SizeLimitError(total, limit, what="enumerated blocks")
    for tup in itertools.product(range(base), repeat=length):
        yield Block(base, tup)


def count_straddling(block, left, right) -> int:
    """Occurrences of ``block`` split across the boundary ``left | right``.

    Counts split indices s in [2, len(block)] where the first s-1 digits are
    a suffix of ``left`` and the rest are a prefix of ``right``.  A length-1
    block can never straddle.
    """
    b = tuple(digit_data(block))
    c = tuple(digit_data(left))
    d = tuple(digit_data(right))
    k = len(b)
    if k == 0:
        raise ValueError("straddle counting needs a nonempty block")
    total = 0
    for s in range(2, k + 1):
        head, tail = b[: s - 1], b[s - 1 :]
        if len(head) > len(c) or len(tail) > len(d):
            continue
        if c[len(c) - len(head) :] == head and d[: len(tail)] == tail:
            total += 1
    return total


def tally_blocks(text, length: int, alphabet_size: int | None = None) -> dict[tuple[int, ...], int]:
    """Exact counts of every length-``length`` window occurring in ``text``.

    Returns a dict keyed by digit tuples; absent keys mean count zero.
    Byte-packed input with window length 1 or 2 takes a vectorized path,
    so multi-megadigit scans stay fast; counts are exact integers either way.
    """
    if not isinstance(length, int) or length < 1:
        raise ValueError(f"window length must be an integer >= 1, got {length}")
    seq = digit_data(text)
    n = len(seq)
    if n < length:
        return {}
    if isinstance(seq, bytes) and length <= 2:
        alpha = max(seq) + 1
        if alphabet_size is not None:
            alpha = max(alpha, int(alphabet_size))
        if length == 1:
            counts = np.zeros(alpha, dtype=np.int64)
            for lo in range(0, n, _TALLY_CHUNK):
                arr = np.frombuffer(seq[lo : lo + _TALLY_CHUNK], dtype=np.uint8)
                counts += np.bincount(arr, minlength=alpha)
            return {(d,): int(c) for d, c in enumerate(counts) if c}
        counts = np.zeros(alpha * alpha, dtype=np.int64)
        for lo in range(0, n - 1, _TALLY_CHUNK):
            arr = np.frombuffer(seq[lo : lo + _TALLY_CHUNK + 1], dtype=np.uint8)
            codes = arr[:-1].astype(np.int64) * alpha + arr[1:]
            counts += np.bincount(codes, minlength=alpha * alpha)
        return {
            (code // alpha, code % alpha): int(c)
            for code, c in enumerate(counts)
            if c
        }
    seqt = tuple(seq)
    if length == 2:
        pairs = Counter(zip(seqt, seqt[1:]))
        return {pair: cnt for pair, cnt in pairs.items()}
    windows = Counter(seqt[i : i + length] for i in range(n - length + 1))
    return dict(windows)


# ---------------------------------------------------------------------------
# Binary digit files: 8-byte little-endian count, then unsigned LEB128 digits.
# ---------------------------------------------------------------------------


def _leb128_encode(value: int, out: bytearray) -> None:
    while value >= 0x80:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    out.append(value)


def write_digit_file(path, digits, count: int | None = None) -> int:
    """Write digits to ``path`` in the length-prefixed binary format.

    ``digits`` may be a Block/DigitString/sequence, or any iterable when
    ``count`` is given.  Returns the number of digits written.
    """
    if count is None:
        try:
            count = len(digits)  # type: ignore[arg-type]
        except TypeError as exc:
            raise ValueError("count is required for sizeless digit iterables") from exc
    count = int(count)
    if count < 0:
        raise ValueError(f"digit count must be >= 0, got {count}")
    if isinstance(digits, (Block, DigitString)):
        digits = digits.digits
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", count))
        if isinstance(digits, (bytes, bytearray)) and (
            len(digits) == 0 or max(digits) < 0x80
        ):
            # every digit < 128 encodes as itself
            if len(digits) != count:
                raise ValueError(f"count {count} does not match {len(digits)} digits")
            fh.write(bytes(digits))
            return count
        buf = bytearray()
        written = 0
        for d in itertools.islice(iter(digits), count):
            d = int(d)
            if d < 0:
                raise ValueError(f"digits must be non-negative, got {d}")
            _leb128_encode(d, buf)
            written += 1
            if len(buf) >= _TALLY_CHUNK:
                fh.write(buf)
                buf.clear()
        fh.write(buf)
    if written != count:
        raise ValueError(f"iterable yielded {written} digits, expected {count}")
    return count


def read_digit_file(path) -> DigitString:
    """Read a digit file written by :func:`write_digit_file`."""
    with open(path, "rb") as fh:
        header = fh.read(8)
        if len(header) != 8:
            raise ValueError(f"{path}: truncated header")
        (count,) = struct.unpack("<Q", header)
        payload = fh.read()
    if len(payload) == count and (count == 0 or max(payload) < 0x80):
        return DigitString(payload)
    digits: list[int] = []
    value = 0
    shift = 0
    for byte in payload:
        value |= (byte & 0x7F) << shift
        if byte & 0x80:
            shift += 7
        else:
            digits.append(value)
            value = 0
            shift = 0
    if shift != 0:
        raise ValueError(f"{path}: dangling LEB128 continuation")
    if len(digits) != count:
        raise ValueError(f"{path}: header says {count} digits, file holds {len(digits)}")
    return DigitString(tuple(digits))
