"""Segmented digit-sequence constructions and their growth diagnostics.

A construction spec is an ordered list of segments ``(l_i, x_i, b_i)``: the
digit sequence is ``l_1`` copies of block ``x_1``, then ``l_2`` copies of
``x_2``, and so on, while the base sequence is constant ``b_i`` across
segment ``i``.  Specs support random access to any digit or base entry,
so astronomically long constructions (the scaled families below reach
lengths around 10**12) stay cheap to probe: only the distinct blocks are
ever materialized.

Two enumeration blocks do the heavy lifting:

* ``build_P(b, w)``: every base-(b+1) block of length w in lexicographic
  order, repeated ``(2**b - b)**t`` times where t counts its top digits.
  The repeats make block frequencies match the top-heavy weighting
  ``nu(b)``; the total length is exactly ``w * 2**(b*w)``.
* ``build_C(b, w)``: every base-b block of length w once, in order; total
  length ``w * b**w``.
"""
from __future__ import annotations

import itertools
import json
from bisect import bisect_left
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .blocks import Block, DigitString, count_top_digit, digit_data
from .errors import InvalidSpecError, NeedsMoreDigitsError, NeedsMoreSegmentsError, SizeLimitError
from .limits import resolve_cap
from .weightings import Weighting, check_pb_uniform

_CHUNK = 1 << 20


def build_P(b: int, w: int, cap: int | None = None) -> Block:
    """Weighted enumeration block over base b+1, length ``w * 2**(b*w)``.

    Lists all base-(b+1) blocks of length w lexicographically, repeating a
    block with t top digits ``(2**b - b)**t`` times.
    """
    if not isinstance(b, int) or b < 2:
        raise ValueError(f"b must be an integer >= 2, got {b}")
    if not isinstance(w, int) or w < 1:
        raise ValueError(f"w must be an integer >= 1, got {w}")
    total = w * (1 << (b * w))
    limit = resolve_cap(cap)
    if total > limit:
        raise SizeLimitError(total, limit)
    base = b + 1
    rep = (1 << b) - b
    if base <= 256:
        parts = []
        for tup in itertools.product(range(base), repeat=w):
            parts.append(bytes(tup) * rep ** tup.count(b))
        return Block(base, b"".join(parts))
    out: list[int] = []
    for tup in itertools.product(range(base), repeat=w):
        out.extend(tup * rep ** tup.count(b))
    return Block(base, tuple(out))


def repetition_count(b: int, w: int, block: Block) -> int:
    """How many copies of ``block`` appear consecutively inside build_P(b, w)."""
    if not isinstance(block, Block) or block.base != b + 1:
        raise ValueError(f"expected a base-{b + 1} block")
    if len(block) != w:
        raise ValueError(f"expected a length-{w} block, got length {len(block)}")
    return ((1 << b) - b) ** count_top_digit(block, b)


def build_P_copies(b: int, w: int) -> Iterator[tuple[Block, int]]:
    """Yield (block, copies) pairs making up build_P(b, w), in order."""
    rep = (1 << b) - b
    for tup in itertools.product(range(b + 1), repeat=w):
        yield Block(b + 1, tup), rep ** tup.count(b)


def build_C(b: int, w: int, cap: int | None = None) -> Block:
    """Plain enumeration block: every base-b block of length w once, in order."""
    if not isinstance(b, int) or b < 2:
        raise ValueError(f"b must be an integer >= 2, got {b}")
    if not isinstance(w, int) or w < 1:
        raise ValueError(f"w must be an integer >= 1, got {w}")
    total = w * b**w
    limit = resolve_cap(cap)
    if total > limit:
        raise SizeLimitError(total, limit)
    if b <= 256:
        return Block(b, b"".join(bytes(tup) for tup in itertools.product(range(b), repeat=w)))
    out: list[int] = []
    for tup in itertools.product(range(b), repeat=w):
        out.extend(tup)
    return Block(b, tuple(out))


@dataclass(frozen=True)
class SegmentSpec:
    """One construction segment: ``multiplicity`` copies of ``block``, base ``base``."""

    multiplicity: int
    block: Block
    base: int
    generator: tuple | None = None  # ("P", b, w) or ("C", b, w) if built that way

    def __post_init__(self):
        if not isinstance(self.multiplicity, int) or self.multiplicity < 0:
            raise InvalidSpecError(f"multiplicity must be an integer >= 0, got {self.multiplicity}")
        if not isinstance(self.base, int) or self.base < 2:
            raise InvalidSpecError(f"segment base must be an integer >= 2, got {self.base}")
        if not isinstance(self.block, Block) or len(self.block) == 0:
            raise InvalidSpecError("segment block must be a nonempty Block")
        raw = self.block.digits
        if max(raw) >= self.base:
            raise InvalidSpecError(
                f"segment digits reach {max(raw)}, not valid for base {self.base}"
            )

    @property
    def length(self) -> int:
        return self.multiplicity * len(self.block)


@dataclass(frozen=True)
class ConstructionSpec:
    """Ordered segments defining a base sequence and digit sequence jointly."""

    segments: tuple[SegmentSpec, ...]
    family: str | None = None

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise InvalidSpecError("construction spec needs at least one segment")
        if not all(isinstance(s, SegmentSpec) for s in segs):
            raise InvalidSpecError("segments must be SegmentSpec instances")
        object.__setattr__(self, "segments", segs)

    @cached_property
    def boundaries(self) -> tuple[int, ...]:
        """Cumulative digit counts: boundaries[i] = length through segment i."""
        acc = [0]
        for seg in self.segments:
            acc.append(acc[-1] + seg.length)
        return tuple(acc)

    @property
    def total_length(self) -> int:
        return self.boundaries[-1]

    @cached_property
    def block_lengths_non_decreasing(self) -> bool:
        lens = [len(s.block) for s in self.segments]
        return all(a <= b for a, b in zip(lens, lens[1:]))

    def _check_position(self, n: int) -> None:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"positions are 1-based integers, got {n}")
        if n > self.total_length:
            raise NeedsMoreSegmentsError(n, self.total_length)

    def segment_at(self, n: int) -> int:
        """1-based index of the segment containing digit position n."""
        self._check_position(n)
        return bisect_left(self.boundaries, n)

    def q_at(self, n: int) -> int:
        """Base entry at position n."""
        return self.segments[self.segment_at(n) - 1].base

    def digit_at(self, n: int) -> int:
        """Digit at position n, via modular indexing into the segment block."""
        s = self.segment_at(n)
        seg = self.segments[s - 1]
        return seg.block[(n - self.boundaries[s - 1] - 1) % len(seg.block)]

    def idef_index(self, n: int) -> int:
        """Index i with boundaries[i] < n <= boundaries[i+1] (prefix convention)."""
        self._check_position(n)
        return bisect_left(self.boundaries, n) - 1

    def t0_index(self, n: int) -> int:
        """Index j with boundaries[j-1] < n+1 <= boundaries[j] (successor convention)."""
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"successor convention needs n >= 0, got {n}")
        if n + 1 > self.total_length:
            raise NeedsMoreSegmentsError(n + 1, self.total_length)
        return bisect_left(self.boundaries, n + 1)

    def iter_digit_chunks(self, n_max: int) -> Iterator[bytes | tuple[int, ...]]:
        """Yield the first n_max digits in packed chunks, copy-aligned."""
        if not isinstance(n_max, int) or n_max < 0:
            raise ValueError(f"n_max must be an integer >= 0, got {n_max}")
        if n_max > self.total_length:
            raise NeedsMoreSegmentsError(n_max, self.total_length)
        remaining = n_max
        for seg in self.segments:
            if remaining == 0:
                return
            take = min(remaining, seg.length)
            if take == 0:
                continue
            raw = seg.block.digits
            copies_per_chunk = max(1, _CHUNK // len(raw))
            slab = raw * copies_per_chunk
            emitted = 0
            while emitted < take:
                step = min(len(slab), take - emitted)
                yield slab[:step]
                emitted += step
            remaining -= take

    def iter_digits(self, n_max: int) -> Iterator[int]:
        for chunk in self.iter_digit_chunks(n_max):
            yield from chunk

    def q_runs(self, n_max: int) -> Iterator[tuple[int, int]]:
        """Yield (base, run length) pairs covering the first n_max positions."""
        if not isinstance(n_max, int) or n_max < 0:
            raise ValueError(f"n_max must be an integer >= 0, got {n_max}")
        if n_max > self.total_length:
            raise NeedsMoreSegmentsError(n_max, self.total_length)
        remaining = n_max
        for seg in self.segments:
            if remaining == 0:
                return
            take = min(remaining, seg.length)
            if take:
                yield seg.base, take
                remaining -= take

    def q_product(self, lo: int, hi: int) -> int:
        """Exact product of base entries over positions lo..hi inclusive."""
        if lo > hi:
            return 1
        self._check_position(lo)
        self._check_position(hi)
        product = 1
        s = self.segment_at(lo)
        pos = lo
        while pos <= hi:
            seg_end = self.boundaries[s]
            count = min(hi, seg_end) - pos + 1
            product *= self.segments[s - 1].base ** count
            pos += count
            s += 1
        return product

    def digits_prefix(self, n_max: int, cap: int | None = None) -> DigitString:
        """Materialize the first n_max digits (size-capped)."""
        limit = resolve_cap(cap)
        if n_max > limit:
            raise SizeLimitError(n_max, limit)
        chunks = list(self.iter_digit_chunks(n_max))
        if all(isinstance(c, bytes) for c in chunks):
            return DigitString(b"".join(chunks))
        flat: list[int] = []
        for c in chunks:
            flat.extend(c)
        return DigitString(tuple(flat))

    def to_json(self) -> dict:
        segments = []
        for seg in self.segments:
            if seg.generator is not None:
                gen, gb, gw = seg.generator
                block_obj: dict = {"gen": gen, "b": gb, "w": gw}
            else:
                block_obj = {"gen": "explicit", "digits": list(seg.block)}
            segments.append({"l": seg.multiplicity, "block": block_obj, "base": seg.base})
        out: dict = {"segments": segments}
        if self.family is not None:
            out["family"] = self.family
        return out

    @classmethod
    def from_json(cls, obj: dict, cap: int | None = None) -> "ConstructionSpec":
        try:
            raw_segments = obj["segments"]
        except (TypeError, KeyError) as exc:
            raise InvalidSpecError("construction JSON needs a 'segments' list") from exc
        if not isinstance(raw_segments, list) or not raw_segments:
            raise InvalidSpecError("'segments' must be a nonempty list")
        segments = []
        for idx, raw in enumerate(raw_segments):
            try:
                mult = int(raw["l"])
                base = int(raw["base"])
                block_obj = raw["block"]
                gen = block_obj["gen"]
            except (TypeError, KeyError, ValueError) as exc:
                raise InvalidSpecError(f"segment {idx}: malformed entry") from exc
            if gen == "P":
                gb, gw = int(block_obj["b"]), int(block_obj["w"])
                block = build_P(gb, gw, cap=cap)
                generator: tuple | None = ("P", gb, gw)
            elif gen == "C":
                gb, gw = int(block_obj["b"]), int(block_obj["w"])
                block = build_C(gb, gw, cap=cap)
                generator = ("C", gb, gw)
            elif gen == "explicit":
                digits = block_obj.get("digits")
                if not isinstance(digits, list):
                    raise InvalidSpecError(f"segment {idx}: explicit block needs 'digits'")
                block = Block(base, digits)
                generator = None
            else:
                raise InvalidSpecError(f"segment {idx}: unknown generator {gen!r}")
            segments.append(SegmentSpec(mult, block, base, generator=generator))
        return cls(tuple(segments), family=obj.get("family"))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path, cap: int | None = None) -> "ConstructionSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), cap=cap)


@dataclass(frozen=True)
class SegmentIndices:
    """Both segment-index conventions for a position n."""

    idef: int  # i(n): boundaries[i] < n <= boundaries[i+1]
    t0: int | None  # j(n): boundaries[j-1] < n+1 <= boundaries[j]; None at the very end


def segment_index(spec: ConstructionSpec, n: int) -> SegmentIndices:
    """Evaluate both index conventions at position n, explicitly labeled."""
    idef = spec.idef_index(n)
    try:
        t0 = spec.t0_index(n)
    except NeedsMoreDigitsError:
        t0 = None
    return SegmentIndices(idef=idef, t0=t0)


def assemble(spec: ConstructionSpec, n_max: int, cap: int | None = None) -> tuple[list[int], DigitString]:
    """Materialize the first n_max base entries and digits of a spec."""
    limit = resolve_cap(cap)
    if n_max > limit:
        raise SizeLimitError(n_max, limit)
    digits = spec.digits_prefix(n_max, cap=limit)
    q: list[int] = []
    for base, run in spec.q_runs(n_max):
        q.extend([base] * run)
    return q, digits


# ---------------------------------------------------------------------------
# Scaled construction families.
# ---------------------------------------------------------------------------


def qnex_default_eps(i: int) -> Fraction:
    """Default tolerance schedule for the Q-normal family."""
    if i <= 5:
        return Fraction(10 - i, 10)
    return Fraction(1, i)


def qnex_spec(
    i_min: int = 6,
    i_max: int = 10,
    w_fn: Callable[[int], int] | None = None,
    l_fn: Callable[[int], int] | None = None,
    cap: int | None = None,
) -> ConstructionSpec:
    """Scaled Q-normal-but-orbit-collapsing family.

    Segment i < i_min is empty filler ((0,1) with multiplicity 0) so that
    segment indices keep their meaning; segment i >= i_min holds ``l_fn(i)``
    copies of ``build_P(i, w_fn(i))`` over base ``2**i``.  The defaults
    (w=2, l=2**(2i), i in [6, 10]) give a total length around 2.3 * 10**12,
    fine for random access though far beyond materialization.

    Asking for the unscaled parameters (w_fn(i) = i*i, l_fn(i) = 2**(4*i*i))
    raises a size-limit error: the very first block would need
    36 * 2**216 digits.
    """
    if not isinstance(i_min, int) or i_min < 6:
        raise InvalidSpecError(f"i_min must be an integer >= 6, got {i_min}")
    if not isinstance(i_max, int) or i_max < i_min:
        raise InvalidSpecError(f"i_max must be >= i_min, got {i_max}")
    w_fn = w_fn or (lambda i: 2)
    l_fn = l_fn or (lambda i: 2 ** (2 * i))
    filler = Block(2, (0, 1))
    segments = [SegmentSpec(0, filler, 2) for _ in range(1, i_min)]
    for i in range(i_min, i_max + 1):
        w = w_fn(i)
        block = build_P(i, w, cap=cap)
        segments.append(SegmentSpec(l_fn(i), block, 2**i, generator=("P", i, w)))
    return ConstructionSpec(tuple(segments), family="qnex-scaled")


def qde_default_eps(i: int) -> Fraction:
    """Default tolerance schedule for the distribution-normal family."""
    if i == 1:
        return Fraction(3, 5)
    return Fraction(1, i)


def qde_spec(
    i_min: int = 2,
    i_max: int = 12,
    w_fn: Callable[[int], int] | None = None,
    l_fn: Callable[[int], int] | None = None,
    cap: int | None = None,
) -> ConstructionSpec:
    """Scaled family that is normal in both senses.

    Segment 1 is empty filler; segment i >= i_min holds ``l_fn(i)`` copies
    of ``build_C(i, w_fn(i))`` over base i.  Defaults: w=2, l=i**3,
    i in [2, 12], total length 1,261,414 digits.  The unscaled parameters
    (w_fn(i) = i*i, l_fn(i) = i**(3*i)) hit the size cap immediately.
    """
    if not isinstance(i_min, int) or i_min < 2:
        raise InvalidSpecError(f"i_min must be an integer >= 2, got {i_min}")
    if not isinstance(i_max, int) or i_max < i_min:
        raise InvalidSpecError(f"i_max must be >= i_min, got {i_max}")
    w_fn = w_fn or (lambda i: 2)
    l_fn = l_fn or (lambda i: i**3)
    filler = Block(2, (0, 1))
    segments = [SegmentSpec(0, filler, 2)]
    for i in range(2, i_min):
        segments.append(SegmentSpec(0, filler, i))
    for i in range(i_min, i_max + 1):
        w = w_fn(i)
        block = build_C(i, w, cap=cap)
        segments.append(SegmentSpec(l_fn(i), block, i, generator=("C", i, w)))
    return ConstructionSpec(tuple(segments), family="qde-scaled")


def salat_counterexample_spec(n_max: int) -> tuple[list[int], DigitString]:
    """Base and digit prefixes of the classic one-direction-only witness.

    Row m contributes digits 1, 2, ..., m with base entry m+1 throughout;
    rows are emitted in order and truncated at n_max entries.  The digit 0
    never occurs, yet the scaled digits d/(m+1) equidistribute.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError(f"n_max must be an integer >= 1, got {n_max}")
    q: list[int] = []
    digits: list[int] = []
    m = 1
    while len(digits) < n_max:
        take = min(m, n_max - len(digits))
        digits.extend(range(1, take + 1))
        q.extend([m + 1] * take)
        m += 1
    return q, DigitString(tuple(digits))


# ---------------------------------------------------------------------------
# Growth-condition diagnostics (finite-horizon ratio tables, never verdicts:
# little-o conditions are not decidable from finitely many terms).
# ---------------------------------------------------------------------------


def _as_length(x) -> int:
    if isinstance(x, int):
        if x < 1:
            raise ValueError(f"block lengths must be >= 1, got {x}")
        return x
    return len(digit_data(x))


def _non_decreasing(xs) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


def _strictly_decreasing(xs) -> bool:
    return all(a > b for a, b in zip(xs, xs[1:]))


@dataclass(frozen=True)
class BffSpec:
    """Finite window of a block-frequency construction frame.

    Sequences are indexed i = start, start+1, ...; multiplicities l and
    parameters b, p, k must be non-decreasing, tolerances eps strictly
    decreasing in (0, 1), and each weighting (p_i, b_i)-uniform (checked
    at small block lengths).
    """

    start: int
    l: tuple[int, ...]
    b: tuple[int, ...]
    p: tuple[int, ...]
    eps: tuple[Fraction, ...]
    k: tuple[int, ...]
    mu: tuple[Weighting, ...]

    def __post_init__(self):
        n = len(self.l)
        if n == 0:
            raise InvalidSpecError("frame needs at least one index")
        for name in ("b", "p", "eps", "k", "mu"):
            if len(getattr(self, name)) != n:
                raise InvalidSpecError(f"sequence {name} has wrong length")
        object.__setattr__(self, "eps", tuple(Fraction(e) for e in self.eps))
        if any(x < 0 for x in self.l) or not _non_decreasing(self.l):
            raise InvalidSpecError("multiplicities must be >= 0 and non-decreasing")
        if any(x < 2 for x in self.b) or not _non_decreasing(self.b):
            raise InvalidSpecError("bases must be >= 2 and non-decreasing")
        if any(x < 1 for x in self.p) or not _non_decreasing(self.p):
            raise InvalidSpecError("p parameters must be >= 1 and non-decreasing")
        if any(x < 0 for x in self.k) or not _non_decreasing(self.k):
            raise InvalidSpecError("k parameters must be >= 0 and non-decreasing")
        if not all(0 < e < 1 for e in self.eps) or not _strictly_decreasing(self.eps):
            raise InvalidSpecError("tolerances must lie in (0,1) and strictly decrease")
        for i, (mu_i, p_i, b_i) in enumerate(zip(self.mu, self.p, self.b)):
            if not check_pb_uniform(mu_i, p_i, b_i, k_max=2):
                raise InvalidSpecError(f"weighting at index {self.start + i} is not (p, b)-uniform")

    @property
    def indices(self) -> range:
        return range(self.start, self.start + len(self.l))

    def pos(self, i: int) -> int:
        if i not in self.indices:
            raise ValueError(f"index {i} outside frame range {self.indices}")
        return i - self.start


@dataclass(frozen=True)
class MffSpec:
    """Finite window of a plain (multiplicity, base, tolerance) frame."""

    start: int
    l: tuple[int, ...]
    b: tuple[int, ...]
    eps: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.l)
        if n == 0:
            raise InvalidSpecError("frame needs at least one index")
        if len(self.b) != n or len(self.eps) != n:
            raise InvalidSpecError("sequence lengths disagree")
        object.__setattr__(self, "eps", tuple(Fraction(e) for e in self.eps))
        if any(x < 0 for x in self.l) or not _non_decreasing(self.l):
            raise InvalidSpecError("multiplicities must be >= 0 and non-decreasing")
        if any(x < 2 for x in self.b) or not _non_decreasing(self.b):
            raise InvalidSpecError("bases must be >= 2 and non-decreasing")
        if not all(0 < e < 1 for e in self.eps) or not _strictly_decreasing(self.eps):
            raise InvalidSpecError("tolerances must lie in (0,1) and strictly decrease")

    @property
    def indices(self) -> range:
        return range(self.start, self.start + len(self.l))

    def pos(self, i: int) -> int:
        if i not in self.indices:
            raise ValueError(f"index {i} outside frame range {self.indices}")
        return i - self.start


@dataclass(frozen=True)
class DiagnosticsRow:
    i: int
    ratios: tuple[Fraction | None, ...]


@dataclass(frozen=True)
class DiagnosticsTable:
    """Exact ratio trajectories with per-column monotone-trend flags.

    ``trends[name]`` is True/False for strictly-decreasing over the defined
    entries, or None when fewer than two entries are defined.  No verdicts:
    a finite table cannot certify a limit.
    """

    names: tuple[str, ...]
    rows: tuple[DiagnosticsRow, ...]
    trends: dict[str, bool | None]

    def column(self, name: str) -> list[Fraction | None]:
        j = self.names.index(name)
        return [row.ratios[j] for row in self.rows]

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "rows": [
                {
                    "i": row.i,
                    **{
                        name: (None if r is None else str(r))
                        for name, r in zip(self.names, row.ratios)
                    },
                }
                for row in self.rows
            ],
            "trends": dict(self.trends),
        }


def _make_table(names: tuple[str, ...], rows: list[DiagnosticsRow]) -> DiagnosticsTable:
    trends: dict[str, bool | None] = {}
    for j, name in enumerate(names):
        defined = [row.ratios[j] for row in rows if row.ratios[j] is not None]
        trends[name] = _strictly_decreasing(defined) if len(defined) >= 2 else None
    return DiagnosticsTable(names, tuple(rows), trends)


def bff_good_diagnostics(frame: BffSpec, lengths, k: int, i_range=None) -> DiagnosticsTable:
    """Exact ratio table for the three sufficiency conditions of the frame.

    ``lengths`` aligns block lengths (ints, or Blocks to take len of) with
    the frame's index range; ``k`` >= 0 is the block length the conditions
    are probed at (k = 0 is allowed: the ratios stay well-defined even
    though length-0 normality itself is never evaluated).  Ratios:

        r1 = b_i**k / ((eps_{i-1} - eps_i) * len_i)        -> small means good
        r2 = (l_{i-1}*len_{i-1}) / (l_i*len_i) * i * b_i**k
        r3 = (len_{i+1} / (l_i*len_i)) * b_i**k

    An entry is None when its neighbors fall outside the frame or a
    denominator vanishes.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be an integer >= 0, got {k}")
    lens = tuple(_as_length(x) for x in lengths)
    if len(lens) != len(frame.l):
        raise ValueError("lengths must align with the frame's index range")
    idx = list(frame.indices) if i_range is None else list(i_range)
    rows = []
    for i in idx:
        t = frame.pos(i)
        bk = frame.b[t] ** k
        r1 = r2 = r3 = None
        if t >= 1:
            gap = frame.eps[t - 1] - frame.eps[t]
            if gap > 0:
                r1 = Fraction(bk) / (gap * lens[t])
            if frame.l[t] * lens[t] > 0:
                r2 = Fraction(frame.l[t - 1] * lens[t - 1], frame.l[t] * lens[t]) * i * bk
        if t + 1 < len(lens) and frame.l[t] > 0:
            r3 = Fraction(lens[t + 1], frame.l[t] * lens[t]) * bk
        rows.append(DiagnosticsRow(i, (r1, r2, r3)))
    return _make_table(("r1", "r2", "r3"), rows)


def mff_nice_diagnostics(frame: MffSpec, lengths, i_range=None) -> DiagnosticsTable:
    """Exact ratio table for the two sufficiency conditions of a plain frame.

        n1 = (l_{i-1}*len_{i-1}) / (l_i*len_i) * i          (wants o(1/i) * i)
        n2 = len_{i+1} / (l_i*len_i)                         (wants o(1))
    """
    lens = tuple(_as_length(x) for x in lengths)
    if len(lens) != len(frame.l):
        raise ValueError("lengths must align with the frame's index range")
    idx = list(frame.indices) if i_range is None else list(i_range)
    rows = []
    for i in idx:
        t = frame.pos(i)
        n1 = n2 = None
        if t >= 1 and frame.l[t] * lens[t] > 0:
            n1 = Fraction(frame.l[t - 1] * lens[t - 1], frame.l[t] * lens[t]) * i
        if t + 1 < len(lens) and frame.l[t] > 0:
            n2 = Fraction(lens[t + 1], frame.l[t] * lens[t])
        rows.append(DiagnosticsRow(i, (n1, n2)))
    return _make_table(("n1", "n2"), rows)


def qnex_frame(
    i_min: int = 6,
    i_max: int = 10,
    w_fn: Callable[[int], int] | None = None,
    l_fn: Callable[[int], int] | None = None,
    eps_fn: Callable[[int], Fraction] | None = None,
) -> tuple[BffSpec, tuple[int, ...]]:
    """Frame and block lengths matching qnex_spec's parameters, for diagnostics."""
    from .weightings import nu, uniform  # local to avoid import cycle at module load

    if i_min < 6:
        raise InvalidSpecError(f"i_min must be >= 6, got {i_min}")
    w_fn = w_fn or (lambda i: 2)
    l_fn = l_fn or (lambda i: 2 ** (2 * i))
    eps_fn = eps_fn or qnex_default_eps
    l, b, p, eps, kk, mu, lens = [], [], [], [], [], [], []
    for i in range(1, i_max + 1):
        if i < i_min:
            l.append(0), b.append(2), p.append(2), kk.append(1), mu.append(uniform(2))
            lens.append(2)
        else:
            l.append(l_fn(i)), b.append(2**i), p.append(i), kk.append(i), mu.append(nu(i))
            lens.append(w_fn(i) * 2 ** (i * w_fn(i)))
        eps.append(eps_fn(i))
    return (
        BffSpec(1, tuple(l), tuple(b), tuple(p), tuple(eps), tuple(kk), tuple(mu)),
        tuple(lens),
    )


def qde_frame(
    i_min: int = 2,
    i_max: int = 12,
    w_fn: Callable[[int], int] | None = None,
    l_fn: Callable[[int], int] | None = None,
    eps_fn: Callable[[int], Fraction] | None = None,
) -> tuple[MffSpec, tuple[int, ...]]:
    """Frame and block lengths matching qde_spec's parameters, for diagnostics."""
    if i_min < 2:
        raise InvalidSpecError(f"i_min must be >= 2, got {i_min}")
    w_fn = w_fn or (lambda i: 2)
    l_fn = l_fn or (lambda i: i**3)
    eps_fn = eps_fn or qde_default_eps
    l, b, eps, lens = [], [], [], []
    for i in range(1, i_max + 1):
        if i == 1:
            l.append(0), b.append(2), lens.append(2)
        elif i < i_min:
            l.append(0), b.append(i), lens.append(2)
        else:
            l.append(l_fn(i)), b.append(i), lens.append(w_fn(i) * i ** w_fn(i))
        eps.append(eps_fn(i))
    return MffSpec(1, tuple(l), tuple(b), tuple(eps)), tuple(lens)
