"""Digit weightings and block-frequency normality checks.

A weighting assigns each digit a non-negative rational mass summing to 1,
extended to blocks multiplicatively.  Two families matter here:

* ``uniform(b)``: every digit below ``b`` gets mass ``1/b``.
* ``nu(b)``: digits ``0..b-1`` get mass ``1/2**b`` each and the top digit
  ``b`` soaks up the rest, ``(2**b - b)/2**b``.  This skewed family is
  exactly ``(b, 2**b)``-uniform: restricted to digits below ``b`` it looks
  like the uniform weighting of the much larger base ``2**b``.

All verdicts are computed in exact rational arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .blocks import digit_data, tally_blocks
from .errors import SizeLimitError
from .limits import resolve_cap

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Weighting:
    """Digit weighting with multiplicative extension to blocks.

    ``kind`` is one of ``"uniform"``, ``"nu"``, ``"table"``.  For the table
    kind, ``table[j]`` is the mass of digit ``j`` (digits past the table get
    mass zero); tables are allowed to be unnormalized so that consistency
    checks have something to catch.
    """

    kind: str
    b: int
    table: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "nu", "table"):
            raise ValueError(f"unknown weighting kind {self.kind!r}")
        if self.kind in ("uniform", "nu") and (not isinstance(self.b, int) or self.b < 2):
            raise ValueError(f"weighting base must be an integer >= 2, got {self.b}")
        if self.kind == "table":
            if not self.table:
                raise ValueError("table weighting needs a nonempty table")
            tab = tuple(Fraction(x) for x in self.table)
            if any(x < 0 for x in tab):
                raise ValueError("table weights must be non-negative")
            object.__setattr__(self, "table", tab)

    @property
    def support_bound(self) -> int:
        """Largest digit carrying nonzero mass."""
        if self.kind == "uniform":
            return self.b - 1
        if self.kind == "nu":
            return self.b
        assert self.table is not None
        for j in range(len(self.table) - 1, -1, -1):
            if self.table[j] != 0:
                return j
        return 0

    def digit_weight(self, j: int) -> Fraction:
        if j < 0:
            raise ValueError(f"digits are non-negative, got {j}")
        if self.kind == "uniform":
            return Fraction(1, self.b) if j < self.b else _ZERO
        if self.kind == "nu":
            if j < self.b:
                return Fraction(1, 2**self.b)
            if j == self.b:
                return Fraction(2**self.b - self.b, 2**self.b)
            return _ZERO
        assert self.table is not None
        return self.table[j] if j < len(self.table) else _ZERO

    def weight(self, block) -> Fraction:
        """Mass of a block: the product of its digit masses (1 for empty)."""
        total = _ONE
        for d in digit_data(block):
            w = self.digit_weight(d)
            if w == 0:
                return _ZERO
            total *= w
        return total

    def to_token(self) -> str:
        if self.kind == "table":
            raise ValueError("table weightings have no CLI token")
        return f"{self.kind}:{self.b}"


def uniform(b: int) -> Weighting:
    """Uniform weighting: mass 1/b on each digit 0..b-1."""
    return Weighting(kind="uniform", b=b)


def nu(b: int) -> Weighting:
    """Top-heavy weighting: 1/2**b on digits 0..b-1, the rest on digit b."""
    return Weighting(kind="nu", b=b)


def table_weighting(weights) -> Weighting:
    """Explicit digit-mass table, validated to sum to exactly 1."""
    tab = tuple(Fraction(x) for x in weights)
    if sum(tab, _ZERO) != 1:
        raise ValueError(f"table masses must sum to 1, got {sum(tab, _ZERO)}")
    return Weighting(kind="table", b=len(tab), table=tab)


def parse_weighting(token: str) -> Weighting:
    """Parse a CLI token like ``uniform:10`` or ``nu:6``."""
    try:
        kind, _, b = token.partition(":")
        return {"uniform": uniform, "nu": nu}[kind](int(b))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad weighting token {token!r}; expected uniform:B or nu:B") from exc


def weight_eval(mu: Weighting, block) -> Fraction:
    """Exact mass the weighting assigns to a block."""
    return mu.weight(block)


def check_consistency(mu: Weighting, k: int, block) -> bool:
    """Does the block's mass equal the total mass of its one-digit extensions?

    Checks mu(B) == sum_j mu(B + (j,)) with j running over the support.
    For a properly normalized weighting this is an identity; a corrupted
    digit table breaks it on any block of nonzero mass.
    """
    digits = tuple(digit_data(block))
    if len(digits) != k:
        raise ValueError(f"block has length {len(digits)}, expected k={k}")
    base_mass = mu.weight(digits)
    extended = sum(
        (mu.weight(digits + (j,)) for j in range(mu.support_bound + 1)),
        _ZERO,
    )
    return base_mass == extended


def check_pb_uniform(mu: Weighting, p: int, b: int, k_max: int, cap: int | None = None) -> bool:
    """Is ``mu`` (p, b)-uniform up to block length ``k_max``?

    True iff every block over digits 0..p-1 of each length k <= k_max has
    mass exactly b**-k.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be an integer >= 1, got {p}")
    if not isinstance(b, int) or b < 1:
        raise ValueError(f"b must be an integer >= 1, got {b}")
    if not isinstance(k_max, int) or k_max < 1:
        raise ValueError(f"k_max must be an integer >= 1, got {k_max}")
    limit = resolve_cap(cap)
    for k in range(1, k_max + 1):
        if p**k > limit:
            raise SizeLimitError(p**k, limit, what="enumerated blocks")
        target = Fraction(1, b**k)
        for tup in itertools.product(range(p), repeat=k):
            if mu.weight(tup) != target:
                return False
    return True


@dataclass(frozen=True)
class NormalityWitness:
    """First block whose count left the allowed band."""

    block: tuple[int, ...]
    observed: int
    lower: Fraction
    upper: Fraction

    def to_json(self) -> dict:
        return {
            "block": list(self.block),
            "observed": self.observed,
            "lower": str(self.lower),
            "upper": str(self.upper),
        }


@dataclass(frozen=True)
class NormalityVerdict:
    """Outcome of a block-frequency normality check."""

    passed: bool
    length: int
    eps: Fraction
    k: int
    witness: NormalityWitness | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "length": self.length,
            "eps": str(self.eps),
            "k": self.k,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def check_eps_k_normal(y, eps, k: int, mu: Weighting, cap: int | None = None) -> NormalityVerdict:
    """Check that every short block occurs in ``y`` about as often as ``mu`` says.

    Passes iff for every length m <= k and every block B over digits
    0..max(support bound, max digit of y):

        mu(B) * len(y) * (1 - eps)  <=  N(B, y)  <=  mu(B) * len(y) * (1 + eps)

    with N counting overlapping occurrences, compared in exact rationals.
    The first violation (shortest length, then lexicographic) is returned
    as a witness.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError(f"eps must satisfy 0 < eps < 1, got {eps}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k}")
    raw = digit_data(y)
    n = len(raw)
    if n == 0:
        raise ValueError("normality check needs a nonempty digit string")
    alphabet = max(mu.support_bound, max(raw)) + 1
    limit = resolve_cap(cap)
    if alphabet**k > limit:
        raise SizeLimitError(alphabet**k, limit, what="enumerated blocks")
    for m in range(1, k + 1):
        tallies = tally_blocks(raw, m, alphabet_size=alphabet) if n >= m else {}
        for tup in itertools.product(range(alphabet), repeat=m):
            mass = mu.weight(tup)
            lower = mass * n * (1 - eps)
            upper = mass * n * (1 + eps)
            observed = tallies.get(tup, 0)
            if not (lower <= observed <= upper):
                witness = NormalityWitness(tup, observed, lower, upper)
                return NormalityVerdict(False, n, eps, k, witness)
    return NormalityVerdict(True, n, eps, k)
