"""Executable checks binding each combinatorial claim to a certificate.

Every verifier runs an exhaustive or checkpointed computation in exact
arithmetic and returns a Certificate: claim id, parameters, pass/fail, a
re-checkable counterexample on failure, and supporting details.  A failed
certificate always carries enough structure to reproduce the failure
by hand.

Certificates are deterministic: the canonical JSON form excludes the
wall-clock runtime (kept on the object for sidecar metadata), so identical
inputs yield byte-identical canonical output.

Claims never assert limits.  Scaled-family checks pin down finite-horizon
inequalities that the limiting arguments rest on; growth-rate trends are
reported, not judged.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import constructions as _constructions
from .blocks import tally_blocks
from .cantor import CantorExpansion, orbit_point, scaled_value_counts
from .constructions import (
    ConstructionSpec,
    build_P,
    build_P_copies,
    qde_default_eps,
    qde_spec,
    qnex_spec,
)
from .discrepancy import (
    PrefixWeights,
    boundf_hypotheses,
    e1l_bound,
    epsbar,
    star_discrepancy,
    star_discrepancy_from_counts,
)
from .errors import InvalidSpecError, NeedsMoreDigitsError
from .weightings import check_eps_k_normal, nu


def _jsonable(value):
    """Recursively convert to canonical JSON-safe data (Fractions to 'p/q')."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bytes):
        return list(value)
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    return str(value)


@dataclass
class Certificate:
    """Machine-checkable outcome of one verification run."""

    claim: str
    params: dict
    passed: bool
    checked: int
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)
    runtime_seconds: float | None = None

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failed certificate must carry a counterexample")

    def to_json(self) -> dict:
        # canonical form: runtime deliberately excluded so output is
        # byte-identical across runs (runtime goes in a sidecar)
        return {
            "claim": self.claim,
            "params": _jsonable(self.params),
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": _jsonable(self.counterexample),
            "details": _jsonable(self.details),
        }

    def canonical_bytes(self) -> bytes:
        return (
            json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode("utf-8")
            + b"\n"
        )


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False


def verify_lemma_amount(b_range=(2, 3, 4), w_range=(1, 2, 3), mu_factory=nu) -> Certificate:
    """Repetition identity: copies of each block inside build_P equal the
    block's weighted share 2**(b*w) * mu(block), exactly, for every block."""
    params = {"b_range": list(b_range), "w_range": list(w_range)}
    checked = 0
    with _Timer() as t:
        for b in b_range:
            mu = mu_factory(b)
            for w in w_range:
                scale = 1 << (b * w)
                for block, copies in build_P_copies(b, w):
                    expected = scale * mu.weight(block)
                    checked += 1
                    if expected != copies:
                        return Certificate(
                            claim="lemma-amount",
                            params=params,
                            passed=False,
                            checked=checked,
                            counterexample={
                                "b": b,
                                "w": w,
                                "block": list(block),
                                "copies": copies,
                                "expected": expected,
                            },
                            runtime_seconds=time.perf_counter() - t.t0,
                        )
    return Certificate("lemma-amount", params, True, checked, runtime_seconds=t.seconds)


def verify_lemma_pbw(
    b_range=(2, 3, 4, 5, 6), w_range=(1, 2, 3), max_len: int = 10**6, builder=build_P
) -> Certificate:
    """Enumeration length: len(build_P(b, w)) == w * 2**(b*w)."""
    params = {"b_range": list(b_range), "w_range": list(w_range), "max_len": max_len}
    checked = 0
    skipped = []
    with _Timer() as t:
        for b in b_range:
            for w in w_range:
                expected = w * (1 << (b * w))
                if expected > max_len:
                    skipped.append({"b": b, "w": w, "length": expected})
                    continue
                got = len(builder(b, w))
                checked += 1
                if got != expected:
                    return Certificate(
                        claim="lemma-pbw",
                        params=params,
                        passed=False,
                        checked=checked,
                        counterexample={"b": b, "w": w, "expected": expected, "observed": got},
                        details={"skipped": skipped},
                        runtime_seconds=time.perf_counter() - t.t0,
                    )
    return Certificate(
        "lemma-pbw", params, True, checked, details={"skipped": skipped}, runtime_seconds=t.seconds
    )


def verify_bounds_ng_nl(b: int, w: int, k_max: int, tally_fn=tally_blocks) -> Certificate:
    """Occurrence sandwich inside build_P(b, w), for every block length <= k_max.

    Lower bound: whole-copy occurrences alone.  Upper bound: whole-copy
    occurrences at the generous per-position rate plus all possible
    straddling positions.
    """
    if not (isinstance(k_max, int) and 1 <= k_max <= w):
        raise InvalidSpecError(f"k_max must satisfy 1 <= k_max <= w, got {k_max}")
    params = {"b": b, "w": w, "k_max": k_max}
    P = build_P(b, w)
    text = P.digits
    rep = (1 << b) - b
    checked = 0
    with _Timer() as t:
        for k in range(1, k_max + 1):
            counts = tally_fn(text, k, alphabet_size=b + 1)
            tail = (k - 1) * (b + 1) ** w
            for blk in itertools.product(range(b + 1), repeat=k):
                g = blk.count(b)
                core = rep**g * (1 << (b * (w - k)))
                lower = (w - k + 1) * core
                upper = w * core + tail
                observed = counts.get(blk, 0)
                checked += 1
                if not lower <= observed <= upper:
                    return Certificate(
                        claim="bounds-ng-nl",
                        params=params,
                        passed=False,
                        checked=checked,
                        counterexample={
                            "block": list(blk),
                            "lower": lower,
                            "observed": observed,
                            "upper": upper,
                        },
                        runtime_seconds=time.perf_counter() - t.t0,
                    )
    return Certificate("bounds-ng-nl", params, True, checked, runtime_seconds=t.seconds)


# module-level so tests can inject a broken inequality side
def _growth_lhs(b: int, w: int, m: int) -> int:
    return (m - 1) * (b + 1) ** w


def _growth_rhs(b: int, w: int, k: int, m: int) -> int:
    return k * (1 << (b * (w - m)))


def verify_lemma_1021(b_range=range(6, 11), w_range=range(2, 13)) -> Certificate:
    """Growth margin: (m-1)*(b+1)**w <= k * 2**(b*(w-m)) for m <= k <= w/2, b >= 6.

    Out-of-hypothesis bases (b < 6) are skipped and reported, not judged.
    """
    params = {"b_range": list(b_range), "w_range": list(w_range)}
    checked = 0
    skipped = []
    with _Timer() as t:
        for b in b_range:
            if b < 6:
                skipped.append(b)
                continue
            for w in w_range:
                for k in range(1, w // 2 + 1):
                    for m in range(1, k + 1):
                        checked += 1
                        if _growth_lhs(b, w, m) > _growth_rhs(b, w, k, m):
                            return Certificate(
                                claim="lemma-1021",
                                params=params,
                                passed=False,
                                checked=checked,
                                counterexample={
                                    "b": b,
                                    "w": w,
                                    "k": k,
                                    "m": m,
                                    "lhs": _growth_lhs(b, w, m),
                                    "rhs": _growth_rhs(b, w, k, m),
                                },
                                details={"skipped_b": skipped},
                                runtime_seconds=time.perf_counter() - t.t0,
                            )
    return Certificate(
        "lemma-1021",
        params,
        True,
        checked,
        details={"skipped_b": skipped},
        runtime_seconds=t.seconds,
    )


def verify_eknu(b: int, w: int, k: int, mu_factory=nu, cap: int | None = None) -> Certificate:
    """build_P(b, w) passes the (k/w, k, mu)-normality band check.

    Hypothesis guard: b >= 6 and k <= w/2 (the tolerance is eps = k/w).
    """
    if not (isinstance(b, int) and b >= 6):
        raise InvalidSpecError(f"hypothesis requires b >= 6, got {b}")
    if not (isinstance(k, int) and 1 <= k and 2 * k <= w):
        raise InvalidSpecError(f"hypothesis requires 1 <= k <= w/2, got k={k}, w={w}")
    params = {"b": b, "w": w, "k": k}
    eps = Fraction(k, w)
    with _Timer() as t:
        P = build_P(b, w, cap=cap)
        verdict = check_eps_k_normal(P, eps, k, mu_factory(b), cap=cap)
    checked = sum((b + 1) ** m for m in range(1, k + 1))
    if verdict.passed:
        return Certificate(
            "eknu",
            params,
            True,
            checked,
            details={"eps": eps, "length": verdict.length},
            runtime_seconds=t.seconds,
        )
    w_ = verdict.witness
    return Certificate(
        claim="eknu",
        params=params,
        passed=False,
        checked=checked,
        counterexample={
            "block": list(w_.block),
            "observed": w_.observed,
            "lower": w_.lower,
            "upper": w_.upper,
        },
        details={"eps": eps, "length": verdict.length},
        runtime_seconds=t.seconds,
    )


def _segment_checkpoints(spec: ConstructionSpec, budget: int) -> list[int]:
    """~budget digit positions spread across every nonempty segment.

    Linear spacing would land almost everything in the last segment (the
    segment lengths grow geometrically), so positions are allocated per
    segment: ceil(budget / segments) points, evenly spaced within each.
    """
    if not (isinstance(budget, int) and budget >= 1):
        raise ValueError(f"checkpoint budget must be an integer >= 1, got {budget}")
    nonempty = [s for s in range(1, len(spec.segments) + 1) if spec.segments[s - 1].length > 0]
    if not nonempty:
        raise InvalidSpecError("construction has no digits to checkpoint")
    per = -(-budget // len(nonempty))
    L = spec.boundaries
    out: set[int] = set()
    for s in nonempty:
        lo, hi = L[s - 1] + 1, L[s]
        if per == 1 or hi == lo:
            out.add((lo + hi) // 2)
            continue
        span = hi - lo
        for i in range(per):
            out.add(lo + span * i // (per - 1))
    return sorted(out)


def _require_family(spec: ConstructionSpec, family: str, claim: str) -> None:
    if spec.family != family:
        raise InvalidSpecError(
            f"claim {claim} applies to {family} constructions; got family {spec.family!r}"
        )


def verify_t0_scaled(
    spec: ConstructionSpec | None = None, n_checkpoints: int = 100, M: int = 64
) -> Certificate:
    """Orbit collapse: at each checkpoint n, the enclosure of the shifted
    value satisfies hi <= (j+1)/2**j + 2**-M, where j is the segment index
    of position n+1; and the next digit satisfies E_{n+1} <= j.
    """
    if spec is None:
        spec = qnex_spec()
    _require_family(spec, "qnex-scaled", "t0-scaled")
    if not (isinstance(M, int) and M >= 1):
        raise ValueError(f"M must be an integer >= 1, got {M}")
    total = spec.total_length
    if total < M + 1:
        raise NeedsMoreDigitsError(M + 1, total)
    params = {"n_checkpoints": n_checkpoints, "M": M, "spec_family": spec.family}
    exp = CantorExpansion.from_spec(spec)
    positions = sorted({min(pos - 1, total - M) for pos in _segment_checkpoints(spec, n_checkpoints)})
    checked = 0
    per_segment_max: dict[int, Fraction] = {}
    ulp = Fraction(1, 2**M)
    with _Timer() as t:
        for n in positions:
            j = spec.t0_index(n)
            bound = Fraction(j + 1, 2**j) + ulp
            digit = spec.digit_at(n + 1)
            iv = orbit_point(exp, n, tail=M)
            checked += 1
            prev = per_segment_max.get(j)
            if prev is None or iv.hi > prev:
                per_segment_max[j] = iv.hi
            if digit > j or iv.hi > bound:
                return Certificate(
                    claim="t0-scaled",
                    params=params,
                    passed=False,
                    checked=checked,
                    counterexample={
                        "n": n,
                        "j": j,
                        "digit": digit,
                        "hi": iv.hi,
                        "bound": bound,
                    },
                    runtime_seconds=time.perf_counter() - t.t0,
                )
    details = {
        "positions": len(positions),
        "max_hi_by_segment": {str(j): per_segment_max[j] for j in sorted(per_segment_max)},
    }
    return Certificate("t0-scaled", params, True, checked, details=details, runtime_seconds=t.seconds)


def verify_notdn_scaled(
    spec: ConstructionSpec | None = None, n_checkpoints: int = 100, M: int = 64
) -> Certificate:
    """Orbit non-equidistribution: the orbit upper endpoints all sit below
    (j_min+1)/2**j_min + 2**-M, so their star discrepancy is at least
    1 - (j_min+1)/2**j_min - 2**-M.  j_min is the smallest segment index
    covered and must be >= 6 for the threshold to mean anything.
    """
    if spec is None:
        spec = qnex_spec()
    _require_family(spec, "qnex-scaled", "notdn-scaled")
    if not (isinstance(M, int) and M >= 1):
        raise ValueError(f"M must be an integer >= 1, got {M}")
    total = spec.total_length
    if total < M + 1:
        raise NeedsMoreDigitsError(M + 1, total)
    params = {"n_checkpoints": n_checkpoints, "M": M, "spec_family": spec.family}
    exp = CantorExpansion.from_spec(spec)
    positions = sorted({min(pos - 1, total - M) for pos in _segment_checkpoints(spec, n_checkpoints)})
    j_min = min(spec.t0_index(n) for n in positions)
    if j_min < 6:
        raise InvalidSpecError(f"checkpoints must lie in segments >= 6, found segment {j_min}")
    with _Timer() as t:
        points = []
        for n in positions:
            iv = orbit_point(exp, n, tail=M)
            # hi == 1 needs every tail digit maximal; fall back to lo then
            points.append(iv.hi if iv.hi < 1 else iv.lo)
        observed = star_discrepancy(points)
    threshold = 1 - Fraction(j_min + 1, 2**j_min) - Fraction(1, 2**M)
    details = {"j_min": j_min, "threshold": threshold, "discrepancy": observed, "points": len(points)}
    if observed >= threshold:
        return Certificate(
            "notdn-scaled", params, True, len(points), details=details, runtime_seconds=t.seconds
        )
    return Certificate(
        claim="notdn-scaled",
        params=params,
        passed=False,
        checked=len(points),
        counterexample={"discrepancy": observed, "threshold": threshold},
        details=details,
        runtime_seconds=t.seconds,
    )


def _qde_segment_eps_primes(spec: ConstructionSpec, eps_fn) -> list[Fraction]:
    """Per-segment scaled-digit discrepancy budgets eps'_s, 1-based list."""
    out = []
    for s, seg in enumerate(spec.segments, start=1):
        out.append(e1l_bound(seg.base, eps_fn(s), len(seg.block)))
    return out


def verify_mqd_scaled(
    spec: ConstructionSpec | None = None, checkpoints=None, eps_fn=None
) -> Certificate:
    """Prefix discrepancy control on the both-senses-normal family.

    At each checkpoint n, with i the count of fully included segments, the
    interpolation preconditions are evaluated; where they hold, the exact
    star discrepancy of the scaled digits E_m/q_m (m <= n) must stay below
    epsbar_i.  Checkpoints before the preconditions first hold are reported
    unasserted.  At least one checkpoint must be asserted.
    """
    if spec is None:
        spec = qde_spec()
    _require_family(spec, "qde-scaled", "mqd-scaled")
    eps_fn = eps_fn or qde_default_eps
    if checkpoints is None:
        positions = _segment_checkpoints(spec, 40)
    elif isinstance(checkpoints, int):
        positions = _segment_checkpoints(spec, checkpoints)
    else:
        positions = sorted(set(int(n) for n in checkpoints))
        if not positions or positions[0] < 1 or positions[-1] > spec.total_length:
            raise InvalidSpecError("checkpoints must be positions within the construction")
    params = {"checkpoints": len(positions), "spec_family": spec.family}
    eps_primes = _qde_segment_eps_primes(spec, eps_fn)
    seg_meta = [(seg.multiplicity, len(seg.block)) for seg in spec.segments]
    rows = []
    asserted = 0
    counterexample = None
    with _Timer() as t:
        for n in positions:
            counts = scaled_value_counts(spec, n)
            d_star = star_discrepancy_from_counts(counts, n)
            i = spec.idef_index(n)
            row: dict = {"n": n, "i": i, "d_star": d_star}
            if 1 <= i < len(spec.segments):
                entries = tuple(
                    (seg_meta[j][0], seg_meta[j][1], eps_primes[j]) for j in range(i)
                )
                pw = PrefixWeights(entries, seg_meta[i][1], eps_primes[i])
                hyp = boundf_hypotheses(pw)
                if hyp:
                    bar = epsbar(pw)
                    row["epsbar"] = bar
                    row["asserted"] = True
                    asserted += 1
                    if d_star > bar and counterexample is None:
                        counterexample = {"n": n, "i": i, "d_star": d_star, "epsbar": bar}
                else:
                    row["asserted"] = False
                    row["unmet"] = list(hyp.failures)
            else:
                row["asserted"] = False
                row["unmet"] = ["no-fully-included-segment"]
            rows.append(row)
        final_counts = scaled_value_counts(spec, spec.total_length)
        final_d = star_discrepancy_from_counts(final_counts, spec.total_length)
    bars = [r["epsbar"] for r in rows if r.get("asserted")]
    trend = all(a >= b for a, b in zip(bars, bars[1:])) if len(bars) >= 2 else None
    details = {
        "rows": rows,
        "asserted": asserted,
        "final_n": spec.total_length,
        "final_d_star": final_d,
        "epsbar_non_increasing": trend,
    }
    if counterexample is None and asserted == 0:
        counterexample = {"reason": "preconditions never held, nothing was asserted"}
    if counterexample is None:
        return Certificate(
            "mqd-scaled", params, True, asserted, details=details, runtime_seconds=t.seconds
        )
    return Certificate(
        claim="mqd-scaled",
        params=params,
        passed=False,
        checked=asserted,
        counterexample=counterexample,
        details=details,
        runtime_seconds=t.seconds,
    )


def verify_salat_counterexample(m_rows: int = 200) -> Certificate:
    """One notion of normality without the other, on the staircase witness.

    Digit 0 never occurs (so its count-to-normalizer ratio is stuck at 0
    while the normalizer grows), yet the scaled digits E_n/q_n spread out:
    their star discrepancy shrinks across row-complete prefixes.  Asserted:
    zero count of digit 0, strictly decreasing mean reciprocal base across
    rows, decreasing discrepancy across sampled rows, and discrepancy at
    row 200 at most 1/20 when the run reaches that row.
    """
    if not (isinstance(m_rows, int) and m_rows >= 2):
        raise InvalidSpecError(f"need at least 2 rows, got {m_rows}")
    params = {"m_rows": m_rows}
    n_total = m_rows * (m_rows + 1) // 2
    sample_rows = sorted({m for m in (50, 100, 150, 200) if m <= m_rows} | {m_rows})
    with _Timer() as t:
        q, digits = _constructions.salat_counterexample_spec(n_total)
        raw = digits.digits
        if len(raw) != n_total or len(q) != n_total:
            raise InvalidSpecError(
                f"expected {n_total} positions, got {len(raw)} digits and {len(q)} base entries"
            )
        zero_count = sum(1 for d in raw if d == 0)
        # everything below reads the returned digits and bases, never the
        # row formula, so a tampered generator is caught
        recip_sum = Fraction(0)
        hyp_values: list[Fraction] = []
        hyp_decreasing = True
        first_increase = None
        pos = 0
        counts: dict[Fraction, int] = {}
        d_samples: list[tuple[int, Fraction]] = []
        normalizer_samples: list[tuple[int, Fraction]] = []
        for m in range(1, m_rows + 1):
            for _ in range(m):
                base = q[pos]
                if not (isinstance(base, int) and base >= 2 and 0 <= raw[pos] < base):
                    raise InvalidSpecError(
                        f"position {pos + 1}: digit {raw[pos]} invalid for base {base}"
                    )
                v = Fraction(raw[pos], base)
                counts[v] = counts.get(v, 0) + 1
                recip_sum += Fraction(1, base)
                pos += 1
            h = recip_sum / pos
            if hyp_values and h >= hyp_values[-1] and first_increase is None:
                hyp_decreasing = False
                first_increase = m
            hyp_values.append(h)
            if m in sample_rows:
                d_samples.append((m, star_discrepancy_from_counts(counts, pos)))
                normalizer_samples.append((m, recip_sum))
        checked = m_rows
    d_values = [d for _, d in d_samples]
    d_decreasing = all(a > b for a, b in zip(d_values, d_values[1:]))
    final_ok = True
    row200 = next((d for m, d in d_samples if m == 200), None)
    if m_rows >= 200:
        final_ok = row200 is not None and row200 <= Fraction(1, 20)
    details = {
        "n_total": n_total,
        "zero_count": zero_count,
        "hypothesis_first_last": [hyp_values[0], hyp_values[-1]],
        "d_star_samples": [[m, d] for m, d in d_samples],
        "normalizer_samples": [[m, v] for m, v in normalizer_samples],
    }
    failures = []
    if zero_count != 0:
        failures.append({"reason": "digit 0 occurred", "count": zero_count})
    if not hyp_decreasing:
        failures.append({"reason": "mean reciprocal base rose", "at_row": first_increase})
    if not d_decreasing:
        failures.append({"reason": "discrepancy did not decrease", "samples": details["d_star_samples"]})
    if not final_ok:
        failures.append({"reason": "row-200 discrepancy above 1/20", "value": row200})
    if failures:
        return Certificate(
            claim="salat-counterexample",
            params=params,
            passed=False,
            checked=checked,
            counterexample={"failures": failures},
            details=details,
            runtime_seconds=t.seconds,
        )
    return Certificate(
        "salat-counterexample", params, True, checked, details=details, runtime_seconds=t.seconds
    )


# ---------------------------------------------------------------------------
# Claim registry and grid driver.
# ---------------------------------------------------------------------------

# claim id -> (function, kind); kind "range" passes grid lists wholesale as
# *_range arguments, kind "point" expands the grid product into one
# certificate per point, kind "plain" passes scalars straight through
CLAIMS: dict[str, tuple] = {
    "lemma-amount": (verify_lemma_amount, "range"),
    "lemma-pbw": (verify_lemma_pbw, "range"),
    "bounds-ng-nl": (verify_bounds_ng_nl, "point"),
    "lemma-1021": (verify_lemma_1021, "range"),
    "eknu": (verify_eknu, "point"),
    "t0-scaled": (verify_t0_scaled, "plain"),
    "notdn-scaled": (verify_notdn_scaled, "plain"),
    "mqd-scaled": (verify_mqd_scaled, "plain"),
    "salat-counterexample": (verify_salat_counterexample, "plain"),
}

# what `--all` runs when no grid is given
DEFAULT_JOBS: tuple[tuple[str, dict], ...] = (
    ("lemma-amount", {}),
    ("lemma-pbw", {}),
    ("bounds-ng-nl", {"b": 2, "w": 2, "k_max": 2}),
    ("bounds-ng-nl", {"b": 3, "w": 2, "k_max": 2}),
    ("bounds-ng-nl", {"b": 4, "w": 3, "k_max": 2}),
    ("bounds-ng-nl", {"b": 6, "w": 2, "k_max": 2}),
    ("lemma-1021", {}),
    ("eknu", {"b": 6, "w": 2, "k": 1}),
    ("salat-counterexample", {"m_rows": 200}),
    ("mqd-scaled", {}),
    ("t0-scaled", {}),
    ("notdn-scaled", {}),
    ("eknu", {"b": 6, "w": 4, "k": 2}),
)


def run_claim(claim: str, grid: dict | None = None, **kwargs) -> list[Certificate]:
    """Run one claim over a parameter grid, returning its certificates.

    ``grid`` maps parameter names to lists of integers (from CLI syntax
    like ``b=2..6,w=1..3``).  Range-style claims receive the lists whole;
    point-style claims get one run per Cartesian-product point.
    """
    if claim not in CLAIMS:
        raise InvalidSpecError(
            f"unknown claim {claim!r}; choose from {', '.join(sorted(CLAIMS))}"
        )
    fn, kind = CLAIMS[claim]
    grid = dict(grid or {})
    if kind == "range":
        call_kwargs = dict(kwargs)
        for key, values in grid.items():
            call_kwargs[f"{key}_range"] = list(values)
        return [fn(**call_kwargs)]
    if kind == "point":
        if not grid:
            return [fn(**kwargs)]
        names = sorted(grid)
        certs = []
        for combo in itertools.product(*(grid[name] for name in names)):
            point = dict(zip(names, combo))
            point.update(kwargs)
            certs.append(fn(**point))
        return certs
    # plain: grid entries must be single values
    call_kwargs = dict(kwargs)
    for key, values in grid.items():
        vals = list(values)
        if len(vals) != 1:
            raise InvalidSpecError(f"claim {claim} takes a single value for {key}, got {vals}")
        call_kwargs[key] = vals[0]
    return [fn(**call_kwargs)]


def run_all(budget_seconds: float | None = None) -> tuple[list[Certificate], list[str]]:
    """Run the default verification jobs, stopping when the budget runs out.

    Returns (certificates, skipped job labels).  Jobs are ordered cheap
    first so a tight budget still covers most claims.
    """
    t0 = time.perf_counter()
    certs: list[Certificate] = []
    skipped: list[str] = []
    for claim, kw in DEFAULT_JOBS:
        label = claim if not kw else f"{claim} {kw}"
        if budget_seconds is not None and time.perf_counter() - t0 > budget_seconds:
            skipped.append(label)
            continue
        fn, _ = CLAIMS[claim]
        certs.append(fn(**kw))
    return certs, skipped
