"""Command-line interface: construction, counting, orbits, discrepancy,
verification, and combined reports, with stable machine-readable output.

Exit codes: 0 success; 1 a verification-style check failed (the failing
certificate or verdict is still emitted); 2 usage or validation error;
3 size limit exceeded (raise it with the CNL_SIZE_CAP environment
variable or --cap).

All numeric output is exact by default: fractions appear as "p/q"
strings, and any float column is suffixed _decimal to mark it as an
approximation.  Identical invocations produce byte-identical output
files; run metadata such as wall-clock time goes to a separate
``<out>.meta.json`` sidecar, never into the data file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .blocks import count_occurrences, count_prefix_occurrences, read_digit_file, write_digit_file
from .cantor import (
    BasicSequence,
    CantorExpansion,
    normality_ratio,
    orbit_point,
    q_moment,
    scaled_value_counts,
)
from .constructions import ConstructionSpec, assemble, qde_spec, qnex_spec
from .discrepancy import (
    PrefixWeights,
    boundf_hypotheses,
    concat_bound,
    e1l_bound,
    epsbar,
    kn1_bound,
    star_discrepancy,
    star_discrepancy_from_counts,
    unit_sequence,
)
from .errors import InvalidSpecError, NeedsMoreDigitsError, SizeLimitError
from .verify import CLAIMS, _qde_segment_eps_primes, run_all, run_claim
from .weightings import check_eps_k_normal, parse_weighting

_FAMILIES = {"qde-scaled": qde_spec, "qnex-scaled": qnex_spec}


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide options shared by the subcommands."""

    subcommand: str
    spec_path: str | None
    cap: int | None
    tail: int
    checkpoints: tuple[int, ...] | None
    fmt: str
    out: str | None

    def __post_init__(self):
        if self.cap is not None and self.cap <= 0:
            raise InvalidSpecError(f"size cap must be positive, got {self.cap}")
        if self.tail < 1:
            raise InvalidSpecError(f"tail length must be >= 1, got {self.tail}")
        if self.fmt not in ("json", "csv"):
            raise InvalidSpecError(f"format must be json or csv, got {self.fmt!r}")
        if self.checkpoints is not None:
            cps = self.checkpoints
            if not cps:
                raise InvalidSpecError("checkpoint list is empty")
            if any(b <= a for a, b in zip(cps, cps[1:])):
                raise InvalidSpecError("checkpoints must be strictly increasing")
            if cps[0] < 0:
                raise InvalidSpecError("checkpoints must be >= 0")


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p != "")
    except ValueError as exc:
        raise InvalidSpecError(f"bad {what} {text!r}; expected comma-separated integers") from exc


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpecError(f"bad {what} {text!r}; expected p/q or a decimal") from exc


_GRID_PART = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)=(\d+)(?:\.\.(\d+))?$")


def parse_grid(text: str) -> dict[str, list[int]]:
    """Parse grid syntax like ``b=2..6,w=1..3,k_max=2``."""
    grid: dict[str, list[int]] = {}
    for part in text.split(","):
        m = _GRID_PART.match(part.strip())
        if not m:
            raise InvalidSpecError(
                f"bad grid entry {part!r}; expected name=lo..hi or name=value"
            )
        name, lo, hi = m.group(1), int(m.group(2)), m.group(3)
        values = [lo] if hi is None else list(range(lo, int(hi) + 1))
        if not values:
            raise InvalidSpecError(f"grid entry {part!r} is an empty range")
        grid.setdefault(name, []).extend(values)
    return grid


_BUDGET = re.compile(r"^(\d+(?:\.\d+)?)\s*(s|sec|secs|m|min|mins|h|hr|hrs)?$")


def parse_budget(text: str) -> float:
    """Parse a time budget like ``10min``, ``30s``, ``1h``, or ``90``."""
    m = _BUDGET.match(text.strip())
    if not m:
        raise InvalidSpecError(f"bad budget {text!r}; expected forms like 10min, 30s, 1h")
    value = float(m.group(1))
    unit = m.group(2) or "s"
    scale = {"s": 1, "sec": 1, "secs": 1, "m": 60, "min": 60, "mins": 60, "h": 3600, "hr": 3600, "hrs": 3600}
    return value * scale[unit]


def _load_spec(args, cap: int | None) -> ConstructionSpec:
    if getattr(args, "spec", None):
        return ConstructionSpec.load(args.spec, cap=cap)
    family = getattr(args, "family", None)
    if family:
        return _FAMILIES[family](cap=cap)
    raise InvalidSpecError("pass --spec FILE or --family NAME")


def _load_digit_input(args, cap: int | None):
    """Digits for count/normality: a binary file or a spec prefix."""
    if getattr(args, "infile", None):
        return read_digit_file(args.infile)
    if getattr(args, "spec", None) or getattr(args, "family", None):
        n_max = getattr(args, "n_max", None)
        if n_max is None:
            raise InvalidSpecError("--n-max is required when reading digits from a spec")
        spec = _load_spec(args, cap)
        return spec.digits_prefix(n_max, cap=cap)
    raise InvalidSpecError("pass --in FILE, or --spec/--family with --n-max")


def _frac_str(f: Fraction) -> str:
    return str(f)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out: str | None) -> None:
    _emit_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _emit_csv(header: list[str], rows: list[list], out: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit_text(buf.getvalue(), out)


# ---------------------------------------------------------------------------
# Subcommand implementations.  Each returns a process exit code.
# ---------------------------------------------------------------------------


def _cmd_construct(cfg: RunConfig, args) -> int:
    spec = _load_spec(args, cfg.cap)
    if args.spec_out:
        spec.save(args.spec_out)
    q, digits = assemble(spec, args.n_max, cap=cfg.cap)
    if args.digits_out:
        write_digit_file(args.digits_out, digits.digits, count=len(digits))
    if cfg.fmt == "csv":
        rows = [[n + 1, q[n], digits[n]] for n in range(len(digits))]
        _emit_csv(["n", "q", "digit"], rows, cfg.out)
    else:
        _emit_json(
            {"n_max": args.n_max, "q": list(q), "digits": list(digits.as_tuple())},
            cfg.out,
        )
    return 0


def _cmd_count(cfg: RunConfig, args) -> int:
    digits = _load_digit_input(args, cfg.cap)
    block = _parse_int_list(args.block, "block")
    if not block:
        raise InvalidSpecError("block must have at least one digit")
    if args.prefix is not None:
        count = count_prefix_occurrences(block, digits, args.prefix)
        payload = {"block": list(block), "count": count, "positions": args.prefix}
    else:
        count = count_occurrences(block, digits)
        payload = {"block": list(block), "count": count, "length": len(digits)}
    _emit_json(payload, cfg.out)
    return 0


def _cmd_weights(cfg: RunConfig, args) -> int:
    if args.weights_op != "eval":
        raise InvalidSpecError(f"unknown weights operation {args.weights_op!r}")
    mu = parse_weighting(args.mu)
    block = _parse_int_list(args.block, "block")
    weight = mu.weight(block)
    _emit_json(
        {
            "weighting": args.mu,
            "block": list(block),
            "weight": _frac_str(weight),
            "weight_decimal": float(weight),
        },
        cfg.out,
    )
    return 0


def _cmd_normality(cfg: RunConfig, args) -> int:
    if args.normality_op != "check":
        raise InvalidSpecError(f"unknown normality operation {args.normality_op!r}")
    digits = _load_digit_input(args, cfg.cap)
    mu = parse_weighting(args.mu)
    eps = _parse_fraction(args.eps, "eps")
    verdict = check_eps_k_normal(digits, eps, args.k, mu, cap=cfg.cap)
    _emit_json(verdict.to_json(), cfg.out)
    return 0 if verdict.passed else 1


def _cmd_moments(cfg: RunConfig, args) -> int:
    if cfg.checkpoints is None:
        raise InvalidSpecError("--checkpoints is required for moments")
    if cfg.checkpoints[0] < 1:
        raise InvalidSpecError("moment checkpoints must be >= 1")
    if args.const_base is not None:
        Q = BasicSequence.constant(args.const_base)
    else:
        Q = BasicSequence.from_spec(_load_spec(args, cfg.cap))
    rows = []
    for n in cfg.checkpoints:
        value = q_moment(Q, n, args.k)
        rows.append({"n": n, "k": args.k, "moment": _frac_str(value), "moment_decimal": float(value)})
    if cfg.fmt == "csv":
        _emit_csv(
            ["n", "k", "moment", "moment_decimal"],
            [[r["n"], r["k"], r["moment"], r["moment_decimal"]] for r in rows],
            cfg.out,
        )
    else:
        _emit_json({"rows": rows}, cfg.out)
    return 0


def _cmd_orbit(cfg: RunConfig, args) -> int:
    if cfg.checkpoints is None:
        raise InvalidSpecError("--checkpoints is required for orbit (shift counts n)")
    spec = _load_spec(args, cfg.cap)
    exp = CantorExpansion.from_spec(spec)
    rows = []
    for n in cfg.checkpoints:
        iv = orbit_point(exp, n, tail=cfg.tail)
        j = spec.t0_index(n) if n < spec.total_length else None
        rows.append(
            {
                "n": n,
                "j": j,
                "lo": _frac_str(iv.lo),
                "hi": _frac_str(iv.hi),
                "lo_decimal": float(iv.lo),
                "hi_decimal": float(iv.hi),
            }
        )
    if cfg.fmt == "csv":
        _emit_csv(
            ["n", "j", "lo", "hi", "lo_decimal", "hi_decimal"],
            [[r["n"], r["j"], r["lo"], r["hi"], r["lo_decimal"], r["hi_decimal"]] for r in rows],
            cfg.out,
        )
    else:
        _emit_json({"tail": cfg.tail, "rows": rows}, cfg.out)
    return 0


def _read_sequence_file(path: str) -> tuple[Fraction, ...]:
    values: list[Fraction] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            for piece in line.replace(",", " ").split():
                try:
                    values.append(Fraction(piece))
                except (ValueError, ZeroDivisionError) as exc:
                    raise InvalidSpecError(
                        f"{path}:{line_no}: bad value {piece!r}; expected p/q or decimal"
                    ) from exc
    if not values:
        raise InvalidSpecError(f"{path}: no values found")
    return tuple(values)


def _cmd_discrepancy(cfg: RunConfig, args) -> int:
    zs = unit_sequence(_read_sequence_file(args.infile))
    d_star = star_discrepancy(zs)
    payload: dict = {
        "n": len(zs),
        "discrepancy": _frac_str(d_star),
        "discrepancy_decimal": float(d_star),
        "bounds": {},
        "within": {},
    }
    wanted = [b.strip() for b in (args.bounds or "").split(",") if b.strip()]
    for name in wanted:
        if name == "kn1":
            bound = kn1_bound(sorted(zs))
        elif name == "kn2":
            if not args.families:
                raise InvalidSpecError("--families FILE is required for the kn2 bound")
            with open(args.families, "r", encoding="utf-8") as fh:
                fams = json.load(fh)
            parts = [(int(c), int(ln), _parse_fraction(str(e), "family eps")) for c, ln, e in fams]
            bound = concat_bound(parts)
        elif name == "e1l":
            if args.e1l_base is None or args.e1l_eps is None:
                raise InvalidSpecError("--e1l-base and --e1l-eps are required for the e1l bound")
            bound = e1l_bound(args.e1l_base, _parse_fraction(args.e1l_eps, "e1l eps"), len(zs))
        else:
            raise InvalidSpecError(f"unknown bound {name!r}; choose from kn1, kn2, e1l")
        payload["bounds"][name] = _frac_str(bound)
        payload["within"][name] = d_star <= bound
    _emit_json(payload, cfg.out)
    return 0 if all(payload["within"].values()) else 1


def _cmd_verify(cfg: RunConfig, args) -> int:
    if args.all:
        budget = parse_budget(args.budget) if args.budget else None
        certs, skipped = run_all(budget_seconds=budget)
        payload = {"certificates": [c.to_json() for c in certs], "skipped": skipped}
        passed = all(c.passed for c in certs)
        runtimes = [
            {"claim": c.claim, "params": c.to_json()["params"], "runtime_seconds": c.runtime_seconds}
            for c in certs
        ]
    else:
        if not args.claim:
            raise InvalidSpecError("pass --claim NAME or --all")
        grid = parse_grid(args.grid) if args.grid else None
        certs = run_claim(args.claim, grid)
        payload = certs[0].to_json() if len(certs) == 1 else [c.to_json() for c in certs]
        passed = all(c.passed for c in certs)
        runtimes = [
            {"claim": c.claim, "params": c.to_json()["params"], "runtime_seconds": c.runtime_seconds}
            for c in certs
        ]
    _emit_json(payload, cfg.out)
    if cfg.out:
        with open(cfg.out + ".meta.json", "w", encoding="utf-8") as fh:
            json.dump({"runtimes": runtimes}, fh, indent=2)
            fh.write("\n")
    return 0 if passed else 1


def _cmd_report(cfg: RunConfig, args) -> int:
    if cfg.fmt != "json":
        raise InvalidSpecError("report is a combined document; only json format is supported")
    if cfg.checkpoints is None or cfg.checkpoints[0] < 1:
        raise InvalidSpecError("--checkpoints with positions >= 1 is required for report")
    spec = _load_spec(args, cfg.cap)
    exp = CantorExpansion.from_spec(spec)
    block = _parse_int_list(args.block, "block")
    if not block:
        raise InvalidSpecError("block must have at least one digit")
    ratios = []
    for n in cfg.checkpoints:
        ratio = normality_ratio(exp, block, n)
        ratios.append({"n": n, "ratio": _frac_str(ratio), "ratio_decimal": float(ratio)})
    orbits = []
    for n in cfg.checkpoints:
        if n + cfg.tail <= spec.total_length:
            iv = orbit_point(exp, n, tail=cfg.tail)
            orbits.append({"n": n, "lo": _frac_str(iv.lo), "hi": _frac_str(iv.hi)})
        else:
            orbits.append({"n": n, "lo": None, "hi": None})
    d_traj = []
    for n in cfg.checkpoints:
        d = star_discrepancy_from_counts(scaled_value_counts(spec, n), n)
        d_traj.append({"n": n, "d_star": _frac_str(d), "d_star_decimal": float(d)})
    bars = []
    if spec.family == "qde-scaled":
        from .constructions import qde_default_eps

        eps_primes = _qde_segment_eps_primes(spec, qde_default_eps)
        seg_meta = [(seg.multiplicity, len(seg.block)) for seg in spec.segments]
        for n in cfg.checkpoints:
            i = spec.idef_index(n)
            row: dict = {"n": n, "i": i}
            if 1 <= i < len(spec.segments):
                entries = tuple((seg_meta[j][0], seg_meta[j][1], eps_primes[j]) for j in range(i))
                pw = PrefixWeights(entries, seg_meta[i][1], eps_primes[i])
                hyp = boundf_hypotheses(pw)
                if hyp:
                    bar = epsbar(pw)
                    row["epsbar"] = _frac_str(bar)
                    row["epsbar_decimal"] = float(bar)
                else:
                    row["epsbar"] = None
                    row["unmet"] = list(hyp.failures)
            else:
                row["epsbar"] = None
            bars.append(row)
    payload = {
        "family": spec.family,
        "block": list(block),
        "normality_ratios": ratios,
        "orbit_enclosures": orbits,
        "d_star_trajectory": d_traj,
        "epsbar_trajectory": bars,
    }
    _emit_json(payload, cfg.out)
    return 0


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_spec_args(p: argparse.ArgumentParser, family_ok: bool = True) -> None:
    p.add_argument("--spec", metavar="FILE", help="construction spec JSON file")
    if family_ok:
        p.add_argument(
            "--family",
            choices=sorted(_FAMILIES),
            help="use a built-in construction family with default parameters",
        )


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=int, help="size cap on materialized digits (default 10^8 or CNL_SIZE_CAP)")
    p.add_argument("--tail", type=int, default=64, help="enclosure tail length M (default 64)")
    p.add_argument("--checkpoints", help="comma-separated strictly increasing positions")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnl",
        description="Exact tooling for varying-base digit expansions: "
        "constructions, block counts, orbits, discrepancy, verification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="materialize a construction prefix")
    _add_spec_args(p)
    p.add_argument("--n-max", type=int, required=True, help="how many positions to emit")
    p.add_argument("--digits-out", metavar="FILE", help="also write digits in the binary format")
    p.add_argument("--spec-out", metavar="FILE", help="also write the spec JSON used")
    _add_common(p)

    p = sub.add_parser("count", help="count overlapping occurrences of a block")
    p.add_argument("--block", required=True, help="comma-separated digits, e.g. 1,2")
    p.add_argument("--in", dest="infile", metavar="FILE", help="binary digit file")
    _add_spec_args(p)
    p.add_argument("--n-max", type=int, help="digits to take from the spec")
    p.add_argument("--prefix", type=int, help="count only occurrences starting in the first N positions")
    _add_common(p)

    p = sub.add_parser("weights", help="digit weighting operations")
    p.add_argument("weights_op", choices=("eval",))
    p.add_argument("--mu", required=True, help="weighting token: uniform:B or nu:B")
    p.add_argument("--block", required=True, help="comma-separated digits")
    _add_common(p)

    p = sub.add_parser("normality", help="block-frequency normality checks")
    p.add_argument("normality_op", choices=("check",))
    p.add_argument("--in", dest="infile", metavar="FILE", help="binary digit file")
    _add_spec_args(p)
    p.add_argument("--n-max", type=int, help="digits to take from the spec")
    p.add_argument("--eps", required=True, help="tolerance, e.g. 1/2")
    p.add_argument("--k", type=int, required=True, help="maximum block length checked")
    p.add_argument("--mu", required=True, help="weighting token: uniform:B or nu:B")
    _add_common(p)

    p = sub.add_parser("moments", help="expected block-count normalizers at checkpoints")
    _add_spec_args(p)
    p.add_argument("--const-base", type=int, help="use a constant base sequence instead of a spec")
    p.add_argument("--k", type=int, default=1, help="block length (default 1)")
    _add_common(p)

    p = sub.add_parser("orbit", help="exact enclosures of shifted values")
    _add_spec_args(p)
    _add_common(p)

    p = sub.add_parser("discrepancy", help="exact star discrepancy of a point file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE",
                   help="values in [0,1), one or more per line, p/q or decimal")
    p.add_argument("--exact", action="store_true",
                   help="compute the exact value (always on; flag kept for explicitness)")
    p.add_argument("--bounds", help="comma-separated bound names: kn1,kn2,e1l")
    p.add_argument("--families", metavar="FILE", help="JSON [[copies,length,eps],...] for kn2")
    p.add_argument("--e1l-base", type=int, help="digit base for the e1l bound")
    p.add_argument("--e1l-eps", help="frequency tolerance for the e1l bound")
    _add_common(p)

    p = sub.add_parser("verify", help="run claim verifications, emit certificates")
    p.add_argument("--claim", choices=sorted(CLAIMS), help="claim id")
    p.add_argument("--grid", help="parameter grid, e.g. b=2..6,w=1..3")
    p.add_argument("--all", action="store_true", help="run the default verification jobs")
    p.add_argument("--budget", help="time budget for --all, e.g. 10min")
    _add_common(p)

    p = sub.add_parser("report", help="combined document for a construction")
    _add_spec_args(p)
    p.add_argument("--block", default="0", help="block for normality ratios (default: 0)")
    _add_common(p)

    return parser


_DISPATCH = {
    "construct": _cmd_construct,
    "count": _cmd_count,
    "weights": _cmd_weights,
    "normality": _cmd_normality,
    "moments": _cmd_moments,
    "orbit": _cmd_orbit,
    "discrepancy": _cmd_discrepancy,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        checkpoints = (
            _parse_int_list(args.checkpoints, "checkpoints") if args.checkpoints else None
        )
        cfg = RunConfig(
            subcommand=args.subcommand,
            spec_path=getattr(args, "spec", None),
            cap=args.cap,
            tail=args.tail,
            checkpoints=checkpoints,
            fmt=args.fmt,
            out=args.out,
        )
        return _DISPATCH[args.subcommand](cfg, args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InvalidSpecError, NeedsMoreDigitsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
