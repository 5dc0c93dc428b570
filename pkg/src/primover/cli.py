"""Command line front end.

One verb per invocation; every verb can emit a human-readable text report
or a single JSON document (--format json). Numbers are accepted in decimal
or as the expressions a^n-1 / a^n+1. Exit codes: 0 success, 1 domain or
usage error, 2 resource limit (factoring budget, enumeration ceiling).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from time import perf_counter
from typing import Callable

from primover import arith, construct
from primover.classification import (
    Classification,
    classify as classify_subject,
    scan as scan_range,
    strong_pseudoprime_ordinal,
)
from primover.config import ENV_PREFIX, Config, load_config
from primover.cosets import decompose
from primover.errors import DomainError, ResourceError

_EXPRESSION = re.compile(r"^(\d+)\^(\d+)([+-]1)$")


def parse_number(text: str) -> int:
    """Decimal literal, or the forms a^n-1 / a^n+1. Nothing more general."""
    text = text.strip()
    m = _EXPRESSION.match(text)
    if m:
        a, n, tail = int(m.group(1)), int(m.group(2)), m.group(3)
        return a**n + (1 if tail == "+1" else -1)
    if text.isdigit():
        return int(text)
    raise ValueError(f"not a number or a^n±1 expression: {text!r}")


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        self.parser = parser
        self.message = message


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the contract here wants 1,
    # so route errors through an exception main() can catch
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(self, message)


def _number(text: str) -> int:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="primover",
        description="Classify integers as prime / overpseudoprime / primover "
        "to a base, and build primover divisors of a^n - 1.",
        epilog="Settings come from --config / PRIMOVER_CONFIG (JSON) with "
        f"{ENV_PREFIX}<FIELD> environment overrides; defaults: "
        f"{Config().describe()}.",
    )
    parser.add_argument("--config", help="path to a JSON settings file")
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output style (default text)",
    )
    parser.add_argument("--cache", help="factorization cache file")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb: str, help_text: str, base: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(verb, help=help_text)
        if base:
            p.add_argument("--base", type=_number, default=2, help="the base a (default 2)")
        return p

    p = add("classify", "full primover classification of N")
    p.add_argument("subject", type=_number)

    p = add("cosets", "cyclotomic coset decomposition of a mod n")
    p.add_argument("modulus", type=_number)
    p.add_argument("--ceiling", type=int, help="enumeration ceiling override")

    p = add("cofactor", "primitive primover cofactor of a^n - 1 (composite n)")
    p.add_argument("exponent", type=_number)

    p = add("construct", "named cofactor constructions", base=False)
    kind = p.add_subparsers(dest="kind", required=True)
    kind_args = {
        "fermat": ("a^(2^(n-1)) + 1, even a", ["n"]),
        "two-prime": ("(a-1)(a^pq-1) / ((a^p-1)(a^q-1))", ["p", "q"]),
        "prime-power": ("(a^(p^m)-1) / (a^(p^(m-1))-1), m >= 2", ["p", "m"]),
        "two-prime-power": (
            "cofactor at exponent p^alpha * q^beta",
            ["p", "alpha", "q", "beta"],
        ),
    }
    for name, (help_text, positionals) in kind_args.items():
        k = kind.add_parser(name, help=help_text)
        k.add_argument("--base", type=_number, default=2, help="the base a (default 2)")
        for arg in positionals:
            k.add_argument(arg, type=_number)

    p = add("ordinal", "position of N among strong pseudoprimes to the base")
    p.add_argument("subject", type=_number)
    p.add_argument("--deep", action="store_true", help="allow long scans")
    p.add_argument("--workers", type=int, help="scan worker processes")

    p = add("scan", "census of pseudoprimes and primovers up to a bound")
    p.add_argument("bound", type=_number)
    p.add_argument("--workers", type=int, help="scan worker processes")

    p = add("identity", "signed exponent sum against phi(n)", base=False)
    p.add_argument("n", type=_number)

    p = add("bound", "primitive cofactor size report at exponent n")
    p.add_argument("n", type=_number)

    return parser


# --- payload builders -----------------------------------------------------


def _factor_pairs(f: arith.Factorization | None) -> list[list[int]] | None:
    if f is None:
        return None
    return [[p, e] for p, e in f.factors]


def _classification_payload(c: Classification) -> dict:
    ev = c.evidence
    return {
        "subject": c.subject,
        "base": c.base,
        "status": c.status.value,
        "primover": c.primover,
        "evidence": {
            "r": ev.r,
            "h": ev.h,
            "factorization": _factor_pairs(ev.factorization),
            "orders": [list(t) for t in ev.orders] if ev.orders else None,
            "reason": ev.reason,
        },
    }


def _classification_lines(c: Classification) -> list[str]:
    tag = " (primover)" if c.primover else ""
    lines = [f"{c.subject} to base {c.base}: {c.status.value}{tag}"]
    ev = c.evidence
    if ev.factorization is not None:
        lines.append(f"  factors: {ev.factorization}")
    if ev.orders:
        shown = ", ".join(f"ord mod {p}^{j} = {h}" for p, j, h in ev.orders)
        lines.append(f"  {shown}")
    if ev.r is not None and ev.h is not None:
        lines.append(f"  r = {ev.r}, h = {ev.h}, r*h + 1 = {ev.r * ev.h + 1}")
    if ev.reason:
        lines.append(f"  reason: {ev.reason}")
    return lines


def _product_text(p: construct.CofactorProduct) -> str:
    num = " ".join(f"({p.base}^{e}-1)" for e, s in p.terms if s == 1)
    den = " ".join(f"({p.base}^{e}-1)" for e, s in p.terms if s == -1)
    return f"{num} / {den}" if den else num


def _verdict_payload(v: construct.ConstructionVerdict) -> dict:
    p = v.product
    return {
        "product": {
            "base": p.base,
            "modulus_exponent": p.modulus_exponent,
            "terms": [list(t) for t in p.terms],
            "value": p.value,
        },
        "coprimality_holds": v.coprimality_holds,
        "classification": _classification_payload(v.classification),
    }


def _verdict_lines(v: construct.ConstructionVerdict) -> list[str]:
    p = v.product
    lines = [
        f"value = {p.value}",
        f"  form: {_product_text(p)}  (exponent {p.modulus_exponent})",
        f"  coprime to complementary cofactor: {'yes' if v.coprimality_holds else 'no'}",
    ]
    return lines + ["  " + s for s in _classification_lines(v.classification)]


# --- verb handlers --------------------------------------------------------


def _cmd_classify(args, cfg: Config):
    c = classify_subject(args.base, args.subject, cross_check_ceiling=cfg.coset_ceiling)
    return _classification_payload(c), _classification_lines(c), c.probabilistic


def _cmd_cosets(args, cfg: Config):
    ceiling = args.ceiling if args.ceiling is not None else cfg.coset_ceiling
    d = decompose(args.base, args.modulus, ceiling=ceiling)
    payload = {
        "base": d.base,
        "modulus": d.modulus,
        "r": d.r,
        "h": d.h,
        "cosets": [list(c) for c in d.cosets],
    }
    lines = [f"a = {d.base}, n = {d.modulus}: r = {d.r}, h = {d.h}"]
    for i, coset in enumerate(d.cosets, start=1):
        lines.append(f"  C{i} (size {len(coset)}): {' '.join(map(str, coset))}")
    return payload, lines, False


def _cmd_cofactor(args, cfg: Config):
    v = construct.primitive_cofactor(args.base, args.exponent)
    return _verdict_payload(v), _verdict_lines(v), v.classification.probabilistic


def _cmd_construct(args, cfg: Config):
    if args.kind == "fermat":
        v = construct.verify_generalized_fermat(args.base, args.n)
    elif args.kind == "two-prime":
        v = construct.two_prime_cofactor(args.base, args.p, args.q)
    elif args.kind == "prime-power":
        v = construct.prime_power_cofactor(args.base, args.p, args.m)
    else:
        v = construct.two_prime_power_cofactor(
            args.base, args.p, args.alpha, args.q, args.beta
        )
    return _verdict_payload(v), _verdict_lines(v), v.classification.probabilistic


def _progress_printer(every: int = 16) -> Callable[[int, int], None]:
    state = {"count": 0}

    def report(done: int, total: int) -> None:
        state["count"] += 1
        if state["count"] % every == 0 or done >= total:
            print(f"  scanned {done:,} / {total:,}", file=sys.stderr)

    return report


def _cmd_ordinal(args, cfg: Config):
    n = args.subject
    if n > cfg.deep_threshold and not args.deep:
        raise DomainError(
            f"ordinal scan to {n} exceeds the threshold {cfg.deep_threshold}; "
            "pass --deep to run it"
        )
    workers = args.workers if args.workers is not None else cfg.workers
    progress = _progress_printer() if args.deep else None
    k = strong_pseudoprime_ordinal(args.base, n, workers=workers, progress=progress)
    payload = {"base": args.base, "subject": n, "ordinal": k}
    return payload, [f"{n} is strong pseudoprime #{k} to base {args.base}"], False


def _cmd_scan(args, cfg: Config):
    workers = args.workers if args.workers is not None else cfg.workers
    report = scan_range(args.base, args.bound, workers=workers)
    payload = {
        "base": report.base,
        "bound": report.bound,
        "strong_pseudoprimes": list(report.strong_pseudoprimes),
        "overpseudoprime_count": report.overpseudoprime_count,
        "prime_count": report.prime_count,
        "primover_count": report.primover_count,
    }
    listing = ", ".join(map(str, report.strong_pseudoprimes[:25]))
    if len(report.strong_pseudoprimes) > 25:
        listing += ", ..."
    lines = [
        f"base {report.base} up to {report.bound}:",
        f"  strong pseudoprimes: {len(report.strong_pseudoprimes)}"
        + (f"  [{listing}]" if listing else ""),
        f"  overpseudoprimes:    {report.overpseudoprime_count}",
        f"  primes:              {report.prime_count}",
        f"  primovers:           {report.primover_count}",
    ]
    return payload, lines, False


def _cmd_identity(args, cfg: Config):
    ident = construct.exponent_identity(args.n)
    payload = {
        "n": ident.n,
        "signed_sum": ident.signed_sum,
        "phi": ident.phi,
        "holds": ident.holds,
    }
    verdict = "holds" if ident.holds else "FAILS"
    lines = [
        f"signed exponent sum for n = {ident.n}: "
        f"{ident.signed_sum} vs phi = {ident.phi}: {verdict}"
    ]
    return payload, lines, False


def _cmd_bound(args, cfg: Config):
    rep = construct.cofactor_bound_report(args.base, args.n)
    payload = {
        "base": rep.base,
        "n": rep.n,
        "value": rep.value,
        "implied_constant": rep.implied_constant,
        "asymptotic_regime": rep.asymptotic_regime,
    }
    regime = "" if rep.asymptotic_regime else "  (below the asymptotic regime n >= 16)"
    lines = [
        f"cofactor of {rep.base}^{rep.n}-1: {rep.value}",
        f"  implied constant {rep.implied_constant:.4f}{regime}",
    ]
    return payload, lines, False


_HANDLERS = {
    "classify": _cmd_classify,
    "cosets": _cmd_cosets,
    "cofactor": _cmd_cofactor,
    "construct": _cmd_construct,
    "ordinal": _cmd_ordinal,
    "scan": _cmd_scan,
    "identity": _cmd_identity,
    "bound": _cmd_bound,
}


def _command_echo(args) -> dict:
    skip = {"verb", "config", "format", "cache", "kind"}
    arguments = {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }
    echo = {"verb": args.verb, "arguments": arguments}
    if getattr(args, "kind", None):
        echo["kind"] = args.kind
    return echo


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        exc.parser.print_usage(sys.stderr)
        print(f"error: {exc.message}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    cfg = load_config(args.config)
    if args.cache:
        cfg.cache_path = args.cache
    if cfg.cache_path:
        arith.set_cache(arith.FactorizationCache(cfg.cache_path))

    start = perf_counter()
    try:
        payload, lines, probabilistic = _HANDLERS[args.verb](args, cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = (perf_counter() - start) * 1000.0

    if args.format == "json":
        report = {
            "command": _command_echo(args),
            "result": payload,
            "timing_ms": round(elapsed_ms, 3),
            "probabilistic": probabilistic,
        }
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
        if probabilistic:
            print("note: primality beyond the deterministic range; result is probabilistic")
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
