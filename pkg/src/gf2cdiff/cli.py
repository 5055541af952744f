"""Command-line front end.

Exit status: 0 when every check passes, 1 when a counterexample was found,
2 for usage errors (bad flags, invalid moduli, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Callable, Sequence

from . import verifier as V
from .cache import ResultCache, cache_key
from .engine import (PowerFunction, default_threads, apcn_exponent,
                     power_spectra, verify_apcn)
from .errors import FieldError, PreconditionError, UnsupportedFamily
from .field import GF2Field, make_field, parse_modulus
from .records import PropositionReport, SpectrumRecord, emit_report, hexstr

PROP_IDS = {
    "1": ("P1a", "P1b"), "2": ("P2",), "3": ("P3",), "4": ("P4",),
    "5": ("P5",), "6": ("P6",), "7": ("P7",),
    "twisted": ("EQ418_SPECTRUM",), "omega1": ("SPECTRUM_OMEGA1",),
    "alpha-param": ("ALPHA_PARAM",), "alpha-quadratic": ("ALPHA_QUADRATIC",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex value: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table", "text-table"),
                        default="json")
    common.add_argument("--output", "-o", metavar="PATH")
    common.add_argument("--threads", type=int, metavar="N",
                        help="worker threads (default: $FFA_THREADS or 1)")
    common.add_argument("--cache-dir", metavar="DIR")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--deterministic", action="store_true",
                        help="report elapsed_ms as 0 so output is byte-stable")
    common.add_argument("--modulus", type=_hex, metavar="HEX",
                        help="override the default defining polynomial")

    p = _Parser(prog="gf2cdiff", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fld = sub.add_parser("field", help="field parameters")
    fsub = fld.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = fsub.add_parser("info", parents=[common])
    g = info.add_mutually_exclusive_group()
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)

    sp = sub.add_parser("spectrum", parents=[common],
                        help="c-differential spectra of x^d")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="GF(2^(4n)) with the default exponent")
    g.add_argument("--m", type=int, help="GF(2^m); requires --d unless 4 | m")
    sp.add_argument("--d", type=int)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--c", type=_hex)
    g.add_argument("--c-set", choices=("unit_circle", "all"), default="unit_circle")

    ver = sub.add_parser("verify", help="exhaustive checks")
    vsub = ver.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ap = vsub.add_parser("apcn", parents=[common])
    ap.add_argument("--n", type=int, required=True)
    pr = vsub.add_parser("prop", parents=[common])
    pr.add_argument("--id", dest="prop", choices=tuple(PROP_IDS), required=True)
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--c", type=_hex, help="a single admissible c (default: all)")
    pr.add_argument("--mode", choices=("symbolic", "exhaustive", "both"),
                    default="both", help="P5 only")
    pr.add_argument("--domain", choices=("all", "trace_zero"), default="all",
                    help="P4 only")
    pr.add_argument("--sampled", action="store_true",
                    help="P2/P5: first 4096 generator powers as b")
    co = vsub.add_parser("congruence", parents=[common])
    g = co.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--n-max", type=int)

    ca = sub.add_parser("catalog", parents=[common],
                        help="scan a characteristic-2 APcN family")
    ca.add_argument("--family", required=True)
    ca.add_argument("--m", type=int, required=True)
    ca.add_argument("--c-set", default="unit_circle",
                    help="unit_circle, all, or a hex c")
    return p


# -- helpers ------------------------------------------------------------------

def _zero_timing(obj):
    if isinstance(obj, (SpectrumRecord, PropositionReport)):
        return dataclasses.replace(obj, elapsed_ms=0)
    if isinstance(obj, dict):
        return {k: _zero_timing(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_zero_timing(x) for x in obj]
    return obj


class _Runner:
    def __init__(self, args):
        self.args = args
        self.threads = args.threads if args.threads is not None else default_threads()
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        self.cache = None if args.no_cache else ResultCache(args.cache_dir)

    def cached(self, key: str, compute: Callable, load: Callable):
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                return load(hit.value)
        result = compute()
        if self.cache is not None:
            self.cache.put(key, result.to_dict())
        return result

    def spectra(self, F: PowerFunction, cs: list[int]) -> list[SpectrumRecord]:
        mod = F.field.modulus_hex
        keys = [cache_key(mod, F.d, hexstr(c), "spectrum") for c in cs]
        out: dict[int, SpectrumRecord] = {}
        if self.cache is not None:
            for c, k in zip(cs, keys):
                hit = self.cache.get(k)
                if hit is not None:
                    out[c] = SpectrumRecord.from_dict(hit.value)
        todo = [c for c in cs if c not in out]
        for rec in power_spectra(F, todo, self.threads):
            out[rec.c] = rec
            if self.cache is not None:
                self.cache.put(cache_key(mod, F.d, hexstr(rec.c), "spectrum"),
                               rec.to_dict())
        return [out[c] for c in cs]

    def report(self, key_parts: tuple, compute: Callable) -> PropositionReport:
        return self.cached(cache_key(*key_parts), compute, PropositionReport.from_dict)


def _field_for(args, m: int) -> GF2Field:
    if args.modulus is not None:
        deg, _ = parse_modulus(hex(args.modulus))
        if deg != m:
            raise UsageError(f"modulus has degree {deg}, expected {m}")
    return make_field(m, args.modulus)


def _field_info(args, run: _Runner):
    if args.n is not None:
        m = 4 * args.n
    elif args.m is not None:
        m = args.m
    elif args.modulus is not None:
        m = parse_modulus(hex(args.modulus))[0]
    else:
        raise UsageError("one of --m, --n or --modulus is required")
    f = _field_for(args, m)
    info = {"degree": f.degree, "modulus": f.modulus_hex,
            "generator": hexstr(f.generator), "size": f.size,
            "order_factors": list(f.order_factors)}
    if args.format == "json":
        return json.dumps(info, sort_keys=True, indent=2).encode() + b"\n", 0
    rows = [(k, ";".join(map(str, v)) if isinstance(v, list) else str(v))
            for k, v in info.items()]
    if args.format == "csv":
        return (",".join(k for k, _ in rows) + "\n"
                + ",".join(v for _, v in rows) + "\n").encode(), 0
    w = max(len(k) for k, _ in rows)
    return "".join(f"{k.rjust(w)}  {v}\n" for k, v in rows).encode(), 0


def _spectrum(args, run: _Runner):
    if args.n is not None:
        m, d = 4 * args.n, args.d if args.d is not None else apcn_exponent(args.n)
    else:
        m = args.m
        if args.d is None:
            if m % 4:
                raise UsageError("--d is required when 4 does not divide --m")
            d = apcn_exponent(m // 4)
        else:
            d = args.d
    f = _field_for(args, m)
    cs = [args.c] if args.c is not None else V.resolve_c_set(f, args.c_set)
    records = run.spectra(PowerFunction(f, d), cs)
    return records[0] if args.c is not None else records, 0


def _apcn(args, run: _Runner):
    f = _field_for(args, 4 * args.n) if 1 <= args.n <= 8 else None
    mod = f.modulus_hex if f else ""
    rep = run.report((mod, apcn_exponent(args.n), "all", "verify:APCN"),
                     lambda: verify_apcn(args.n, run.threads, args.modulus))
    return rep, 0 if rep.passed else 1


def _prop(args, run: _Runner):
    f = _field_for(args, 4 * args.n)
    cs = None if args.c is None else [args.c]
    reports = []
    for pid in PROP_IDS[args.prop]:
        extra = {"P5": f"{args.mode}:{args.sampled}", "P2": f"{args.sampled}",
                 "P4": args.domain}.get(pid, "")
        key = (f.modulus_hex, apcn_exponent(args.n),
               "all" if cs is None else hexstr(args.c), f"verify:{pid}", extra)
        reports.append(run.report(key, lambda pid=pid: V.run_check(
            pid, args.n, cs=cs, modulus=args.modulus, threads=run.threads,
            mode=args.mode, sampled=args.sampled, domain=args.domain)))
    ok = all(r.passed for r in reports)
    return (reports[0] if len(reports) == 1 else reports), 0 if ok else 1


def _congruence(args, run: _Runner):
    ns = [args.n] if args.n is not None else list(range(1, args.n_max + 1))
    if min(ns) < 1:
        raise UsageError("n must be positive")
    reports = [V.congruence_check(n) for n in ns]
    ok = all(r.passed for r in reports)
    return (reports[0] if len(reports) == 1 else reports), 0 if ok else 1


def _catalog(args, run: _Runner):
    d = V.family_exponent(args.family, args.m)
    f = _field_for(args, args.m)
    records = run.spectra(PowerFunction(f, d), V.resolve_c_set(f, args.c_set))
    report = V.catalog_report(args.family, args.m, args.c_set, args.modulus,
                              records=records)
    if args.format == "json":
        out = {"apcn_c": [hexstr(c) for c in V.apcn_points(records)],
               "records": records, "report": report}
    else:
        out = records
    return out, 0 if report.passed else 1


def _dispatch(args, run: _Runner):
    if args.command == "field":
        return _field_info(args, run)
    if args.command == "spectrum":
        return _spectrum(args, run)
    if args.command == "catalog":
        return _catalog(args, run)
    return {"apcn": _apcn, "prop": _prop, "congruence": _congruence}[args.action](args, run)


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        run = _Runner(args)
        result, code = _dispatch(args, run)
    except UsageError as exc:
        print(f"gf2cdiff: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (FieldError, PreconditionError, UnsupportedFamily, ValueError) as exc:
        print(f"gf2cdiff: error: {exc}", file=sys.stderr)
        return 2
    if not isinstance(result, bytes):
        if args.deterministic:
            result = _zero_timing(result)
        result = emit_report(result, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(result)
    else:
        sys.stdout.buffer.write(result)
        sys.stdout.flush()
    return code


def main() -> None:
    sys.exit(run_cli())
