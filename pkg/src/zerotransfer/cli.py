"""``zerotransfer`` command line.

Exit codes: 0 when everything requested passes, 1 when a verification fails,
2 for usage errors (unknown ids, bad values, rows beyond the default range
without ``--extended``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import fields
from fractions import Fraction
from pathlib import Path

from . import tables
from .arithmetic import H0, HERMITE, ID, PARITY, SIGMA, SpecError, parse, sigma
from .classical import IDENTITIES, tau_values, verify_identity
from .families import FamilyCache
from .poly import as_fraction
from .rootloc import extremal_zeros, magnitude_bound_check
from .transfer import (
    HypothesisError,
    check_links,
    check_rechts,
    hermite_bound_check,
    laguerre_chebyshev_containment,
    laguerre_zero_bounds,
    lehmer_scan,
    random_instances,
)

log = logging.getLogger("zerotransfer")

SIGN_CATALOG = {"sigma": SIGMA, "id": ID, "parity": PARITY, "hermite": HERMITE}
LEMMA_G = (SIGMA, sigma(2), ID, PARITY, HERMITE)
LEMMA_H = (ID, H0, SIGMA)
MAGNITUDE_KAPPA = {"sigma": Fraction(119, 11), "parity": Fraction(571, 100)}


class UsageError(Exception):
    pass


# -- helpers ----------------------------------------------------------------


def _parse_family(text: str):
    """``Q:<g>``, ``P:<g>`` (h = id) or ``P:<g>:<h>``."""
    kind, _, rest = text.partition(":")
    if kind not in ("P", "Q") or not rest:
        raise UsageError(f"family must look like Q:sigma, P:id or P:sigma:h0, got {text!r}")
    if kind == "Q":
        return parse(rest), H0
    try:
        return parse(rest), ID
    except SpecError:
        g, _, h = rest.rpartition(":")
        return parse(g), parse(h)


def _emit(text: str, out) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _n_list(values):
    if not values:
        return None
    out = []
    for v in values:
        for part in str(v).split(","):
            if "-" in part.strip("-"):
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    return out


def _config(args) -> tables.Config:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
        known = {f.name for f in fields(tables.Config)}
        unknown = set(base) - known - {"n", "out"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key in ("n", "out"):
            if key in base and getattr(args, key, None) in (None, []):
                setattr(args, key, base[key])
        base = {k: v for k, v in base.items() if k in known}
    overrides = {
        "decimals": args.decimals,
        "extended": args.extended or None,
        "seed": args.seed,
        "width": args.width,
        "i1": args.i1,
        "szego_exponent": args.szego_exponent,
        "workers": args.workers,
        "cache_dir": args.cache_dir,
        "format": args.format,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    if base.get("width") is not None:
        base["width"] = as_fraction(str(base["width"]))
    return tables.Config(**base)


# -- subcommands --------------------------------------------------------------


def cmd_table(args, cfg) -> int:
    try:
        result = tables.build(args.id, cfg, _n_list(args.n))
    except tables.ExtendedRangeError as exc:
        raise UsageError(str(exc)) from exc
    text = tables.to_csv(result) if cfg.format == "csv" else tables.to_json(result)
    _emit(text, args.out)
    return 0


def _verify_lemma(args, cfg, lines):
    insts = random_instances(args.count or 200, cfg.seed, LEMMA_G, LEMMA_H, n_max=args.n_max or 30)
    for inst in insts:
        d = inst.to_json()
        lines.append(json.dumps({k: d[k] for k in ("g", "h", "n", "x", "y", "residual", "ok", "seed")}))
    return all(i.ok for i in insts)


def _verify_identities(args, cfg, lines):
    ok = True
    for name in IDENTITIES:
        bad = [n for n in range(1, (args.n_max or 60) + 1) if not verify_identity(name, n).holds]
        lines.append(json.dumps({"identity": name, "n_max": args.n_max or 60, "failures": bad, "ok": not bad}))
        ok = ok and not bad
    return ok


def _verify_sign(check, args, cfg, lines):
    ok = True
    for gname, g in SIGN_CATALOG.items():
        for n in range(1, (args.n_max or 20) + 1):
            rec = {"theorem": check.__name__[6:], "g": gname, "h": "id", "n": n, "seed": cfg.seed}
            try:
                res = check(g, ID, n, seed=cfg.seed)
            except HypothesisError as exc:
                rec.update(applicable=False, reason=str(exc), ok=True)
            else:
                rec.update(applicable=True, threshold=str(res.threshold),
                           probes=len(res.probes), ok=res.passed)
                ok = ok and res.passed
            lines.append(json.dumps(rec))
    return ok


def _verify_bounds(args, cfg, lines):
    checks = []
    checks.append(("laguerre_chebyshev", [laguerre_chebyshev_containment(n).ok for n in range(2, 61)]))
    checks.append(("laguerre", [laguerre_zero_bounds(m).ok for m in range(2, 31)]))
    herm = [hermite_bound_check(n) for n in range(2, 31)]
    checks.append(("hermite", [herm[0].equality] + [h.ok and not h.equality for h in herm[1:]]))
    cache = FamilyCache(cfg.resolved_cache_dir())
    for name, kappa in MAGNITUDE_KAPPA.items():
        fam = cache.get(SIGN_CATALOG[name], ID, 30)
        checks.append((f"magnitude:{name}", list(magnitude_bound_check(fam, 30, float(kappa)).values())))
    for name, oks in checks:
        lines.append(json.dumps({"bound": name, "cases": len(oks), "ok": all(oks)}))
    return all(all(oks) for _, oks in checks)


def _verify_lehmer(args, cfg, lines):
    scan = lehmer_scan(args.n_max or 50)
    lines.append(json.dumps({"check": "lehmer_sum", "n_max": args.n_max or 50,
                             "zeros": [[n, str(z)] for n, z in scan.zeros],
                             "table_mismatches": list(scan.table_mismatches), "ok": scan.ok}))
    taus = tau_values(2000)
    tau_ok = all(taus)
    lines.append(json.dumps({"check": "tau_nonzero", "n_max": 2000, "ok": tau_ok}))
    return scan.ok and tau_ok


VERIFIERS = {
    "lemma": _verify_lemma,
    "identities": _verify_identities,
    "links": lambda a, c, l: _verify_sign(check_links, a, c, l),
    "rechts": lambda a, c, l: _verify_sign(check_rechts, a, c, l),
    "bounds": _verify_bounds,
    "lehmer": _verify_lehmer,
}


def cmd_verify(args, cfg) -> int:
    lines = []
    t0 = time.perf_counter()
    ok = VERIFIERS[args.what](args, cfg, lines)
    _emit("\n".join(lines) + "\n", args.out)
    log.info("verify %s: %s in %.1fs", args.what, "pass" if ok else "FAIL", time.perf_counter() - t0)
    return 0 if ok else 1


def cmd_zeros(args, cfg) -> int:
    g, h = _parse_family(args.family)
    if args.index < 1:
        raise UsageError("n must be >= 1")
    fam = FamilyCache(cfg.resolved_cache_dir()).get(g, h, args.index)
    width = cfg.width or Fraction(1, 10**12)
    report = extremal_zeros(fam, args.index, width, magnitude=True, prefix=True)
    _emit(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_cache(args, cfg) -> int:
    g, h = _parse_family(args.family)
    if args.index < 1:
        raise UsageError("n must be >= 1")
    directory = args.out or cfg.resolved_cache_dir()
    if not directory:
        raise UsageError(f"give --out or set {tables.CACHE_ENV}")
    fam = FamilyCache(directory).get(g, h, args.index)
    print(f"{fam.tag} cached up to n={fam.n_max} in {directory}")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (stdout when omitted); cache directory for `cache`")
    common.add_argument("--decimals", type=int)
    common.add_argument("--extended", action="store_true", help="allow rows beyond the default range")
    common.add_argument("--seed", type=int)
    common.add_argument("--width", help="isolating interval width, e.g. 1/10**12 as 1/1000000000000")
    common.add_argument("--i1", type=float, help="Airy zero used by the szego column")
    common.add_argument("--szego-exponent", type=float, dest="szego_exponent")
    common.add_argument("--config", help="JSON file with any of the flags above")
    common.add_argument("--workers", type=int)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--cache-dir", dest="cache_dir", help=f"overrides ${tables.CACHE_ENV}")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="zerotransfer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="write a table or figure dataset")
    p.add_argument("id", choices=sorted(tables.TABLES))
    p.add_argument("--n", nargs="+", help="rows to compute, e.g. 2-10 20 100")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("what", choices=sorted(VERIFIERS))
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--count", type=int, help="number of random lemma instances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeros", parents=[common], help="zero report for one family member")
    p.add_argument("family", help="Q:<g>, P:<g> or P:<g>:<h>")
    p.add_argument("index", type=int, metavar="n")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("cache", parents=[common], help="compute and store exact coefficients")
    p.add_argument("family")
    p.add_argument("index", type=int, metavar="n")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (UsageError, SpecError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"zerotransfer: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
