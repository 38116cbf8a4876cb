"""Table and figure datasets rendered as deterministic CSV or JSON."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arithmetic import H0, ID, PARITY, SIGMA, ArithmeticFunction
from .classical import AIRY_I1, SZEGO_EXPONENT, szego_gamma
from .families import FamilyCache
from .rootloc import extremal_zeros, max_complex_magnitude, ratio_row, root_points, stripped

CACHE_ENV = "ZEROTRANSFER_CACHE_DIR"
FIGURE_COLUMNS = ("family", "n", "root_index", "re", "im", "is_real")
FIGURE_DECIMALS = 10


class ExtendedRangeError(ValueError):
    """Rows beyond the default range were requested without opting in."""


@dataclass(frozen=True)
class TableSpec:
    id: str
    columns: tuple
    decimals: Optional[int]
    default_n: tuple
    extended_n: tuple
    # largest n computed without --extended
    limit: int

    def n_range(self, extended: bool = False) -> tuple:
        return self.default_n + (self.extended_n if extended else ())


def _primes(upto: int) -> tuple:
    return tuple(n for n in range(2, upto + 1) if all(n % d for d in range(2, int(n**0.5) + 1)))


TABLES = {
    "alphabeta": TableSpec(
        "alphabeta", ("n", "alpha", "beta", "alpha_ratio", "beta_ratio"), 4,
        tuple(range(2, 11)) + (20, 100), (120, 200), 100,
    ),
    "szego": TableSpec(
        "szego", ("n", "alpha_tilde", "scaled_alpha", "gamma"), 6,
        tuple(range(2, 11)) + (20,), tuple(range(30, 101, 10)), 20,
    ),
    "observation": TableSpec(
        "observation", ("n", "alpha", "beta", "alpha_ratio", "beta_ratio"), 6,
        (2, 3, 5, 7, 11, 13, 17, 19, 23, 47), (149, 257), 60,
    ),
    "betraege": TableSpec(
        "betraege", ("n", "max_abs"), 9,
        tuple(range(2, 11)) + tuple(range(20, 101, 10)), (), 100,
    ),
    "lehmerQ": TableSpec("lehmerQ", ("n", "value"), None, tuple(range(1, 21)), (), 20),
    "fig2": TableSpec("fig2", FIGURE_COLUMNS, FIGURE_DECIMALS, tuple(range(2, 101)), tuple(range(101, 201)), 100),
    "figQP": TableSpec("figQP", FIGURE_COLUMNS, FIGURE_DECIMALS, _primes(100), (), 100),
    "figAA": TableSpec("figAA", FIGURE_COLUMNS, FIGURE_DECIMALS, tuple(range(1, 11)), (), 10),
}


@dataclass(frozen=True)
class Config:
    decimals: Optional[int] = None
    extended: bool = False
    seed: int = 0
    width: Optional[Fraction] = None
    i1: float = AIRY_I1
    szego_exponent: float = SZEGO_EXPONENT
    workers: int = 1
    cache_dir: Optional[str] = None
    format: str = "csv"

    def resolved_cache_dir(self) -> Optional[str]:
        return self.cache_dir or os.environ.get(CACHE_ENV) or None

    def row_width(self, spec: TableSpec) -> Fraction:
        if self.width is not None:
            return self.width
        # a few digits past the printed ones keep rounding stable
        return Fraction(1, 10 ** ((self.decimals or spec.decimals or 0) + 6))


def round_half_away(value, decimals: int) -> str:
    """Fixed-point rendering, ties away from zero, no negative zero."""
    if isinstance(value, Fraction):
        d = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        d = Decimal(repr(float(value)))
    q = d.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP)
    if q == 0:
        q = abs(q)
    return format(q, "f")


# -- family access ----------------------------------------------------------

_caches: dict = {}


def _cache(directory) -> FamilyCache:
    if directory not in _caches:
        _caches[directory] = FamilyCache(directory)
    return _caches[directory]


def family(g: ArithmeticFunction, h: ArithmeticFunction, n_max: int, cache_dir=None):
    return _cache(cache_dir).get(g, h, n_max)


# -- rows ---------------------------------------------------------------------
# Each row function returns raw values; rendering happens once, afterwards.


def _ratio_values(g, n, width, cache_dir, n_top):
    qfam = family(g, H0, n_top, cache_dir)
    pfam = family(g, ID, n_top, cache_dir)
    r = ratio_row(g, n, width, qfam, pfam)
    return [[n, r.alpha, r.beta, r.alpha_ratio, r.beta_ratio]]


def _szego_values(n, width, cache_dir, n_top, cfg):
    q = extremal_zeros(family(ID, H0, n_top, cache_dir), n, width, all_roots=False)
    p = extremal_zeros(family(ID, ID, n_top, cache_dir), n, width, all_roots=False)
    return [[n, p.alpha.midpoint, (n - 1) * q.alpha.midpoint,
             szego_gamma(n, cfg.i1, cfg.szego_exponent)]]


def _figure_rows(tag, fam, n, width):
    # conjugate pairs can differ in the last bits of the real part; order on
    # the rendered precision so the pair always comes out lower half first
    pts = sorted(root_points(stripped(fam[n]), width),
                 key=lambda t: (round(t[0], FIGURE_DECIMALS), round(t[1], FIGURE_DECIMALS)))
    return [[tag, n, i, re, im, int(real)] for i, (re, im, real) in enumerate(pts)]


def compute_rows(table_id: str, n: int, cfg: Config, n_top: int) -> list:
    spec = TABLES[table_id]
    width = cfg.row_width(spec)
    cd = cfg.resolved_cache_dir()
    if table_id == "alphabeta":
        return _ratio_values(ID, n, width, cd, n_top)
    if table_id == "observation":
        return _ratio_values(SIGMA, n, width, cd, n_top)
    if table_id == "szego":
        return _szego_values(n, width, cd, n_top, cfg)
    if table_id == "betraege":
        return [[n, max_complex_magnitude(stripped(family(PARITY, H0, n_top, cd)[n]))]]
    if table_id == "lehmerQ":
        return [[n, int(family(SIGMA, H0, n_top, cd)[n](Fraction(-1)))]]
    if table_id == "fig2":
        # smallest real zeros of Q_n^sigma(x) and of P_n^sigma((n-1)x)
        q = extremal_zeros(family(SIGMA, H0, n_top, cd), n, width, all_roots=False)
        p = extremal_zeros(family(SIGMA, ID, n_top, cd), n, width, all_roots=False)
        rows = []
        if q.alpha is not None:
            rows.append(["Q:sigma", n, 0, q.alpha.midpoint, 0.0, 1])
        if p.alpha is not None:
            rows.append(["P:sigma:scaled", n, 0, p.alpha.midpoint / (n - 1), 0.0, 1])
        return rows
    if table_id == "figQP":
        return (_figure_rows("Q:sigma", family(SIGMA, H0, n_top, cd), n, width)
                + _figure_rows("P:sigma", family(SIGMA, ID, n_top, cd), n, width))
    if table_id == "figAA":
        return (_figure_rows("Q:parity", family(PARITY, H0, n_top, cd), n, width)
                + _figure_rows("P:parity", family(PARITY, ID, n_top, cd), n, width))
    raise KeyError(table_id)


def _worker(args):
    return compute_rows(*args)


def check_range(spec: TableSpec, n_list, extended: bool) -> None:
    too_big = [n for n in n_list if n > spec.limit]
    if too_big and not extended:
        raise ExtendedRangeError(
            f"{spec.id}: n={too_big} lies beyond the default range (n <= {spec.limit}); "
            f"pass --extended to compute these rows"
        )
    low = 2 if spec.id in ("alphabeta", "szego", "observation", "fig2") else 1
    bad = [n for n in n_list if n < low]
    if bad:
        raise ValueError(f"{spec.id}: rows start at n = {low}, got {bad}")


def build(table_id: str, cfg: Config = Config(), n_list=None) -> dict:
    """Rows of a table as rendered strings, in ascending ``n`` order."""
    if table_id not in TABLES:
        raise KeyError(f"unknown table {table_id!r}; expected one of {sorted(TABLES)}")
    spec = TABLES[table_id]
    n_list = sorted(set(n_list)) if n_list else list(spec.n_range(cfg.extended))
    check_range(spec, n_list, cfg.extended)
    n_top = max(n_list)
    jobs = [(table_id, n, cfg, n_top) for n in n_list]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_worker, jobs))
    else:
        chunks = [compute_rows(*job) for job in jobs]
    decimals = cfg.decimals if cfg.decimals is not None else spec.decimals
    rows = [_render(row, decimals) for chunk in chunks for row in chunk]
    return {"table": table_id, "columns": list(spec.columns), "decimals": decimals, "rows": rows}


def _render(row, decimals) -> list:
    out = []
    for v in row:
        if isinstance(v, (str, int)) and not isinstance(v, bool):
            out.append(str(v))
        else:
            out.append(round_half_away(v, decimals))
    return out


def to_csv(result: dict) -> str:
    lines = [",".join(result["columns"])] + [",".join(r) for r in result["rows"]]
    return "\n".join(lines) + "\n"


def to_json(result: dict) -> str:
    def cell(s):
        try:
            return int(s)
        except ValueError:
            try:
                return float(s)
            except ValueError:
                return s

    doc = dict(result, rows=[[cell(c) for c in r] for r in result["rows"]])
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write(result: dict, out, fmt: str = "csv") -> Path:
    text = to_csv(result) if fmt == "csv" else to_json(result)
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def run(table_id: str, out, cfg: Config = Config(), n_list=None) -> Path:
    return write(build(table_id, cfg, n_list), out, cfg.format)
