"""Command-line front end.

Subcommands: group, kl, klbasis, mu, bs, andersen, table, filtration,
bench, cache.  Exit codes: 0 success, 2 usage errors, 3 domain errors
(diagnostics go to stderr).  All numeric output is exact.

Tables of canonical-basis data persist as JSON-lines files: a header
record {"format": "klcache", "version": 1, "group": ..., "normalization":
"soergel-v"} followed by one self-contained record per (x, y) pair with
the h-coefficients as [exponent, coefficient] pairs, in canonical order
(x by length then key, y likewise, exponents ascending), so that loading
and re-saving a file reproduces it byte for byte.  The environment
variable KL_CACHE_DIR sets the default cache location; --no-cache
disables persistence.  Files are written atomically.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time

from .andersen import BlockDescriptor, andersen_layers, cross_check, full_block_table
from .characters import bs_character, decompose_kl
from .coxeter import CoxeterSystem, build_system
from .errors import DomainError
from .filtration import PSeriesMatrix, pairing_layer_dims, smith_valuations
from .hecke import KLTable
from .laurent import LaurentPoly
from .parabolic import parse_subset

CACHE_FORMAT = "klcache"
CACHE_VERSION = 1
NORMALIZATION = "soergel-v"


# --------------------------------------------------------------------------
# cache files
# --------------------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def save_cache(table: KLTable, path: str) -> None:
    header = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "group": table.system.descriptor(),
        "normalization": NORMALIZATION,
    }
    lines = [_dumps(header)]
    for x, y, pairs in table.rows():
        lines.append(
            _dumps({"x": x.word_str(), "y": y.word_str(), "h": [list(p) for p in pairs]})
        )
    payload = "\n".join(lines) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".klcache-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def read_cache_header(path: str) -> dict:
    with open(path) as fh:
        header = json.loads(fh.readline())
    if header.get("format") != CACHE_FORMAT or header.get("version") != CACHE_VERSION:
        raise ValueError(f"{path}: not a version-{CACHE_VERSION} {CACHE_FORMAT} file")
    if header.get("normalization") != NORMALIZATION:
        raise ValueError(f"{path}: unexpected normalization {header.get('normalization')!r}")
    return header


def load_cache(path: str, system: CoxeterSystem | None = None) -> KLTable:
    header = read_cache_header(path)
    if system is None:
        group = header["group"]
        system = (
            build_system(json.loads(group[4:]))
            if isinstance(group, str) and group.startswith("cox:")
            else build_system(group)
        )
    elif header["group"] != system.descriptor():
        raise ValueError(
            f"{path}: cache is for group {header['group']!r}, not {system.descriptor()!r}"
        )
    table = KLTable(system)
    by_x: dict[str, list] = {}
    with open(path) as fh:
        fh.readline()
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            by_x.setdefault(rec["x"], []).append(rec)
    for xword, recs in by_x.items():
        x = system.element(xword)
        table.load_row(
            x,
            [
                (system.element(rec["y"]), tuple((e, c) for e, c in rec["h"]))
                for rec in recs
            ],
        )
    return table


def _cache_path(directory: str, system: CoxeterSystem) -> str:
    desc = system.descriptor()
    slug = desc if desc.isalnum() else "cox-" + hashlib.sha256(desc.encode()).hexdigest()[:16]
    return os.path.join(directory, f"{slug}.klcache")


def _table_for(args, system: CoxeterSystem) -> tuple[KLTable, str | None]:
    """A KL table, preloaded from the cache directory when one is active."""
    directory = getattr(args, "cache_dir", None) or os.environ.get("KL_CACHE_DIR")
    if getattr(args, "no_cache", False) or not directory:
        return KLTable(system), None
    path = _cache_path(directory, system)
    if os.path.exists(path):
        return load_cache(path, system), path
    return KLTable(system), path


def _persist(table: KLTable, path: str | None) -> None:
    if path is not None:
        save_cache(table, path)


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------

def _emit(args, data: dict | list, text_lines: list[str]) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "text":
        for line in text_lines:
            print(line)
    elif fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    elif fmt in ("csv", "latex"):
        rows = data if isinstance(data, list) else [data]
        flat = [_flatten(r) for r in rows]
        headers = sorted({k for r in flat for k in r})
        if fmt == "csv":
            print(",".join(headers))
            for r in flat:
                print(",".join(_csv_cell(str(r.get(h, ""))) for h in headers))
        else:
            print("\\begin{tabular}{" + "l" * len(headers) + "}")
            print(" & ".join(headers) + r" \\")
            for r in flat:
                print(" & ".join(str(r.get(h, "")) for h in headers) + r" \\")
            print("\\end{tabular}")


def _flatten(record: dict) -> dict:
    out = {}
    for k, v in record.items():
        if isinstance(v, dict):
            out[k] = ";".join(f"{i}:{d}" for i, d in sorted(v.items()))
        else:
            out[k] = v
    return out


def _csv_cell(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_group(args) -> int:
    system = build_system(args.type)
    data = {
        "type": system.descriptor(),
        "order": system.order,
        "longest_length": system.longest_length,
        "positive_roots": system.n_positive_roots,
        "coxeter_matrix": [list(r) for r in system.coxeter_matrix],
    }
    _emit(
        args,
        data,
        [
            f"type: {data['type']}",
            f"order: {data['order']}",
            f"l(w0): {data['longest_length']}",
            f"positive roots: {data['positive_roots']}",
        ],
    )
    return 0


def _cmd_kl(args) -> int:
    system = build_system(args.type)
    table, path = _table_for(args, system)
    y, x = system.element(args.y), system.element(args.x)
    h = table.h_polynomial(y, x)
    P = table.kl_polynomial(y, x)
    _persist(table, path)
    data = {
        "y": y.word_str(),
        "x": x.word_str(),
        "P": P.canonical_str("q"),
        "h": h.canonical_str("v"),
    }
    _emit(args, data, [f"P = {data['P']}", f"h = {data['h']}"])
    return 0


def _cmd_klbasis(args) -> int:
    system = build_system(args.type)
    table, path = _table_for(args, system)
    x = system.element(args.x)
    c = table.kl_basis(x)
    _persist(table, path)
    terms = {
        (y.word_str() or "e"): p.canonical_str("v")
        for y, p in sorted(c.terms.items(), key=lambda t: (t[0].length, t[0].key))
    }
    data = {"x": x.word_str(), "terms": terms}
    _emit(args, data, [f"H({w}) : {p}" for w, p in terms.items()])
    return 0


def _cmd_mu(args) -> int:
    system = build_system(args.type)
    table, path = _table_for(args, system)
    y, x = system.element(args.y), system.element(args.x)
    m = table.mu(y, x)
    _persist(table, path)
    _emit(args, {"y": y.word_str(), "x": x.word_str(), "mu": m}, [str(m)])
    return 0


def _cmd_bs(args) -> int:
    system = build_system(args.type)
    table, path = _table_for(args, system)
    word = args.word
    h = bs_character(table, _parse_word_arg(word))
    mults = decompose_kl(h, table)
    _persist(table, path)
    terms = {
        (y.word_str() or "e"): p.canonical_str("v")
        for y, p in sorted(h.terms.items(), key=lambda t: (t[0].length, t[0].key))
    }
    dec = {
        (y.word_str() or "e"): p.canonical_str("v")
        for y, p in sorted(mults.items(), key=lambda t: (t[0].length, t[0].key))
    }
    data = {"word": word, "character": terms, "decomposition": dec}
    lines = ["character:"]
    lines += [f"  H({w}) : {p}" for w, p in terms.items()]
    lines.append("canonical decomposition:")
    lines += [f"  C({w}) : {p}" for w, p in dec.items()]
    _emit(args, data, lines)
    return 0


def _parse_word_arg(word: str):
    from .coxeter import parse_word

    return parse_word(word)


def _cmd_andersen(args) -> int:
    system = build_system(args.type)
    block = BlockDescriptor(system, parse_subset(args.singular))
    # share the cache-backed table when available
    table, path = _table_for(args, system)
    block.kl_table = table
    report = andersen_layers(block, args.ybar, args.xbar)
    _persist(table, path)
    data = report.to_dict()
    data["cross_check"] = cross_check(report)
    lines = [f"{k}: {v}" for k, v in data.items()]
    _emit(args, data, lines)
    return 0


def _cmd_table(args) -> int:
    system = build_system(args.type)
    block = BlockDescriptor(system, parse_subset(args.singular))
    table, path = _table_for(args, system)
    block.kl_table = table
    reports = full_block_table(block)
    _persist(table, path)
    data = [r.to_dict() for r in reports]
    lines = [
        "ybar={ybar} xbar={xbar} ldiff={ldiff} P={P} layers={layers} total={total}".format(**d)
        for d in data
    ]
    _emit(args, data, lines)
    return 0


def _cmd_filtration(args) -> int:
    with open(args.matrix) as fh:
        grid_text = json.load(fh)
    if not isinstance(grid_text, list) or any(not isinstance(r, list) for r in grid_text):
        raise ValueError("matrix file must hold a JSON array of arrays of polynomial strings")
    grid = [[LaurentPoly.parse(cell, "v") for cell in row] for row in grid_text]
    for row in grid:
        for p in row:
            v = p.valuation()
            if v is not None and v < 0:
                raise ValueError("matrix entries must have non-negative exponents")
    matrix = PSeriesMatrix.from_polys(grid, args.trunc)
    vals = smith_valuations(matrix)
    layers = pairing_layer_dims(matrix)
    data = {
        "truncation": matrix.truncation,
        "valuations": vals,
        "layers": {str(i): d for i, d in sorted(layers.items())},
    }
    _emit(
        args,
        data,
        [
            f"truncation: {matrix.truncation}",
            f"valuations: {vals}",
            "layers: " + ", ".join(f"{i}:{d}" for i, d in sorted(layers.items())),
        ],
    )
    return 0


def _cmd_bench(args) -> int:
    system = build_system(args.type)
    table = KLTable(system)
    start = time.perf_counter()
    table.compute_all()
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    data = {
        "type": system.descriptor(),
        "elements": system.order,
        "entries": table.entry_count(),
        "elapsed_ms": elapsed_ms,
    }
    _emit(
        args,
        data,
        [f"{system.descriptor()}: {data['entries']} entries over "
         f"{data['elements']} elements in {elapsed_ms} ms"],
    )
    return 0


def _cmd_cache(args) -> int:
    if args.action == "save":
        if not args.type:
            raise ValueError("cache save requires --type")
        system = build_system(args.type)
        table = KLTable(system)
        table.compute_all()
        save_cache(table, args.path)
        print(f"saved {table.entry_count()} entries to {args.path}")
        return 0
    if args.action == "load":
        table = load_cache(args.path)
        print(
            f"loaded {table.entry_count()} entries for group "
            f"{table.system.descriptor()} from {args.path}"
        )
        return 0
    # verify: recompute every loaded row and compare
    table = load_cache(args.path)
    fresh = KLTable(table.system)
    bad = 0
    for x, y, pairs in table.rows():
        xf = fresh.system.element(x.word_str())
        yf = fresh.system.element(y.word_str())
        if fresh.h_polynomial(yf, xf) != LaurentPoly(pairs):
            bad += 1
    if bad:
        print(f"FAIL: {bad} cached entries disagree with recomputation", file=sys.stderr)
        return 3
    print(f"verified {table.entry_count()} entries")
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
    if fmt:
        p.add_argument(
            "--format", choices=("text", "json", "csv", "latex"), default="text"
        )
    p.add_argument("--cache-dir", default=None, help="override KL_CACHE_DIR")
    p.add_argument("--no-cache", action="store_true", help="disable cache persistence")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxkl",
        description="Exact Kazhdan-Lusztig data and hom-filtration layers "
        "for finite Coxeter groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="order, longest length, positive-root count")
    p.add_argument("--type", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("kl", help="P_{y,x} and h_{y,x}")
    p.add_argument("--type", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_kl)

    p = sub.add_parser("klbasis", help="canonical basis element term list")
    p.add_argument("--type", required=True)
    p.add_argument("--x", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_klbasis)

    p = sub.add_parser("mu", help="the mu coefficient of a pair")
    p.add_argument("--type", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--x", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("bs", help="product character of a word and its decomposition")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_bs)

    p = sub.add_parser("andersen", help="layer report for one coset pair")
    p.add_argument("--type", required=True)
    p.add_argument("--singular", default="")
    p.add_argument("--ybar", required=True)
    p.add_argument("--xbar", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_andersen)

    p = sub.add_parser("table", help="full block table of layer reports")
    p.add_argument("--type", required=True)
    p.add_argument("--singular", default="")
    _add_common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("filtration", help="Smith valuations of a matrix file")
    p.add_argument("--matrix", required=True, help="JSON array of arrays of polynomials")
    p.add_argument("--trunc", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_filtration)

    p = sub.add_parser("bench", help="time full table generation")
    p.add_argument("--type", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("cache", help="save / load / verify a table file")
    p.add_argument("action", choices=("save", "load", "verify"))
    p.add_argument("--path", required=True)
    p.add_argument("--type", default=None)
    p.set_defaults(func=_cmd_cache)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
