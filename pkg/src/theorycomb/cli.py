"""Command-line front end.

Exit status: 0 for sat or success, 1 for unsat or a negative result, 2 for
usage and validation errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import logic as L
from .combine import ENGINES, combine
from .errors import TheoryCombError, UnsatisfiableInput
from .minmod import minmod_of
from .models import DEFAULT_MAX_SIZE
from .reductions import (
    FAMILIES,
    family_members,
    fixpoint_query,
    make_analytic_oracle,
    make_bruteforce_oracle,
    orbit_query,
    probe_F_infinity,
    recover_f,
    recover_g,
)
from .spectra import card_text
from .theories import THEORY_NAMES, make_theory
from .theories.params import OracleTables, default_tables, load_tables
from .theory import decide_qf, spectrum_qf

EXIT_OK, EXIT_NEG, EXIT_USAGE = 0, 1, 2
MAX_SIZE_CEILING = 8


class UsageError(TheoryCombError):
    pass


def _tables(args) -> OracleTables:
    base = default_tables()
    if not args.params:
        return base
    loaded = load_tables(args.params)
    # tables missing from the file fall back to the built-in ones
    for name in ("f", "g", "F", "h"):
        if getattr(loaded, name) is None:
            setattr(loaded, name, getattr(base, name))
    return loaded


def _formula_texts(args) -> list:
    if args.formula:
        return [Path(args.formula).read_text()]
    if args.expr:
        return [args.expr]
    lines = Path(args.batch).read_text().splitlines()
    return [ln for ln in lines if ln.strip() and not ln.lstrip().startswith(";")]


# ---------------------------------------------------------------------------
# per-formula commands; each returns (line, status)


def _decide(args, tables, text):
    th = make_theory(args.theory, tables)
    phi = L.parse_formula(text, th.sig)
    return ("sat", EXIT_OK) if decide_qf(th, phi) else ("unsat", EXIT_NEG)


def _spectrum(args, tables, text):
    th = make_theory(args.theory, tables)
    spec = spectrum_qf(th, L.parse_formula(text, th.sig))
    return str(spec), (EXIT_NEG if spec.is_empty() else EXIT_OK)


def _witness(args, tables, text):
    th = make_theory(args.theory, tables)
    th.require("witness")
    phi = L.parse_formula(text, th.sig)
    cubes = [L.as_cube(phi)] if L.is_cube_like(phi) else L.to_dnf(phi)
    return " | ".join(L.to_text(th.witness(c)) for c in cubes), EXIT_OK


def _minmod(args, tables, text):
    th = make_theory(args.theory, tables)
    phi = L.parse_formula(text, th.sig)
    try:
        return card_text(minmod_of(th, phi)), EXIT_OK
    except UnsatisfiableInput:
        return "unsat", EXIT_NEG


def _combine(args, tables, text):
    t1, t2 = make_theory(args.t1, tables), make_theory(args.t2, tables)
    phi = L.parse_formula(text, t1.sig | t2.sig)
    res = combine(args.engine, t1, t2, phi)
    line = "sat" if res.sat else "unsat"
    if args.verbosity >= 1 and res.arrangement is not None:
        line += f" {res.arrangement}"
    if args.verbosity >= 2 and res.detail:
        line += " ; " + " ; ".join(res.detail)
    return line, (EXIT_OK if res.sat else EXIT_NEG)


FORMULA_COMMANDS = {
    "decide": _decide,
    "spectrum": _spectrum,
    "witness": _witness,
    "minmod": _minmod,
    "combine": _combine,
}


def _run_formulas(args, tables, out: list) -> int:
    handler = FORMULA_COMMANDS[args.command]
    texts = _formula_texts(args)
    batch = args.batch is not None
    worst = EXIT_OK
    for text in texts:
        L.reset_fresh()
        try:
            line, status = handler(args, tables, text)
        except TheoryCombError as exc:
            if not batch:
                raise
            line, status = f"error: {exc}", EXIT_USAGE
        out.append(line)
        worst = max(worst, status)
    return worst


# ---------------------------------------------------------------------------
# reductions


def _oracle(args, tables, family: str, size: int):
    if args.oracle == "analytic":
        return make_analytic_oracle(family, tables)
    if size > args.max_size:
        raise UsageError(f"the brute-force oracle needs size {size}, above --max-size {args.max_size}")
    return make_bruteforce_oracle(family_members(family, tables), size)


def _recover(args, tables, out: list) -> int:
    fam, n = args.family, args.upto
    if fam == "tf-teq":
        expected = [tables.f(i) for i in range(1, n + 1)]
        got = recover_f(_oracle(args, tables, fam, n), n)
    elif fam == "tg-torb2":
        expected = [tables.g(i) for i in range(1, n + 1)]
        got = recover_g(_oracle(args, tables, fam, n), n)
    else:
        raise UsageError(f"recover supports tf-teq and tg-torb2, not {fam!r}")
    out.append(" ".join(map(str, got)))
    ok = list(got) == list(expected)
    out.append("MATCH" if ok else "MISMATCH")
    if not ok and args.verbosity >= 1:
        out.append("expected " + " ".join(map(str, expected)))
    return EXIT_OK if ok else EXIT_NEG


def _oracle_check(args, tables, out: list) -> int:
    """Analytic vs brute force on every in-family query whose models fit in --max-size."""
    fam = args.family
    analytic = make_analytic_oracle(fam, tables)
    bad = 0
    total = 0
    if fam in ("tinf-tle", "tinf-tleorb"):
        kind = fam.split("-")[1]
        for m in tables.F.rows():
            total += 1
            got, want = probe_F_infinity(analytic, kind, m), tables.F.is_infinite(m)
            if got != want:
                bad += 1
                out.append(f"row {m}: probe {got} table {want}")
    else:
        brute = make_bruteforce_oracle(family_members(fam, tables), args.max_size)
        if fam == "tf-teq":
            queries = [fixpoint_query(m, k) for m in range(1, args.max_size + 1) for k in range(1, m + 2)]
        else:
            queries = [orbit_query(m, k) for m in range(2, args.max_size // 2 + 1) for k in range(1, 2 * m + 2)]
        for q in queries:
            total += 1
            a, b = analytic(q), brute(q)
            if a != b:
                bad += 1
                out.append(f"{L.to_text(q)}: analytic {a} bruteforce {b}")
            elif args.verbosity >= 1:
                out.append(f"{L.to_text(q)}: {'sat' if a else 'unsat'}")
    out.append(f"{'AGREE' if not bad else 'DISAGREE'} {total - bad}/{total}")
    return EXIT_OK if not bad else EXIT_NEG


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="theorycomb", description="Theory combination workbench.")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, help="largest model size for brute-force search")
    p.add_argument("--verbosity", type=int, default=0, choices=(0, 1, 2))
    p.add_argument("--params", help="parameter table file (f:, g:, F:, h: lines)")
    sub = p.add_subparsers(dest="command", required=True)

    def formula_source(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--formula", help="file holding one formula")
        src.add_argument("--expr", help="formula given inline")
        src.add_argument("--batch", help="file with one formula per line")

    theory_help = "one of " + ", ".join(THEORY_NAMES)
    for name in ("decide", "spectrum", "witness", "minmod"):
        sp = sub.add_parser(name)
        sp.add_argument("--theory", required=True, help=theory_help)
        formula_source(sp)

    sp = sub.add_parser("combine")
    sp.add_argument("--engine", required=True, choices=sorted(ENGINES))
    sp.add_argument("--t1", required=True, help=theory_help)
    sp.add_argument("--t2", required=True, help=theory_help)
    formula_source(sp)

    sp = sub.add_parser("recover")
    sp.add_argument("--family", required=True, choices=("tf-teq", "tg-torb2"))
    sp.add_argument("--oracle", default="analytic", choices=("analytic", "bruteforce"))
    sp.add_argument("--upto", type=int, required=True)

    sp = sub.add_parser("oracle-check")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    return p


def run(argv=None) -> tuple:
    """Parse and execute; returns (exit status, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    L.reset_fresh()
    out: list = []
    try:
        if not 1 <= args.max_size <= MAX_SIZE_CEILING:
            raise UsageError(f"--max-size must be between 1 and {MAX_SIZE_CEILING}")
        tables = _tables(args)
        if args.command in FORMULA_COMMANDS:
            status = _run_formulas(args, tables, out)
        elif args.command == "recover":
            status = _recover(args, tables, out)
        else:
            status = _oracle_check(args, tables, out)
    except (TheoryCombError, ValueError, OSError) as exc:
        return EXIT_USAGE, "".join(line + "\n" for line in out), f"error: {exc}\n"
    return status, "".join(line + "\n" for line in out), ""


def main(argv=None) -> int:
    status, stdout, stderr = run(argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
