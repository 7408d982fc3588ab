"""Command-line front end (``qsuper``).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .deform import Deformation, cocycle_identity_check, verify_multiparam_presentation, verify_twisted_pairing
from .falg import FAlgebra
from .pairing import (
    PairingEngine,
    Report,
    pairing_matrix_rank,
    verify_J_coideal,
    verify_J_orthogonal,
    verify_R_orthogonal,
    verify_skew_primitivity,
)
from .supercore import (
    Element,
    ParityDatum,
    ParseError,
    PhiMatrix,
    element_to_json,
    format_element,
    format_tensor,
    format_word,
    parse_element,
)
from .ualg import UAlgebra, mat_is_zero

SUITES = ["r-orth", "j-orth", "j-coideal", "skew", "mp-relations", "cocycle",
          "rep-kills-ideal", "pairing-rank"]


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=None, help="rank (defaults to the parity length, else 2)")
    p.add_argument("--parity", default=None, help="parity bitstring of length n, e.g. 01")
    p.add_argument("--mode", choices=["uni", "multi"], default="uni")
    p.add_argument("--phi", default="symbolic", help="'symbolic' or a JSON file with an n x n matrix")
    p.add_argument("--order", choices=["row-major"], default="row-major")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsuper", description="Quantum general linear supergroup toolkit")
    sub = parser.add_subparsers(dest="cmd", required=True)
    sp = sub.add_parser("basis", help="ordered monomial basis in a given degree")
    _common(sp)
    for name, args in [("nf", ["element"]), ("mul", ["a", "b"]), ("coprod", ["element"]),
                       ("pair", ["f", "u"]), ("poisson", ["a", "b"]), ("deform-mul", ["a", "b"]),
                       ("rep", ["word"])]:
        sp = sub.add_parser(name)
        for a in args:
            sp.add_argument(a)
        _common(sp)
    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES + ["all"])
    _common(sp)
    return parser


def _datum(args) -> ParityDatum:
    if args.parity is None:
        n = args.n if args.n is not None else 2
        bits = "0" * n
    else:
        bits = args.parity
        if any(ch not in "01" for ch in bits) or not bits:
            raise UsageError(f"--parity must be a bitstring, got {bits!r}")
        if args.n is not None and args.n != len(bits):
            raise UsageError(f"--parity has length {len(bits)} but --n is {args.n}")
    if len(bits) < 2:
        raise UsageError("rank must be at least 2")
    return ParityDatum.from_bits(bits)


def load_phi(source: str, n: int) -> PhiMatrix:
    if source == "symbolic":
        return PhiMatrix(n)
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read phi file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"phi file is not JSON: {exc}") from exc
    if not (isinstance(data, list) and len(data) == n and all(isinstance(r, list) and len(r) == n for r in data)):
        raise ParseError(f"phi must be an {n} x {n} array")
    try:
        m = [[Fraction(str(x)) for x in row] for row in data]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"phi entries must be rationals: {exc}") from exc
    for t in range(n):
        if m[t][t] != 0:
            raise ParseError("phi must have zero diagonal")
        for l in range(t + 1, n):
            if m[l][t] != -m[t][l]:
                raise ParseError(f"phi is not antisymmetric at ({t + 1},{l + 1})")
    return PhiMatrix(n, m)


def _is_f(e: Element) -> bool:
    return all(all(isinstance(g, int) for g in w) for w in e.terms)


def _is_u(e: Element) -> bool:
    return all(all(not isinstance(g, int) for g in w) for w in e.terms)


def _emit(args, text: str, payload):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QSUPER_THREADS", "1")))
    except ValueError:
        return 1


def _rep_kills_ideal(datum: ParityDatum) -> Report:
    U = UAlgebra(datum)
    rep = Report("rep-kills-ideal", datum.bits, "standard")
    for form in ("formal", "polynomial"):
        for gen in U.ideal_generators(form):
            ok = mat_is_zero(U.matrix_rep(gen.element))
            rep.record(ok, gen.label, form, "" if ok else "nonzero matrix")
    return rep


def _pairing_rank_report(datum: ParityDatum, degree: int, length: int | None, phi: PhiMatrix) -> Report:
    # x[1,n] already needs a word of length n-1, so the default length scales with n
    length = length if length is not None else degree * (datum.n - 1)
    F = FAlgebra(datum)
    expected = len(F.pbw_words_upto(degree))
    rank = pairing_matrix_rank(datum, degree, length, "standard", phi if not phi.symbolic else None)
    rep = Report("pairing-rank", datum.bits, "standard")
    rep.record(rank == expected, f"rank(degree<={degree}, length<={length})", str(expected), str(rank))
    return rep


def run_suite(name: str, datum: ParityDatum, args, phi: PhiMatrix) -> Report:
    depth, degree = args.depth, args.degree
    twisted = args.mode == "multi"
    if name == "r-orth":
        return verify_R_orthogonal(datum, "formal", depth or (5 if datum.n >= 4 else 4))
    if name == "j-orth":
        if twisted:
            return verify_twisted_pairing(datum, phi, depth or 2)
        return verify_J_orthogonal(datum, "standard", depth or 3)
    if name == "j-coideal":
        return verify_J_coideal(datum, args.mode, phi)
    if name == "skew":
        return verify_skew_primitivity(datum)
    if name == "mp-relations":
        return verify_multiparam_presentation(datum, phi)
    if name == "cocycle":
        return cocycle_identity_check(datum, depth or (3 if datum.n == 2 else 2), phi)
    if name == "rep-kills-ideal":
        return _rep_kills_ideal(datum)
    if name == "pairing-rank":
        return _pairing_rank_report(datum, degree if degree is not None else 2, depth, phi)
    raise UsageError(f"unknown suite {name}")


def _cmd_verify(args, datum, phi) -> int:
    names = SUITES if args.suite == "all" else [args.suite]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futures = {name: pool.submit(run_suite, name, datum, args, phi) for name in names}
        reports = [futures[name].result() for name in sorted(names)]
    ok = all(r.passed for r in reports)
    if args.json:
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        print(json.dumps(payload, indent=2))
    else:
        for r in reports:
            print(r.summary())
            for f in r.failures[:20]:
                print(f"  {f['lhs']} | {f['rhs']} -> {f['value']}")
    return 0 if ok else 1


def _cmd(args) -> int:
    datum = _datum(args)
    phi = load_phi(args.phi, datum.n)
    falg = FAlgebra(datum, args.mode, phi)
    if args.cmd == "basis":
        if args.degree is None or args.degree < 0:
            raise UsageError("basis needs --degree m with m >= 0")
        exps = falg.pbw_basis(args.degree)
        words = [format_word(tuple(g for g, k in enumerate(e) for _ in range(k)), datum) for e in exps]
        _emit(args, "\n".join(words), [falg.exponent_map(e) for e in exps])
        return 0
    if args.cmd == "verify":
        return _cmd_verify(args, datum, phi)
    if args.cmd == "rep":
        e = parse_element(args.word, datum)
        if not _is_u(e):
            raise ParseError("rep expects an enveloping-side word")
        mat = UAlgebra(datum, phi).matrix_rep(e)
        rows = [[c.to_str() for c in row] for row in mat]
        _emit(args, "\n".join("[" + ", ".join(r) + "]" for r in rows), rows)
        return 0
    if args.cmd in ("nf", "coprod"):
        e = parse_element(args.element, datum)
        if args.cmd == "nf":
            if not _is_f(e):
                raise ParseError("nf expects a function-side element")
            res = falg.normal_form(e)
            _emit(args, format_element(res, datum), element_to_json(res, datum))
            return 0
        if _is_f(e):
            t = falg.coproduct(e)
        elif _is_u(e):
            t = UAlgebra(datum, phi).coproduct(e, "twisted" if args.mode == "multi" else "standard")
        else:
            raise ParseError("element mixes the two alphabets")
        payload = [{"left": format_word(a, datum), "right": format_word(b, datum), "coeff": c.to_json()}
                   for (a, b), c in t.sorted_items()]
        _emit(args, format_tensor(t, datum), payload)
        return 0
    a_txt, b_txt = (args.f, args.u) if args.cmd == "pair" else (args.a, args.b)
    a = parse_element(a_txt, datum)
    b = parse_element(b_txt, datum)
    if args.cmd == "pair":
        if not (_is_f(a) and _is_u(b)):
            raise ParseError("pair expects a function-side element and an enveloping-side element")
        eng = PairingEngine(datum, "twisted" if args.mode == "multi" else "standard", phi)
        v = eng.pair(a, b)
        _emit(args, v.to_str(), v.to_json())
        return 0
    if not (_is_f(a) and _is_f(b)):
        raise ParseError(f"{args.cmd} expects function-side elements")
    if args.cmd == "mul":
        res = falg.multiply(a, b)
    elif args.cmd == "poisson":
        try:
            res = falg.poisson_bracket(a, b)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        res = Deformation(datum, phi).multiply(a, b)
    _emit(args, format_element(res, datum), element_to_json(res, datum))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _cmd(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, IndexError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
