"""Command-line interface.

Exit codes: 0 holds / verified, 1 verified false (not similar, bad
certificate, unequal rank sequences), 2 precondition violated, 3 I/O or
parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .decomposition import index
from .exact_matrix import DimensionError, Matrix
from .flanders import (
    ConstraintViolated,
    IndexTooSmall,
    NotSimilar,
    drazin_similarity_certificate,
    full_similarity,
    group_similarity_certificate,
    power_similarity,
    rank_sequence,
    validate_triple,
)
from .gen_inverse import NoGroupInverse, drazin, group_inverse
from .instance_gen import (
    GenConfig,
    InvalidConfig,
    RejectionExhausted,
    random_group_invertible_triple,
    random_triple,
)
from .serialize import (
    ParseError,
    certificate_to_doc,
    dumps,
    load_certificate,
    load_matrix,
    matrix_to_doc,
)

EXIT_OK, EXIT_FALSE, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2, 3


class Precondition(Exception):
    pass


def _square(path) -> Matrix:
    m = load_matrix(path)
    if not m.is_square:
        raise Precondition(f"{path}: matrix is {m.rows}x{m.cols}, not square")
    return m


def _triple(args):
    a, b, c = (_square(p) for p in (args.a, args.b, args.c))
    if not a.rows == b.rows == c.rows:
        raise Precondition("A, B, C differ in size")
    return validate_triple(a, b, c)


def cmd_drazin(args) -> int:
    res = drazin(_square(args.input))
    print(dumps({"index": res.index, "drazin": matrix_to_doc(res.inverse)}), end="")
    return EXIT_OK


def cmd_group(args) -> int:
    g = group_inverse(_square(args.input))
    print(dumps({"group_inverse": matrix_to_doc(g)}), end="")
    return EXIT_OK


def cmd_index(args) -> int:
    print(index(_square(args.input)))
    return EXIT_OK


def cmd_check_triple(args) -> int:
    t = _triple(args)
    print(f"ABA = ACA holds (n = {t.n})")
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.mode == "power" and args.s is None:
        raise Precondition("--s is required with --mode power")
    if args.mode != "power" and args.s is not None:
        raise Precondition("--s only applies to --mode power")
    t = _triple(args)
    if args.mode == "group":
        cert, extra, _ = group_similarity_certificate(t)
    elif args.mode == "drazin":
        cert, extra, _ = drazin_similarity_certificate(t)
    elif args.mode == "full":
        cert, extra = full_similarity(t), None
        if isinstance(cert, NotSimilar):
            print(f"not similar: rank((AC)^{cert.witness_power}) = {cert.rank_lhs}, "
                  f"rank((BA)^{cert.witness_power}) = {cert.rank_rhs}")
            return EXIT_FALSE
    else:
        cert, extra = power_similarity(t, args.s), None

    meta = {"tool": "genflanders", "version": __version__,
            "command": args.argv,
            "mode": args.mode}
    if args.s is not None:
        meta["s"] = args.s
    doc = certificate_to_doc(cert, meta)
    if extra is not None:
        doc["companion"] = certificate_to_doc(extra)
    text = dumps(doc)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot write {args.out}: {e}") from None
        print(f"{cert.relation} certificate verified; written to {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    cert = load_certificate(args.cert)
    if cert.verify():
        print(f"OK: {cert.relation} certificate verifies")
        return EXIT_OK
    print(f"FAIL: {cert.relation} certificate does not verify")
    return EXIT_FALSE


def cmd_rank_seq(args) -> int:
    t = _triple(args)
    ac, ba = rank_sequence(t)
    first = None
    print("k\trank(AC^k)\trank(BA^k)")
    for k, (p, q) in enumerate(zip(ac, ba), start=1):
        flag = ""
        if p != q and first is None:
            first = k
            flag = "\t<- first mismatch"
        print(f"{k}\t{p}\t{q}{flag}")
    return EXIT_OK if first is None else EXIT_FALSE


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(n=args.n, seed=args.seed, entry_bound=args.bound,
                        rank_deficit=args.rank_deficit, max_rejects=args.max_rejects)
    except InvalidConfig as e:
        raise Precondition(str(e)) from None
    t = random_group_invertible_triple(cfg) if args.group else random_triple(cfg)
    out = Path(args.outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name, m in (("a", t.A), ("b", t.B), ("c", t.C)):
            (out / f"{name}.json").write_text(dumps(matrix_to_doc(m)), encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot write to {out}: {e}") from None
    print(f"wrote a.json, b.json, c.json to {out}")
    return EXIT_OK


def _seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="genflanders",
        description="Exact Drazin/group inverses and similarity certificates for AC and BA.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (("drazin", cmd_drazin, "Drazin inverse and index"),
                            ("group", cmd_group, "group inverse (index <= 1)"),
                            ("index", cmd_index, "index of a square matrix")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input")
        sp.set_defaults(func=fn)

    def triple_args(sp):
        sp.add_argument("a")
        sp.add_argument("b")
        sp.add_argument("c")

    sp = sub.add_parser("check-triple", help="check ABA = ACA")
    triple_args(sp)
    sp.set_defaults(func=cmd_check_triple)

    sp = sub.add_parser("certify", help="emit a similarity certificate")
    triple_args(sp)
    sp.add_argument("--mode", choices=("group", "drazin", "full", "power"), required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("rank-seq", help="rank((AC)^k) and rank((BA)^k), k = 1..n")
    triple_args(sp)
    sp.set_defaults(func=cmd_rank_seq)

    sp = sub.add_parser("gen", help="write a random triple with ABA = ACA")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--rank-deficit", type=int, default=0)
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--max-rejects", type=int, default=100)
    sp.add_argument("--group", action="store_true",
                    help="resample until AC and BA are group invertible")
    sp.add_argument("--outdir", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify-cert", help="check a certificate by multiplication")
    sp.add_argument("cert")
    sp.set_defaults(func=cmd_verify_cert)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which is our precondition code
        return EXIT_PRECONDITION if e.code else EXIT_OK
    args.argv = argv
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (Precondition, DimensionError, ConstraintViolated, NoGroupInverse,
            IndexTooSmall, InvalidConfig, RejectionExhausted) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
