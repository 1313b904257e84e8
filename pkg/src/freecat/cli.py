"""Command-line front end.

Spec sources accepted by --spec:

* ``tlj(DELTA)`` and ``pointed-tlj(DELTA)`` builtins;
* ``group:NAME`` builtin concrete categories (z1..z6, s3);
* ``group-file:TABLE.json:REPS.json`` concrete categories from table files;
* a path to a fusion spec document (JSON).

Exit codes: 0 success, 1 mathematical violation or verification failure,
2 usage, parse or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .fusion import FusionError, ParameterError, SpecError, validate
from .words import Amalgam, format_word, parse_word
from .freeprod import (
    PointedSpec,
    box_dims,
    decompose_word,
    free_compose,
    free_product_spec,
    hom_dim_words,
    qdim_conservation_residual,
    word_qdim,
)
from .tlj import pointed_tlj, tlj_spec
from . import io as fio

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

_BUILTIN_GROUPS = {"z1": 1, "z2": 2, "z3": 3, "z4": 4, "z5": 5, "z6": 6}


class Source:
    """One --spec argument, resolved lazily into spec / pointed / concrete."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.kind = "file"
        self.pointed: PointedSpec | None = None
        self.concrete = None
        m = re.fullmatch(r"tlj\(([^)]+)\)", text)
        if m:
            self.kind = "tlj"
            self.spec = tlj_spec(float(m.group(1)))
            return
        m = re.fullmatch(r"pointed-tlj\(([^)]+)\)", text)
        if m:
            self.kind = "pointed"
            self.pointed = pointed_tlj(float(m.group(1)))
            self.spec = self.pointed.ambient
            return
        m = re.fullmatch(r"group:(\w+)", text)
        if m:
            from .repgroups import cyclic_category, s3_category

            name = m.group(1).lower()
            if name == "s3":
                self.concrete = s3_category()
            elif name in _BUILTIN_GROUPS:
                self.concrete = cyclic_category(_BUILTIN_GROUPS[name])
            else:
                raise ParameterError(f"unknown builtin group {name!r} (use z1..z6 or s3)")
            self.kind = "group"
            self.spec = self.concrete.spec
            return
        m = re.fullmatch(r"group-file:([^:]+):([^:]+)", text)
        if m:
            self.kind = "group"
            self.concrete = fio.load_group_category(m.group(1), m.group(2))
            self.spec = self.concrete.spec
            return
        self.spec = fio.load_spec(text)


def _parse_glue(args, sources: list[Source]) -> Amalgam:
    factors = {k + 1: s.spec for k, s in enumerate(sources)}
    shared: dict[str, dict[int, str]] = {}
    for entry in args.amalgamate or []:
        try:
            name, eqs = entry.split(":", 1)
            inj: dict[int, str] = {}
            for part in eqs.split("="):
                cell, fac = part.rsplit("@", 1)
                inj[int(fac)] = cell
            shared[name] = inj
        except ValueError:
            raise SpecError(f"cannot parse amalgamation {entry!r}; expected name:cell@i=cell@j") from None
    if not shared and len(factors) >= 1 and all(len(s.zero_cells()) == 1 for s in factors.values()):
        shared["pt"] = {i: s.zero_cells()[0] for i, s in factors.items()}
    return Amalgam(factors, shared)


def _emit(args, human_lines: list[str], doc) -> None:
    if args.format == "machine":
        sys.stdout.write(fio.canonical_json(doc))
    else:
        for line in human_lines:
            print(line)


def cmd_validate(args) -> int:
    status = EXIT_OK
    lines: list[str] = []
    docs = []
    for src in args.spec:
        source = Source(src)
        rep = validate(source.spec, search_depth=args.depth)
        entry = {"source": src, "ok": rep.ok, "checks": rep.checks_run,
                 "violations": [{"rule": v.rule, "witness": [str(x) for x in v.witness], "detail": v.detail}
                                for v in rep.violations]}
        lines.append(f"{src}: {rep.summary()}")
        for v in rep.violations:
            lines.append(f"  {v.rule}: {v.detail}")
        if source.concrete is not None:
            worst = 0.0
            for lab in sorted(source.concrete.irreps):
                worst = max(worst, source.concrete.conjugate_equation_defect(lab),
                            source.concrete.standardness_defect(lab, seed=args.seed))
            entry["duality_defect"] = worst
            lines.append(f"  duality data defect: {worst:.3e}")
            if worst > args.tolerance:
                status = EXIT_VIOLATION
        if not rep.ok:
            status = EXIT_VIOLATION
        docs.append(entry)
    _emit(args, lines, {"command": "validate", "results": docs})
    return status


def cmd_decompose(args) -> int:
    sources = [Source(s) for s in args.spec]
    am = _parse_glue(args, sources)
    v = parse_word(am, args.word)
    dec = decompose_word(am, v, max_len=args.max_len)
    residual = qdim_conservation_residual(am, v, dec)
    lines = [f"{format_word(w)} : {n}   (qdim {float(word_qdim(am, w)):g})" for w, n in dec.terms]
    lines.append(f"qdim({format_word(v)}) = {float(word_qdim(am, v)):g}; conservation residual {residual:.3e}")
    doc = {
        "command": "decompose",
        "word": format_word(v),
        "qdim": float(word_qdim(am, v)),
        "terms": [{"word": format_word(w), "mult": n, "qdim": float(word_qdim(am, w))} for w, n in dec.terms],
        "conservation_residual": residual,
    }
    _emit(args, lines, doc)
    return EXIT_OK if residual <= args.tolerance else EXIT_VIOLATION


def cmd_hom_dim(args) -> int:
    sources = [Source(s) for s in args.spec]
    am = _parse_glue(args, sources)
    v1 = parse_word(am, args.word1)
    v2 = parse_word(am, args.word2)
    d = hom_dim_words(am, v1, v2)
    _emit(args, [str(d)], {"command": "hom-dim", "word1": format_word(v1), "word2": format_word(v2), "dim": d})
    return EXIT_OK


def cmd_irreducibles(args) -> int:
    sources = [Source(s) for s in args.spec]
    am = _parse_glue(args, sources)
    from .words import enumerate_reduced

    lines = []
    rows = []
    for a in am.cells():
        for b in am.cells():
            for w in enumerate_reduced(am, a, b, args.max_len, args.irr_depth or args.max_len):
                lines.append(f"{format_word(w)}   (qdim {float(word_qdim(am, w)):g})")
                rows.append({"word": format_word(w), "source": str(a), "target": str(b),
                             "qdim": float(word_qdim(am, w))})
    _emit(args, lines, {"command": "irreducibles", "max_len": args.max_len, "words": rows})
    return EXIT_OK


def cmd_box_dims(args) -> int:
    pointed = [Source(s) for s in args.spec]
    ps = [s.pointed for s in pointed]
    if any(p is None for p in ps):
        raise ParameterError("box-dims needs pointed spec sources (e.g. pointed-tlj(2.0))")
    if len(ps) == 1:
        p = ps[0]
    elif len(ps) == 2:
        p = free_compose(ps[0], ps[1])
    else:
        raise ParameterError("box-dims takes one pointed spec or two (composed)")
    dims = box_dims(p, args.n_max)
    lines = [f"{n}: {d}" for n, d in enumerate(dims)]
    _emit(args, lines, {"command": "box-dims", "n_max": args.n_max, "dims": dims})
    return EXIT_OK


def cmd_free_product(args) -> int:
    sources = [Source(s) for s in args.spec]
    am = _parse_glue(args, sources)
    fp = free_product_spec(am)
    doc = fio.spec_to_doc(fp, depth=args.depth)
    rep = validate(fp, search_depth=min(args.depth, 2))
    lines = [f"free product of {len(sources)} factor(s); irreducibles to depth {args.depth}: "
             f"{len(doc['irreducibles'])}", f"validation: {rep.summary()}"]
    lines += [f"  {e['label']} (qdim {e['qdim']})" for e in doc["irreducibles"]]
    _emit(args, lines, doc)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_free_compose(args) -> int:
    pointed = [Source(s) for s in args.spec]
    ps = [s.pointed for s in pointed]
    if len(ps) != 2 or any(p is None for p in ps):
        raise ParameterError("free-compose needs exactly two pointed spec sources")
    p = free_compose(ps[0], ps[1])
    dims = box_dims(p, args.n_max)
    end_dim = dims[1] if len(dims) > 1 else 1
    lines = [
        f"composed point: {p.point} of type ({p.a}, {p.b})",
        f"point qdim: {float(p.point_qdim()):g}",
        f"End(point) dimension: {end_dim}",
        "box dims: " + ", ".join(str(d) for d in dims),
    ]
    doc = {"command": "free-compose", "point": str(p.point), "a": p.a, "b": p.b,
           "point_qdim": float(p.point_qdim()), "box_dims": dims}
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    sources = [Source(s) for s in args.spec]
    bad = [s.text for s in sources if s.concrete is None]
    if bad:
        raise ParameterError(
            f"verify needs concrete group factors; {', '.join(bad)} is fusion-only "
            "(use validate / decompose / box-dims for those)")
    from .actions import ConcreteAmalgam
    from .verify import verify_suite

    ca = ConcreteAmalgam({k + 1: s.concrete for k, s in enumerate(sources)},
                         name="*".join(s.spec.name for s in sources))
    rep = verify_suite(ca, depth=args.depth, tol_construct=args.tolerance,
                       tol_coherence=max(args.tolerance, 1e-8), seed=args.seed)
    lines = rep.summary_lines()
    lines.append(f"{'ALL PASS' if rep.ok else 'FAILURES'} ({len(rep.records)} checks, seed {rep.seed})")
    _emit(args, lines, rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freecat",
                                 description="Free products of unitary fusion 2-categories over reduced words.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, specs=True):
        if specs:
            p.add_argument("--spec", action="append", required=True,
                           help="spec source (path, tlj(d), pointed-tlj(d), group:NAME, group-file:T:R); repeatable")
        p.add_argument("--amalgamate", action="append", metavar="NAME:CELL@I=CELL@J",
                       help="glue 0-cells of different factors; repeatable")
        p.add_argument("--format", choices=["human", "machine"], default="human")
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="check the fusion axioms (and duality data for group factors)")
    common(p)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decompose", help="decompose a general word into reduced words")
    common(p)
    p.add_argument("word", help="word literal, e.g. '[std@1][w1@2]' or '()@x'")
    p.add_argument("--max-len", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("hom-dim", help="hom dimension between two general words")
    common(p)
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_hom_dim)

    p = sub.add_parser("irreducibles", help="list reduced words (free product irreducibles)")
    common(p)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--irr-depth", type=int, default=None)
    p.set_defaults(func=cmd_irreducibles)

    p = sub.add_parser("box-dims", help="box space dimensions of a pointed spec (or a composition of two)")
    common(p)
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=cmd_box_dims)

    p = sub.add_parser("free-product", help="emit the free product as a spec document")
    common(p)
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_free_product)

    p = sub.add_parser("free-compose", help="compose two pointed specs and report the point")
    common(p)
    p.add_argument("--n-max", type=int, default=4)
    p.set_defaults(func=cmd_free_compose)

    p = sub.add_parser("verify", help="run the realization identity suite over group factors")
    common(p)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParameterError, SpecError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
