"""Command-line front end: ``genrank <command> FILE ...``.

Exit codes: 0 success, 1 input error, 2 precondition violated,
3 internal invariant breach.
"""

import argparse
import json
import os
import sys

from genrank import minimal, rank
from genrank.errors import InputError, InvariantError, PreconditionError
from genrank.exactla import Field, rank as matrix_rank
from genrank.gen import random_planted, random_poset
from genrank.pmod import restrict
from genrank.poset import (SubposetEmbedding, finality_failures, initiality_failures,
                           top_finality_witness, bottom_initiality_witness)
from genrank.workspace import Workspace, load, save


# --- reports ------------------------------------------------------------------


def _cone_dims(data, M):
    return {o: matrix_rank(data.cone[o]) for o in M.objects}


def _cocone_dims(data, M):
    return {o: matrix_rank(data.cocone[o]) for o in M.objects}


def _render_human(report):
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append("%s:" % k)
            for a, b in v.items():
                lines.append("  %s: %s" % (a, _human_value(b)))
        else:
            lines.append("%s: %s" % (k, _human_value(v)))
    return "\n".join(lines)


def _human_value(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(_human_value(x) if not isinstance(x, (list, tuple))
                        else "<=".join(map(str, x)) for x in v) or "-"
    return str(v)


def _print(args, report):
    if args.format == "machine":
        print(json.dumps(report, indent=2))
    else:
        print(_render_human(report))


def _load(args, path=None):
    field = Field.parse(args.field) if args.field else None
    return load(path or args.file, field=field)


# --- commands -------------------------------------------------------------------


def cmd_validate(args):
    ws = _load(args)
    idx = ws.index
    report = {"file": args.file, "valid": True, "objects": len(idx.objects),
              "index": "poset" if ws.poset is not None else "category"}
    if ws.poset is not None:
        report["covers"] = len(ws.poset.covers)
        report["connected"] = ws.poset.is_connected()
    if ws.module is not None:
        report["field"] = str(ws.module.field)
        report["total_dim"] = ws.module.total_dim()
    if ws.embedding is not None:
        report["embedding_size"] = len(ws.embedding.carrier)
        report["embedding_full"] = ws.embedding.full
    return report


def cmd_rank(args):
    M = _load(args).require("module").module
    data = rank.psi(M)
    return {"file": args.file, "field": str(M.field), "rank": data.rank, "mult": data.rank,
            "limit_dim": data.limit.dim, "colimit_dim": data.colimit.dim,
            "cone_rank": _cone_dims(data.limit, M),
            "cocone_rank": _cocone_dims(data.colimit, M)}


def cmd_mult(args):
    M = _load(args).require("module").module
    r, N = rank.split_entire_interval(M)
    out = {"file": args.file, "mult": r, "pairing_mult": rank.hom_pairing_multiplicity(M),
           "complement_dims": {o: N.dims[o] for o in N.objects}}
    if args.output:
        save(Workspace(poset=M.index if M.is_poset_indexed else None,
                       category=None if M.is_poset_indexed else M.index, module=N), args.output)
        out["complement_written"] = args.output
    return out


def cmd_limit(args):
    M = _load(args).require("module").module
    data = rank.limit(M)
    return {"file": args.file, "limit_dim": data.dim, "cone_rank": _cone_dims(data, M)}


def cmd_colimit(args):
    M = _load(args).require("module").module
    data = rank.colimit(M)
    return {"file": args.file, "colimit_dim": data.dim, "cocone_rank": _cocone_dims(data, M)}


def _check(args, failures, primary, word):
    E = _load(args).require("embedding").embedding
    bad = failures(E)
    out = {"file": args.file, "status": word if not bad else "NOT " + word}
    if bad:
        out["witness"] = primary(E)
        out["failing_objects"] = bad
    return out


def cmd_final_check(args):
    return _check(args, finality_failures, top_finality_witness, "FINAL")


def cmd_initial_check(args):
    return _check(args, initiality_failures, bottom_initiality_witness, "INITIAL")


def _minimal(args, chain):
    ws = _load(args)
    P = ws.require("poset").poset
    ch = chain(P)
    E = SubposetEmbedding(P, ch.final)
    out = {"file": args.file, "subposet": E.carrier, "stabilization_index": ch.stabilization_index}
    if args.output:
        save(Workspace(poset=P, module=ws.module, embedding=E), args.output)
        out["written"] = args.output
    return out


def cmd_minimal_final(args):
    return _minimal(args, minimal.s_chain)


def cmd_minimal_initial(args):
    return _minimal(args, minimal.s_chain_initial)


def cmd_s_chain(args):
    P = _load(args).require("poset").poset
    ch = minimal.s_chain(P)
    return {"file": args.file, "stages": {"S%d" % i: s for i, s in enumerate(ch.stages)},
            "sizes": [len(s) for s in ch.stages], "ell": ch.stabilization_index,
            "max_count": len(P.maxima())}


def _parse_connector(text):
    if text == "least":
        return "least"
    if text.startswith("pair:") and text.count(",") == 1:
        a, b = text[5:].split(",")
        return (a.strip(), b.strip())
    raise InputError("bad --connector %r (expected least or pair:<a>,<b>)" % text)


def cmd_mrk(args):
    ws = _load(args)
    P = ws.require("poset").poset
    res = minimal.construct_mrk(P, _parse_connector(args.connector))
    E = res.embedding
    out = {"file": args.file, "carrier": E.carrier, "relations": E.source.covers,
           "connectors": list(res.connectors), "components_joined": res.components_joined,
           "final": res.is_final, "initial": res.is_initial}
    if ws.module is not None:
        out["mult"] = rank.mult_entire(ws.module)
        out["mult_restricted"] = rank.mult_entire(restrict(ws.module, E))
    if args.output:
        save(Workspace(poset=P, module=ws.module, embedding=E), args.output)
        out["written"] = args.output
    return out


def cmd_restrict(args):
    M = _load(args).require("module").module
    E = _load(args, args.embedding).require("embedding").embedding
    if E.target != M.index:
        raise InputError("embedding's poset differs from the module's poset",
                         location=args.embedding)
    R = restrict(M, E)
    out = {"file": args.file, "embedding": args.embedding, "carrier": E.carrier,
           "dims": {o: R.dims[o] for o in R.objects}}
    if E.source.is_connected() and M.index.is_connected():
        out["mult"] = rank.mult_entire(M)
        out["mult_restricted"] = rank.mult_entire(R)
    if args.output:
        save(Workspace(poset=E.source, module=R), args.output)
        out["written"] = args.output
    return out


def _colim_dims(M):
    return rank.colimit(M).dim


def cmd_witness_colim(args):
    ws = _load(args)
    E = ws.require("embedding").embedding
    field = Field.parse(args.field) if args.field else Field.rational()
    c, M = minimal.colimit_witness(E, field)
    out = {"file": args.file, "object": c, "colim_dim": _colim_dims(M),
           "colim_restricted_dim": _colim_dims(restrict(M, E)),
           "dims": {o: M.dims[o] for o in M.objects}}
    if args.output:
        save(Workspace(poset=E.target, module=M, embedding=E), args.output)
        out["written"] = args.output
    return out


def cmd_witness_mult(args):
    ws = _load(args)
    E = ws.require("embedding").embedding
    field = Field.parse(args.field) if args.field else Field.rational()
    M = minimal.mult_witness(E, field)
    out = {"file": args.file, "mult": rank.mult_entire(M),
           "mult_restricted": rank.mult_entire(restrict(M, E)),
           "colim_dim": _colim_dims(M), "dims": {o: M.dims[o] for o in M.objects}}
    if args.output:
        save(Workspace(poset=E.target, module=M, embedding=E), args.output)
        out["written"] = args.output
    return out


def cmd_worst_case(args):
    P = minimal.worst_case_poset(args.k)
    path = os.path.join(args.output_dir, "worst_case_%d.wsp" % args.k)
    save(Workspace(poset=P), path)
    return path


def cmd_gen(args):
    field = Field.parse(args.field or "rational")
    seed = args.seed if args.seed is not None else 0
    P = random_poset(seed, args.n, args.density, connected=True)
    M, truth, intervals = random_planted(seed, P, field, max_intervals=args.max_intervals)
    path = args.output or "gen_%d.wsp" % seed
    save(Workspace(poset=P, module=M), path)
    sidecar = os.path.splitext(path)[0] + ".truth.json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump({"seed": seed, "n": args.n, "density": args.density, "field": str(field),
                   "intervals": intervals, "planted_mult": truth}, fh, indent=2)
        fh.write("\n")
    return path


# --- argument parsing -------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="rational or gf:<p>; overrides the file's field")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="genrank", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file=True, output=False):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file")
        if output:
            sp.add_argument("--output", "-o", help="write the resulting workspace here")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "parse and validate a workspace")
    add("rank", cmd_rank, "generalized rank and per-object cone/cocone ranks")
    add("mult", cmd_mult, "multiplicity of the entire interval summand", output=True)
    add("limit", cmd_limit, "limit dimension")
    add("colimit", cmd_colimit, "colimit dimension")
    add("final-check", cmd_final_check, "is the embedding final?")
    add("initial-check", cmd_initial_check, "is the embedding initial?")
    add("minimal-final", cmd_minimal_final, "minimal final full subposet", output=True)
    add("minimal-initial", cmd_minimal_initial, "minimal initial full subposet", output=True)
    add("s-chain", cmd_s_chain, "stages of the chain from the maxima")
    sp = add("mrk", cmd_mrk, "connected union of the minimal final and initial subposets",
             output=True)
    sp.add_argument("--connector", default="least", help="least or pair:<a>,<b>")
    sp = add("restrict", cmd_restrict, "restrict a module along an embedding", output=True)
    sp.add_argument("embedding", help="workspace with the embedding block")
    add("witness-colim", cmd_witness_colim, "module whose colimit changes on restriction",
        output=True)
    add("witness-mult", cmd_witness_mult, "module whose multiplicity changes on restriction",
        output=True)
    sp = add("worst-case", cmd_worst_case, "write the slowest-stabilizing poset", file=False)
    sp.add_argument("k", type=int)
    sp.add_argument("--output-dir", default=".")
    sp = add("gen", cmd_gen, "write a random planted module and its truth sidecar", file=False,
             output=True)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--max-intervals", type=int, default=4)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except PreconditionError as e:
        print("precondition: %s" % e, file=sys.stderr)
        return 2
    except InvariantError as e:
        print("invariant: %s" % e, file=sys.stderr)
        return 3
    if isinstance(result, str):
        # commands that write a file print just its path, for shell substitution
        print(result)
    else:
        _print(args, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
