"""``qform`` command line.

Exit codes: 0 success, 1 input or validation error, 2 a structural identity
failed on otherwise valid input (non-integral screw number, non-integral
multiplicity, ...). Results go to stdout (or ``--out``), diagnostics to
stderr.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import charpoly, formats, quadform
from .errors import InputError, QFormError
from .pipeline import Run, chain_text, nt_summary, read, report, screw_rows, stage

COMMANDS = ("validate", "mult", "screw", "ssred", "gram", "charpoly", "invariants", "compare")


def build_parser():
    p = argparse.ArgumentParser(prog="qform", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, many=True):
        if many:
            sp.add_argument("files", nargs="+", metavar="FILE")
        sp.add_argument("--format", choices=("text", "json"), default=None)
        sp.add_argument("--out", metavar="FILE")
        return sp

    common(sub.add_parser("validate", help="parse and check input files"))
    common(sub.add_parser("mult", help="multiplicity system of a resolution graph"))
    common(sub.add_parser("screw", help="screw numbers per bamboo"))
    sp = common(sub.add_parser("ssred", help="semistable reduction graph (nt1)"), many=False)
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("--dot", metavar="FILE")
    sp = common(sub.add_parser("gram", help="Gram matrix of the form"), many=False)
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("--basis", metavar="CHAINFILE")
    sp.add_argument("--absolute", action="store_true", help="restrict to absolute cycles")
    sp.add_argument("--dot", metavar="FILE")
    sp = common(sub.add_parser("charpoly", help="characteristic polynomials"))
    sp.add_argument("--expanded", action="store_true")
    sp = common(sub.add_parser("invariants", help="full pipeline report"))
    sp.add_argument("--basis", metavar="CHAINFILE")
    sp = common(sub.add_parser("compare", help="compare two forms by invariants"), many=False)
    sp.add_argument("file1", metavar="FILE1")
    sp.add_argument("file2", metavar="FILE2")
    sp.add_argument(
        "--basis", metavar="CHAINFILE", action="append", default=[],
        help="chain file for FILE1, then for FILE2",
    )
    return p


def _run(path):
    fmt, obj = read(path)
    if fmt == "chain1":
        raise InputError(f"{path}: expected a graph (rg1 or nt1), got a chain file")
    return Run(fmt, obj)


def _need_rg1(run, path, what):
    if run.fmt != "rg1":
        raise InputError(f"{path}: {what} needs a resolution graph (rg1)")


# -- per-file commands, each returns (text, json-able) ----------------------


def cmd_validate(path, args):
    fmt, obj = read(path)
    if fmt == "rg1":
        info = {"format": fmt, "vertices": len(obj.vertices), "edges": len(obj.edges),
                "arrows": len(obj.arrows)}
    elif fmt == "nt1":
        info = {"format": fmt, "vertices": len(obj.pieces), "edges": len(obj.edges),
                "arrows": len(obj.arrows)}
    else:
        chains = formats.parse_chains(obj, None, path)
        info = {"format": fmt, "chains": len(chains)}
    text = "ok " + " ".join(f"{k}={v}" for k, v in info.items()) + "\n"
    return text, info


def cmd_mult(path, args):
    run = _run(path)
    _need_rg1(run, path, "mult")
    m = run.mults
    text = "".join(f"mult {v} {m[v]}\n" for v in run.graph.vertex_ids)
    return text, {"multiplicities": dict(m)}


def cmd_screw(path, args):
    run = _run(path)
    _need_rg1(run, path, "screw")
    rows = screw_rows(run)
    lines = [f"e {run.screws.e}"]
    for r in rows:
        scn = r["scn"]
        lines.append(
            f"screw {r['bamboo']} d={r['d']} scn={scn.numerator}/{scn.denominator} "
            f"s={r['s']} kind={r['kind']}"
        )
    return "\n".join(lines) + "\n", {"e": run.screws.e, "screws": rows}


def cmd_charpoly(path, args):
    run = _run(path)
    out = {}
    if run.fmt == "rg1":
        with stage("charpoly"):
            d = charpoly.delta(run.graph, run.mults)
        out["delta"] = d
        out["milnor_number"] = d.degree
    nt = run.nt
    with stage("charpoly"):
        out["delta2"] = charpoly.delta2(nt)
        out["jordan_blocks"] = charpoly.jordan_block_count(nt)
    lines = []
    if "delta" in out:
        lines.append(f"delta {out['delta']}")
        if args.expanded:
            lines.append(f"delta_expanded {charpoly.format_expanded(out['delta'].expand())}")
        lines.append(f"milnor {out['milnor_number']}")
    lines.append(f"delta2 {out['delta2']}")
    if args.expanded:
        lines.append(f"delta2_expanded {charpoly.format_expanded(out['delta2'].expand())}")
    lines.append(f"jordan {out['jordan_blocks']}")
    doc = {}
    for k, v in out.items():
        if isinstance(v, charpoly.FactoredCyclo):
            doc[k] = {"factored": str(v), "exponents": v.exponents, "degree": v.degree}
            if args.expanded:
                doc[k]["coefficients"] = v.expand()
        else:
            doc[k] = v
    return "\n".join(lines) + "\n", doc


def cmd_invariants(path, args):
    run = _run(path)
    text = chain_text(args.basis) if args.basis else None
    doc = report(run.fmt, run.graph if run.fmt == "rg1" else run.nt, text, args.basis)
    lines = []
    for k, v in doc.items():
        lines.append(f"{k} {formats.jsonable(v)}")
    return "\n".join(lines) + "\n", doc


# -- single-file commands ---------------------------------------------------


def _form(path, basis_path, absolute=False):
    run = _run(path)
    text = chain_text(basis_path) if basis_path else None
    basis = run.basis(text, basis_path)
    with stage("gram"):
        form = quadform.gram(run.nt, basis)
    if absolute:
        form = form.absolute_block()
    return run, form


def format_matrix(form):
    lines = ["# basis " + " ".join(form.names)] if form.names else ["# basis (empty)"]
    for row in form.matrix:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def cmd_gram(args):
    run, form = _form(args.file, args.basis, args.absolute)
    if args.dot:
        _write(args.dot, formats.to_dot(run.nt))
    doc = {"basis": list(form.names), "absolute": list(form.absolute),
           "matrix": [list(r) for r in form.matrix]}
    return format_matrix(form), doc


def cmd_ssred(args):
    run = _run(args.file)
    nt = run.nt
    if args.dot:
        _write(args.dot, formats.to_dot(nt))
    doc = {"nt1": formats.serialize_ntgraph(nt)}
    doc.update(nt_summary(nt))
    return formats.serialize_ntgraph(nt), doc


def cmd_compare(args):
    if len(args.basis) not in (0, 2):
        raise InputError("compare takes either no --basis or exactly two (one per file)")
    bases = args.basis or [None, None]
    _, a = _form(args.file1, bases[0])
    _, b = _form(args.file2, bases[1])
    rep = quadform.compare(a, b)
    lines = []
    for k, v in rep.items():
        if isinstance(v, dict):
            tag = "equal" if v["equal"] else "differ"
            lines.append(f"{k} {tag} {_txt(v['left'])} {_txt(v['right'])}")
        elif k == "distinguished_by":
            lines.append(f"distinguished_by {','.join(v) if v else '-'}")
        else:
            lines.append(f"{k} {_txt(v)}")
    return "\n".join(lines) + "\n", rep


def _txt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------------------


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _diagnose(path, exc):
    label = getattr(exc, "stage", None)
    prefix = f"error [{label}]" if label else "error"
    where = f"{path}: " if path and not str(exc).startswith(str(path)) else ""
    return f"{prefix}: {type(exc).__name__}: {where}{exc}"


PER_FILE = {
    "validate": cmd_validate,
    "mult": cmd_mult,
    "screw": cmd_screw,
    "charpoly": cmd_charpoly,
    "invariants": cmd_invariants,
}
SINGLE = {"ssred": cmd_ssred, "gram": cmd_gram, "compare": cmd_compare}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    fmt = args.format or ("json" if args.command == "invariants" else "text")

    results = []  # (text, doc) or None per input, in input order
    code = 0
    if args.command in PER_FILE:
        fn = PER_FILE[args.command]

        def one(path):
            try:
                return fn(path, args), None
            except QFormError as exc:
                return None, exc

        files = args.files
        if len(files) > 1:
            with ThreadPoolExecutor() as pool:
                outcomes = list(pool.map(one, files))
        else:
            outcomes = [one(files[0])]
        for path, (res, exc) in zip(files, outcomes):
            if exc is not None:
                print(_diagnose(path, exc), file=stderr)
                code = max(code, exc.exit_code)
            results.append((path, res))
    else:
        path = getattr(args, "file", None) or getattr(args, "file1", None)
        try:
            results.append((path, SINGLE[args.command](args)))
        except QFormError as exc:
            print(_diagnose(None, exc), file=stderr)
            code = max(code, exc.exit_code)
            results.append((path, None))

    many = args.command in PER_FILE and len(args.files) > 1
    if fmt == "json":
        docs = [(p, r[1]) for p, r in results if r is not None]
        if many:
            payload = formats.dumps([{"file": p, "result": d} for p, d in docs])
        else:
            payload = formats.dumps(docs[0][1]) if docs else ""
    else:
        chunks = []
        for p, r in results:
            if r is None:
                continue
            chunks.append((f"# {p}\n" if many else "") + r[0])
        payload = "".join(chunks)
    try:
        if args.out:
            _write(args.out, payload)
        else:
            stdout.write(payload)
    except InputError as exc:
        print(_diagnose(None, exc), file=stderr)
        code = max(code, 1)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
