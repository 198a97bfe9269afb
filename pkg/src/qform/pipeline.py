"""End-to-end computation: resolution graph -> invariants report."""

from contextlib import contextmanager
from pathlib import Path

from . import charpoly, formats, quadform, semistable
from .errors import InputError, QFormError
from .graph import classify, decompose
from .multiplicity import multiplicities
from .screw import screws as compute_screws


@contextmanager
def stage(name):
    try:
        yield
    except QFormError as exc:
        if not getattr(exc, "stage", None):
            exc.stage = name
        raise


def read(path):
    """Parse a file of any supported format; returns ``(format, object)``."""
    path = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    fmt = formats.detect_format(text, path)
    if fmt == "rg1":
        return fmt, formats.parse_resolution(text, path)
    if fmt == "nt1":
        return fmt, formats.parse_ntgraph(text, path)
    return fmt, text  # chains need a graph; parsed by the caller


class Run:
    """Lazily computed stages for one input graph."""

    def __init__(self, fmt, obj):
        self.fmt = fmt
        self.graph = obj if fmt == "rg1" else None
        self._nt = obj if fmt == "nt1" else None
        self._mults = self._screws = self._bamboos = None

    @property
    def mults(self):
        if self._mults is None:
            with stage("mult"):
                self._mults = multiplicities(self.graph)
        return self._mults

    @property
    def bamboos(self):
        if self._bamboos is None:
            with stage("screw"):
                self._bamboos = decompose(self.graph)[0]
        return self._bamboos

    @property
    def screws(self):
        if self._screws is None:
            mults = self.mults
            with stage("screw"):
                self._screws = compute_screws(self.graph, mults, self.bamboos)
        return self._screws

    @property
    def nt(self):
        if self._nt is None:
            scr = self.screws
            with stage("ssred"):
                self._nt = semistable.build_ntgraph(self.graph, self.mults, scr)
        return self._nt

    def basis(self, chain_text=None, chain_file=None):
        nt = self.nt
        with stage("gram"):
            if chain_text is None:
                return quadform.default_basis(nt)
            named = formats.parse_chains(chain_text, nt, chain_file)
            return quadform.make_basis(nt, named)


def chain_text(path):
    path = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return text


def screw_rows(run):
    bam = {b.id: b for b in run.bamboos}
    out = []
    for x in run.screws.entries:
        b = bam[x.bamboo]
        out.append(
            {
                "bamboo": x.bamboo,
                "kind": x.kind,
                "start": b.start,
                "end": b.end,
                "vertices": list(b.vertices),
                "mults": list(x.mults),
                "d": x.d,
                "scn": x.scn,
                "s": x.s,
            }
        )
    return out


def nt_summary(nt):
    return {
        "pieces": [
            {"id": p.id, "genus": p.genus, "orbit": p.orbit, "index": p.index} for p in nt.pieces
        ],
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "screw": e.screw, "orbit": e.orbit, "index": e.index}
            for e in nt.edges
        ],
        "arrows": [
            {"id": a.id, "piece": a.piece, "screw": a.screw, "orbit": a.orbit, "index": a.index}
            for a in nt.arrows
        ],
        "betti1": nt.betti1(),
        "quotient_is_tree": semistable.is_quotient_tree(nt),
    }


def report(fmt, obj, chains=None, chain_file=None):
    """Full invariant report as a plain dict (JSON-ready via formats.jsonable)."""
    run = Run(fmt, obj)
    doc = {"format": fmt}
    if fmt == "rg1":
        g = run.graph
        cls = classify(g)
        doc["multiplicities"] = dict(run.mults)
        doc["nodes"] = [v for v in g.vertex_ids if cls[v].is_node]
        doc["e"] = run.screws.e
        doc["screws"] = screw_rows(run)
    nt = run.nt
    doc["semistable"] = nt_summary(nt)
    basis = run.basis(chains, chain_file)
    with stage("gram"):
        form = quadform.gram(nt, basis)
        doc["basis"] = [
            {"name": n, "chain": formats.format_chain(c), "absolute": a}
            for n, c, a in zip(basis.names, basis.chains, basis.absolute)
        ]
        doc["gram"] = [list(r) for r in form.matrix]
    with stage("invariants"):
        inv = form.invariants()
        inv["absolute"] = form.absolute_block().invariants()
        doc["invariants"] = inv
    with stage("charpoly"):
        if fmt == "rg1":
            try:
                d = charpoly.delta(run.graph, run.mults)
                doc["delta"] = str(d)
                doc["milnor_number"] = d.degree
            except InputError as exc:
                doc["delta"] = None
                doc["delta_unavailable"] = str(exc)
        d2 = charpoly.delta2(nt)
        doc["delta2"] = str(d2)
        doc["jordan_blocks"] = charpoly.jordan_block_count(nt)
    return doc
