"""Command-line front end: group specs in, canonical JSON result documents out.

Exit codes: 0 success or match, 1 mismatch, 2 invalid spec or arguments,
3 refused by a feasibility gate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from . import constructions as cs
from .groups import FiniteGroup, load_cayley_table, prime_power
from .homology import DEFAULT_MAX_SIMPLICES, TooLarge, poset_homology
from .posets import above_z_poset, elem_abelian_poset, espec
from . import verify as V

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_TOO_LARGE = 0, 1, 2, 3
DEFAULT_MAX_ELEMENTS = 2 * 10 ** 5


class InvalidSpec(ValueError):
    pass


def load_schema() -> dict:
    return json.loads(resources.files("quillenkit").joinpath("data/group_spec.schema.json").read_text())


_VALIDATOR = None


def validate_spec(spec) -> None:
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(load_schema())
    err = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(spec))
    if err is not None:
        where = "/".join(str(x) for x in err.absolute_path) or "<root>"
        raise InvalidSpec(f"invalid group spec at '{where}': {err.message}")


def parse_spec(text: str) -> tuple[dict, Path]:
    """Inline JSON or a path to a JSON file; returns the spec and the base directory for relative paths."""
    if text.lstrip().startswith("{"):
        raw, base = text, Path.cwd()
    else:
        path = Path(text)
        if not path.is_file():
            raise InvalidSpec(f"no such spec file: {text}")
        raw, base = path.read_text(), path.resolve().parent
    try:
        spec = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InvalidSpec(f"spec is not valid JSON: {e}") from None
    validate_spec(spec)
    return spec, base


def _table_order(path: Path) -> int:
    try:
        with open(path) as fh:
            return int(fh.readline().split()[0])
    except (OSError, ValueError, IndexError) as e:
        raise InvalidSpec(f"cannot read Cayley table '{path}': {e}") from None


def spec_order(spec: dict, base: Path) -> int:
    c = spec["construct"]
    if c in ("cyclic", "elementary_abelian"):
        return spec["p"] ** spec["n"]
    if c == "extraspecial":
        return spec["p"] ** (2 * spec["m"] + 1)
    if c == "semidirect_example":
        return spec["p"] ** (2 * spec["m"] + 2)
    if c == "corollary3":
        return spec["p"] ** (2 * (spec["t"] + spec["k"] + 2))
    if c == "cayley_table":
        return _table_order(base / spec["path"])
    lo, hi = spec_order(spec["left"], base), spec_order(spec["right"], base)
    if c == "direct_product":
        return lo * hi
    pp = prime_power(lo)
    return lo * hi // pp[0] if pp else lo * hi


def build_group(spec: dict, base: Path, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FiniteGroup:
    order = spec_order(spec, base)
    if order > max_elements:
        raise TooLarge(f"group of order {order} exceeds --max-elements {max_elements}")
    c = spec["construct"]
    try:
        if c == "cyclic":
            return cs.cyclic(spec["p"], spec["n"])
        if c == "elementary_abelian":
            return cs.elementary_abelian(spec["p"], spec["n"])
        if c == "extraspecial":
            return cs.extraspecial_exponent_p(spec["p"], spec["m"])
        if c == "semidirect_example":
            return cs.semidirect_example(spec["p"], spec["m"])
        if c == "corollary3":
            return cs.corollary3_group(spec["p"], spec["t"], spec["k"])
        if c == "cayley_table":
            return load_cayley_table(base / spec["path"])
        G1 = build_group(spec["left"], base, max_elements)
        G2 = build_group(spec["right"], base, max_elements)
        if c == "central_product":
            return cs.central_product(G1, G2)
        return cs.direct_product(G1, G2)
    except (ValueError, OSError) as e:
        if isinstance(e, InvalidSpec):
            raise
        raise InvalidSpec(f"{c}: {e}") from None


def result_document(body: dict, timings: dict) -> dict:
    return {"body": body, "timings_ms": timings, "version": __version__}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _counts_json(counts: dict[int, int]) -> dict[str, int]:
    return {str(n): a for n, a in sorted(counts.items())}


def _csv_tables(profile=None, counts=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if profile is not None:
        w.writerow(["degree", "rank", "torsion"])
        for k in sorted(profile.betti):
            w.writerow([k, profile.betti[k], " ".join(map(str, profile.torsion.get(k, [])))])
    if counts is not None:
        if profile is not None:
            w.writerow([])
        w.writerow(["n", "a_n"])
        for n, a in sorted(counts.items()):
            w.writerow([n, a])
    return buf.getvalue()


def _emit(args, doc: dict, csv_text: str | None = None) -> None:
    text = csv_text if (getattr(args, "csv", False) and csv_text is not None) else dumps(doc)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _group_descriptor(spec: dict, G: FiniteGroup) -> dict:
    return {"spec": spec, "order": G.order}


# -- subcommands ----------------------------------------------------------------

def cmd_homology(args) -> int:
    spec, base = parse_spec(args.spec)
    timings = {}
    t0 = time.perf_counter()
    G = build_group(spec, base, args.max_elements)
    timings["construct"] = _ms(t0)
    t0 = time.perf_counter()
    if args.reduce_to_z:
        try:
            poset, which = above_z_poset(G), "A>Z"
        except ValueError as e:
            raise InvalidSpec(str(e)) from None
    else:
        poset, which = elem_abelian_poset(G), "A>=2"
    timings["poset"] = _ms(t0)
    t0 = time.perf_counter()
    prof = poset_homology(poset, args.max_simplices)
    timings["homology"] = _ms(t0)
    body = {"group": _group_descriptor(spec, G), "poset": which, "vertices": len(poset), **prof.as_json()}
    _emit(args, result_document(body, timings), _csv_tables(profile=prof))
    return EXIT_OK


def cmd_espec(args) -> int:
    spec, base = parse_spec(args.spec)
    timings = {}
    t0 = time.perf_counter()
    G = build_group(spec, base, args.max_elements)
    timings["construct"] = _ms(t0)
    t0 = time.perf_counter()
    try:
        rep = espec(G)
    except ValueError as e:
        raise InvalidSpec(str(e)) from None
    timings["espec"] = _ms(t0)
    body = {
        "group": _group_descriptor(spec, G),
        "z": list(rep.z.generators),
        "counts": _counts_json(rep.counts),
        "members": [{"order": X.order, "generators": list(X.generators)} for X in rep.members],
    }
    _emit(args, result_document(body, timings), _csv_tables(counts=rep.counts))
    return EXIT_OK


def _verify_doc(report: V.VerificationReport, group: dict | None = None) -> dict:
    body = report.as_json()
    if group is not None:
        body["group"] = group
    if report.counts is not None:
        body["espec"] = _counts_json(report.counts)
    return result_document(body, report.timings)


def run_main1(spec: dict, base: Path, max_elements: int, max_simplices: int) -> V.VerificationReport:
    G = build_group(spec, base, max_elements)
    try:
        rep = V.verify_main1(G, max_simplices)
    except ValueError as e:
        raise InvalidSpec(str(e)) from None
    rep.group = {"spec": spec, "order": G.order}
    return rep


def cmd_verify(args) -> int:
    which = args.claim
    if which in ("main1", "a2-equiv"):
        if not args.specs or len(args.specs) != 1:
            raise InvalidSpec(f"verify {which} takes exactly one group spec")
        spec, base = parse_spec(args.specs[0])
        if which == "main1":
            rep = run_main1(spec, base, args.max_elements, args.max_simplices)
        else:
            G = build_group(spec, base, args.max_elements)
            try:
                rep = V.verify_equivalence_a2_az(G, args.max_simplices)
            except ValueError as e:
                raise InvalidSpec(str(e)) from None
            rep.group = {"spec": spec, "order": G.order}
    elif which == "techlem":
        if not args.specs or len(args.specs) != 2:
            raise InvalidSpec("verify techlem takes a left and a right group spec")
        (s1, b1), (s2, b2) = parse_spec(args.specs[0]), parse_spec(args.specs[1])
        G1 = build_group(s1, b1, args.max_elements)
        G2 = build_group(s2, b2, args.max_elements)
        try:
            rep = V.verify_techlem(G1, G2)
        except ValueError as e:
            raise InvalidSpec(str(e)) from None
        rep.group = {"left": s1, "right": s2, "order": rep.group["order"]}
    elif which == "prop-extra":
        _need(args, "p", "m")
        try:
            rep = V.verify_prop_extra(args.p, args.m, min(args.max_elements, V.PROP_EXTRA_LIMIT), args.max_simplices)
        except ValueError as e:
            raise InvalidSpec(str(e)) from None
    else:
        _need(args, "p", "t", "k")
        try:
            rep = V.verify_corollary3(args.p, args.t, args.k, min(args.max_elements, V.COROLLARY3_LIMIT),
                                      args.max_simplices)
        except ValueError as e:
            raise InvalidSpec(str(e)) from None
    doc = _verify_doc(rep, getattr(rep, "group", None))
    prof = rep.computed if isinstance(rep.computed, V.HomologyProfile) else None
    _emit(args, doc, _csv_tables(profile=prof, counts=rep.counts))
    return EXIT_OK if rep.match else EXIT_MISMATCH


def _need(args, *names) -> None:
    missing = [f"-{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidSpec(f"verify {args.claim} needs {' '.join(missing)}")


def cmd_omega(args) -> int:
    try:
        fam = V.omega_sets(args.max, args.depth)
    except ValueError as e:
        raise InvalidSpec(str(e)) from None
    body = {"max_element": args.max, "depth": args.depth, "count": len(fam), "sets": [sorted(s) for s in fam]}
    _emit(args, result_document(body, {}))
    return EXIT_OK


def _corpus_one(job) -> dict:
    path, max_elements, max_simplices = job
    row = {"file": path.name}
    try:
        spec, base = parse_spec(str(path))
        rep = run_main1(spec, base, max_elements, max_simplices)
        prof = rep.computed
        row.update(status="match" if rep.match else "mismatch", order=rep.group["order"],
                   betti={str(k): v for k, v in sorted(prof.betti.items()) if v},
                   torsion=prof.as_json()["torsion"])
    except TooLarge as e:
        row.update(status="too-large", error=str(e))
    except InvalidSpec as e:
        row.update(status="invalid", error=str(e))
    except AssertionError as e:
        row.update(status="mismatch", error=str(e))
    return row


def cmd_corpus(args) -> int:
    d = Path(args.dir)
    if not d.is_dir():
        raise InvalidSpec(f"not a directory: {args.dir}")
    files = sorted(d.glob("*.json"))
    if not files:
        raise InvalidSpec(f"no spec files in {args.dir}")
    jobs = args.jobs or int(os.environ.get("QK_JOBS", "1") or 1)
    work = [(f, args.max_elements, args.max_simplices) for f in files]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_corpus_one, work))
    else:
        rows = [_corpus_one(w) for w in work]
    doc = result_document({"results": rows}, {})
    if args.out:
        Path(args.out).write_text(dumps(doc))
    width = max(len(r["file"]) for r in rows)
    for r in rows:
        detail = json.dumps(r.get("betti", {}), sort_keys=True) if "betti" in r else r.get("error", "")
        print(f"{r['file']:<{width}}  {r['status']:<10}  {detail}")
    statuses = {r["status"] for r in rows}
    print(f"{sum(r['status'] == 'match' for r in rows)}/{len(rows)} match")
    if "invalid" in statuses:
        return EXIT_INVALID
    if "mismatch" in statuses:
        return EXIT_MISMATCH
    if "too-large" in statuses:
        return EXIT_TOO_LARGE
    return EXIT_OK


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000.0, 3)


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    gates = _Parser(add_help=False)
    gates.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    gates.add_argument("--max-simplices", type=int, default=DEFAULT_MAX_SIMPLICES)
    gates.add_argument("--out", help="write the result here instead of standard output")
    gates.add_argument("--csv", action="store_true", help="flat (degree, rank) and (n, a_n) tables")

    ap = _Parser(prog="quillenkit", description="Homology of truncated Quillen complexes of p-groups.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("homology", parents=[gates], help="reduced homology of A>=2 (or A>Z)")
    h.add_argument("spec", help="inline JSON group spec or path to one")
    h.add_argument("--reduce-to-z", action="store_true", help="use the poset A>Z instead of A>=2")
    h.set_defaults(func=cmd_homology)

    e = sub.add_parser("espec", parents=[gates], help="the family E(P) and its counts")
    e.add_argument("spec")
    e.set_defaults(func=cmd_espec)

    v = sub.add_parser("verify", parents=[gates], help="check a structural claim")
    v.add_argument("claim", choices=["main1", "prop-extra", "techlem", "corollary3", "a2-equiv"])
    v.add_argument("specs", nargs="*", help="group spec(s) for main1, a2-equiv and techlem")
    v.add_argument("-p", type=int)
    v.add_argument("-m", type=int)
    v.add_argument("-t", type=int)
    v.add_argument("-k", type=int)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("omega", parents=[gates], help="the collection Omega of integer sets")
    o.add_argument("--max", type=int, required=True)
    o.add_argument("--depth", type=int, required=True)
    o.set_defaults(func=cmd_omega)

    c = sub.add_parser("corpus", parents=[gates], help="verify main1 over a directory of spec files")
    c.add_argument("dir")
    c.add_argument("--jobs", type=int, default=None, help="worker processes (default: $QK_JOBS or 1)")
    c.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidSpec as e:
        print(f"quillenkit: {e}", file=sys.stderr)
        return EXIT_INVALID
    except TooLarge as e:
        print(f"quillenkit: refused: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except AssertionError as e:
        print(f"quillenkit: internal check failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
