"""Command line front end: ``concur-homology <command> ...``.

Exit codes: 0 success / valid / certified, 1 invalid input or failed
check, 2 not bisimilar, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import io
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

from . import bisim, construct, formats
from .errors import ConcurHomologyError
from .homology import chain_complex, scheme_of_system
from .lts import residual, validate_system
from .petri import Limits, explore
from .smith import smith_normal_form

EXIT_OK, EXIT_FAIL, EXIT_NOT_BISIMILAR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
LIMITS_ENV = "CONCUR_HOMOLOGY_LIMITS"


class RunReport:
    def __init__(self, command):
        self.command = command
        self.inputs = {}
        self.results = {}
        self.warnings = []
        self._start = time.perf_counter()

    def add_input(self, path):
        path = Path(path)
        self.inputs[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()

    def to_json(self, timing=True):
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        }
        if timing:
            out["timing"] = {"seconds": round(time.perf_counter() - self._start, 6)}
        return out


def _limits(args) -> Limits:
    text = getattr(args, "limits", None) or os.environ.get(LIMITS_ENV, "")
    return Limits.parse(text) if text else Limits()


def _load(path, kind=None):
    doc = formats.read_json(path)
    kind = kind or formats.kind_of(doc)
    loader = {
        "lts": formats.system_from_json,
        "net": formats.net_from_json,
        "scheme": formats.scheme_from_json,
    }[kind]
    return kind, loader(doc)


def _signature_lines(sig):
    lines = [f"H{n} = {sig.describe(n)}" for n in range(len(sig.groups))]
    lines.append(f"H_n = 0 for n >= {len(sig.groups)}")
    return lines


def cmd_validate(args, report, out):
    report.add_input(args.path)
    kind, obj = _load(args.path, args.type)
    report.results["type"] = kind
    if kind == "scheme":
        report.results["valid"] = True
        out.append(f"scheme: valid ({len(obj.vertices)} vertices, dimension {obj.dimension})")
        return EXIT_OK
    if kind == "net":
        exploration = explore(obj, _limits(args))
        if exploration.dropped_events:
            report.warnings.append(f"never enabled events dropped: {exploration.dropped_events}")
        obj = exploration.system
    rep = validate_system(obj)
    report.results.update(rep.to_json())
    out.append(rep.format())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_homology(args, report, out):
    report.add_input(args.path)
    kind, obj = _load(args.path, args.type)
    report.results["type"] = kind
    if kind == "net":
        exploration = explore(obj, _limits(args))
        if exploration.dropped_events:
            report.warnings.append(f"never enabled events dropped: {exploration.dropped_events}")
        report.results["markings"] = len(exploration.markings)
        obj = exploration.system
    if args.state is not None:
        if kind == "scheme":
            raise ConcurHomologyError("--state applies to systems and nets, not schemes")
        obj = residual(obj, args.state)
        report.results["state"] = args.state
    scheme = obj if kind == "scheme" else scheme_of_system(obj)
    cx = chain_complex(scheme)
    report.results["signature"] = cx.signature.to_json()
    report.results["f_vector"] = scheme.f_vector()
    out.extend(_signature_lines(cx.signature))
    if args.dump_matrices:
        dumped = []
        for n, m in sorted(cx.matrices.items()):
            out.append(f"d{n} {m.rows} {m.cols}")
            if m.rows and m.cols:
                out.append(m.format())
            out.append(f"# snf d{n}: {' '.join(map(str, cx.smith[n].diagonal))}")
            dumped.append({
                "degree": n,
                "rows": m.rows,
                "cols": m.cols,
                "row_basis": [list(b) for b in cx.bases[n - 1]],
                "col_basis": [list(b) for b in cx.bases[n]],
                "entries": m.to_lists(),
                "snf": list(cx.smith[n].diagonal),
            })
        report.results["matrices"] = dumped
    return EXIT_OK


def cmd_bisim(args, report, out):
    report.add_input(args.path_a)
    report.add_input(args.path_b)
    a = formats.system_from_json(formats.read_json(args.path_a))
    b = formats.system_from_json(formats.read_json(args.path_b))
    if args.certify:
        report.add_input(args.certify)
        span = formats.span_from_json(
            formats.read_json(args.certify), a, b, base_dir=Path(args.certify).parent
        )
        verdict = bisim.certify_bisimilar(span)
    else:
        verdict = bisim.refute_bisimilar(a, b, args.max_len)
    report.results.update(verdict.to_json())
    out.append(f"verdict: {verdict.kind}")
    if verdict.kind == bisim.NOT_BISIMILAR:
        out.append(f"witness ({verdict.side}, length {verdict.length}): {' '.join(verdict.witness) or '(empty)'}")
    out.append(verdict.report)
    return {
        bisim.CERTIFIED: EXIT_OK,
        bisim.NOT_BISIMILAR: EXIT_NOT_BISIMILAR,
        bisim.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[verdict.kind]


def cmd_construct(args, report, out):
    if args.scheme:
        report.add_input(args.scheme)
        scheme = formats.scheme_from_json(formats.read_json(args.scheme))
        report.results["source"] = Path(args.scheme).name
    else:
        scheme = construct.fixture_scheme(args.fixture)
        report.results["source"] = args.fixture
    net = construct.petri_from_scheme(scheme)
    net_doc = formats.net_to_json(net)
    if args.output:
        Path(args.output).write_text(json.dumps(net_doc, indent=2) + "\n")
    report.results["net"] = net_doc
    status = EXIT_OK
    if args.verify:
        check = construct.verify_construction(scheme, _limits(args))
        report.results["verification"] = check.to_json()
        out.append(check.format())
        status = EXIT_OK if check.ok else EXIT_FAIL
    if not args.output and not args.json:
        # net document goes to stdout, verification text after it
        out.insert(0, json.dumps(net_doc, indent=2))
    elif args.output:
        out.insert(0, f"net written to {args.output} ({len(net_doc['places'])} places, "
                      f"{len(net_doc['events'])} events)")
    return status


def cmd_snf(args, report, out):
    report.add_input(args.path)
    text = Path(args.path).read_text()
    if text.lstrip().startswith(("[", "{")):
        m = formats.matrix_from_json(json.loads(text))
    else:
        m = formats.parse_matrix_text(text)
    form = smith_normal_form(m)
    report.results.update(
        rows=m.rows, cols=m.cols, diagonal=list(form.diagonal), rank=form.rank
    )
    out.append(f"diagonal: {' '.join(map(str, form.diagonal))}")
    out.append(f"rank: {form.rank}")
    return EXIT_OK


# -- golden reproduction ---------------------------------------------------

REFERENCE_RUNS = {
    "cube_homology": ["homology", "{f}/cube.json", "--dump-matrices"],
    "cube_state_001": ["homology", "{f}/cube.json", "--state", "001"],
    "cube_state_011": ["homology", "{f}/cube.json", "--state", "011"],
    "cube_validate": ["validate", "{f}/cube.json"],
    "cube_broken_validate": ["validate", "{f}/cube_broken_diamond.json"],
    "cube_d1_snf": ["snf", "{f}/cube_d1.txt"],
    "trees_refute": ["bisim", "{f}/trees_left.json", "{f}/trees_right.json", "--refute"],
    "cube_rename_certify": ["bisim", "{f}/cube.json", "{f}/cube_renamed.json",
                            "--certify", "{f}/span_cube_renamed.json"],
    "petri_homology": ["homology", "{f}/petri_homology.json", "--dump-matrices"],
    "construct_sphere1": ["construct", "sphere:1", "--verify"],
    "construct_rp2": ["construct", "rp2", "--verify"],
}


def fixtures_dir() -> Path:
    return Path(str(resources.files("concur_homology") / "fixtures"))


def run_captured(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def cmd_reproduce(args, report, out):
    fdir = fixtures_dir()
    golden = Path(args.golden) if args.golden else fdir / "golden"
    failures = 0
    for name, template in REFERENCE_RUNS.items():
        argv = [a.format(f=fdir) for a in template] + ["--json", "--no-timing"]
        code, text = run_captured(argv)
        doc = json.loads(text)
        doc["exit_code"] = code
        rendered = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        target = golden / f"{name}.json"
        if args.update:
            golden.mkdir(parents=True, exist_ok=True)
            target.write_text(rendered)
            out.append(f"updated {name}")
            continue
        if not target.exists():
            failures += 1
            out.append(f"MISSING {name}")
        elif target.read_text() != rendered:
            failures += 1
            out.append(f"DIFF    {name}")
        else:
            out.append(f"ok      {name}")
    report.results["failures"] = failures
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="concur-homology", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON run report")
    common.add_argument("--no-timing", action="store_true", help=argparse.SUPPRESS)
    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--limits", help="maxStates=N,maxTokens=M (default from $%s)" % LIMITS_ENV)
    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", choices=["lts", "net", "scheme"], help="input kind (default: detect)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, limits, typed], help="check the system axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("homology", parents=[common, limits, typed], help="homology signature")
    p.add_argument("path")
    p.add_argument("--state", help="compute for the residual system at this state")
    p.add_argument("--dump-matrices", action="store_true", help="print boundary matrices")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("bisim", parents=[common], help="refute or certify bisimilarity")
    p.add_argument("path_a")
    p.add_argument("path_b")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--refute", action="store_true", help="compare residual homology layers")
    mode.add_argument("--certify", metavar="SPAN", help="check a span of open morphisms")
    p.add_argument("--max-len", type=int, help="longest word length to compare")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("construct", parents=[common, limits], help="Petri net with given homology")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("fixture", nargs="?", help="sphere:n, rp2, point, wedge(..), union(..)")
    src.add_argument("--scheme", help="scheme JSON file")
    p.add_argument("--verify", action="store_true", help="compare net homology with the scheme")
    p.add_argument("-o", "--output", help="write the net JSON here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("reproduce", parents=[common], help="rerun the reference fixtures against golden reports")
    p.add_argument("--update", action="store_true", help="rewrite the golden reports")
    p.add_argument("--golden", help="golden report directory")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = RunReport(args.command)
    out = []
    try:
        code = args.func(args, report, out)
    except (ConcurHomologyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            report.results["error"] = str(exc)
            print(json.dumps(report.to_json(timing=not args.no_timing), indent=2))
        return EXIT_FAIL
    if args.json:
        print(json.dumps(report.to_json(timing=not args.no_timing), indent=2))
    else:
        if out:
            print("\n".join(out))
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
