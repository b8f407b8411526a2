"""``ontosem`` command line.

Exit codes: 0 ok, 1 error, 2 implausible (the sentence analyzed to ``_|_``).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import OntoSemError
from .logic import print_lf
from .ontology import DEFAULT_LEXICON, DEFAULT_ONTOLOGY, check_lexicon, check_ontology, data_dir
from .pipeline import ERROR, IMPLAUSIBLE, analyze, partition_compounds, run_corpus

EXIT_OK, EXIT_ERROR, EXIT_IMPLAUSIBLE = 0, 1, 2


class _LoadError(Exception):
    pass


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _LoadError(f"{path}: {e.strerror or e}")


def _load(args):
    onto_text = _read(args.ontology)
    o, errors = check_ontology(onto_text)
    if errors:
        raise _LoadError(_located(args.ontology, errors[0]))
    lex, errors = check_lexicon(_read(args.lexicon), o)
    if errors:
        raise _LoadError(_located(args.lexicon, errors[0]))
    return o, lex


def _located(path, err) -> str:
    line = getattr(err, "line", None)
    msg = str(err)
    prefix = f"line {line}: "
    if line is not None and msg.startswith(prefix):
        msg = msg[len(prefix):]
    return f"{path}:{line}: {msg}" if line is not None else f"{path}: {msg}"


def cmd_analyze(args) -> int:
    o, lex = _load(args)
    result = analyze(" ".join(args.sentence), o, lex)
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
    elif result.status == ERROR:
        print(f"error: {result.error}: {result.message}", file=sys.stderr)
    else:
        print(print_lf(result.final))
        if args.trace:
            print(f"initial: {print_lf(result.initial)}")
            for step in result.derivation:
                print(step)
            if result.lambda_form is not None:
                print(f"lambda: {print_lf(result.lambda_form)}")
    if result.status == ERROR:
        return EXIT_ERROR
    return EXIT_IMPLAUSIBLE if result.status == IMPLAUSIBLE else EXIT_OK


def cmd_batch(args) -> int:
    o, lex = _load(args)
    for p in (args.corpus, args.expected):
        if not Path(p).is_file():
            raise _LoadError(f"{p}: no such file")
    report = run_corpus(args.corpus, args.expected, o, lex)
    if args.json:
        print(json.dumps([vars(r) for r in report.lines], indent=2))
    else:
        print(report.render())
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_templates(args) -> int:
    o, lex = _load(args)
    phrases = list(args.phrases)
    if args.file:
        phrases += [s.strip() for s in _read(args.file).splitlines() if s.strip()]
    templates, unmatched = partition_compounds(phrases, o, lex)
    if args.json:
        print(json.dumps({
            "templates": [{"dep": t.dep_category, "head": t.head_category,
                           "relation": t.relation, "instances": t.instances,
                           "schema": print_lf(t.schema())} for t in templates],
            "unmatched": [{"phrase": p, "reason": r} for p, r in unmatched],
        }, indent=2))
    else:
        for t in templates:
            print(t.render())
        for phrase, reason in unmatched:
            print(f"unmatched: {phrase} ({reason})")
    return EXIT_OK


def cmd_check(args) -> int:
    problems = []
    o, errors = check_ontology(_read(args.ontology))
    problems += [_located(args.ontology, e) for e in errors]
    if o is not None:
        _, errors = check_lexicon(_read(args.lexicon), o)
        problems += [_located(args.lexicon, e) for e in errors]
    else:
        problems.append(f"{args.lexicon}: not checked, ontology is invalid")
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {args.ontology}, {args.lexicon}")
    return EXIT_ERROR if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    data = data_dir()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ontology", type=Path, default=data / DEFAULT_ONTOLOGY)
    common.add_argument("--lexicon", type=Path, default=data / DEFAULT_LEXICON)
    common.add_argument("--trace", action="store_true", help="print the derivation steps")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="ontosem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyze one sentence")
    p.add_argument("sentence", nargs="+")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", parents=[common], help="check a corpus against expected forms")
    p.add_argument("corpus", nargs="?", type=Path, default=data / "corpus.txt")
    p.add_argument("expected", nargs="?", type=Path, default=data / "expected.tsv")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("templates", parents=[common], help="group nominal compounds by bridge")
    p.add_argument("phrases", nargs="*")
    p.add_argument("--file", type=Path, help="one compound per line")
    p.set_defaults(func=cmd_templates)

    p = sub.add_parser("check", parents=[common], help="validate ontology and lexicon files")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _LoadError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OntoSemError as e:
        print(f"error: {e.kind}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
