"""Sentence analysis end to end, golden-corpus checking and compound templates."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import OntoSemError
from .logic import (BOTTOM, EXISTS, And, Atom, Bottom, Lambda, Quant, TypeExpr, alpha_equal,
                    conj, parse_lf, print_lf, to_json)
from .ontology import Lexicon, Ontology
from .parser import VACUOUS, Sentence, build_initial_lf, parse
from .unify import Derivation, resolve_all

OK = "ok"
IMPLAUSIBLE = "implausible"
ERROR = "error"


@dataclass
class AnalysisResult:
    sentence: str
    initial: object
    final: object
    derivation: Derivation
    status: str
    error: str | None = None
    message: str = ""
    bare: bool = False
    tree: object = field(default=None, repr=False)
    _discharged: object = field(default=None, repr=False)

    @property
    def lambda_form(self):
        """For a bare noun phrase, the result with ``True`` abstracted back to ``\\P``."""
        if not self.bare or self.status != OK:
            return None
        return Lambda("P", _rename_pred(self._discharged, VACUOUS, "P"))

    def to_json(self) -> dict:
        out = {"sentence": self.sentence, "status": self.status}
        if self.status == ERROR:
            out["error"] = {"kind": self.error, "message": self.message}
            return out
        out["initial"] = to_json(self.initial)
        out["final"] = to_json(self.final)
        if self.lambda_form is not None:
            out["lambda"] = to_json(self.lambda_form)
        out["derivation"] = self.derivation.to_json()
        return out


def _rename_pred(lf, old, new):
    if isinstance(lf, Atom):
        return Atom(new, lf.args, lf.annotations) if lf.pred == old else lf
    if isinstance(lf, Quant):
        return Quant(lf.q, lf.var, lf.type, _rename_pred(lf.body, old, new))
    if isinstance(lf, And):
        return And(tuple(_rename_pred(c, old, new) for c in lf.conjuncts))
    return lf


def _drop_vacuous(lf):
    if isinstance(lf, Quant):
        return Quant(lf.q, lf.var, lf.type, _drop_vacuous(lf.body))
    if isinstance(lf, And):
        kept = [c for c in lf.conjuncts if not (isinstance(c, Atom) and c.pred == VACUOUS)]
        return conj(kept) if kept else lf
    return lf


def analyze(sentence: str, o: Ontology, lex: Lexicon) -> AnalysisResult:
    try:
        tree = parse(Sentence.from_text(sentence), lex)
        initial = build_initial_lf(tree, lex, o)
        final, deriv = resolve_all(o, initial)
    except OntoSemError as e:
        return AnalysisResult(sentence, None, None, Derivation(), ERROR, e.kind, str(e))
    if isinstance(final, Bottom):
        return AnalysisResult(sentence, initial, BOTTOM, deriv, IMPLAUSIBLE, bare=tree.bare, tree=tree)
    shown = _drop_vacuous(final) if tree.bare else final
    return AnalysisResult(sentence, initial, shown, deriv, OK, bare=tree.bare, tree=tree,
                          _discharged=final)


# -- golden corpus -------------------------------------------------------------

PASS, FAIL = "PASS", "FAIL"


@dataclass
class CorpusLine:
    sentence: str
    verdict: str          # PASS | FAIL | IMPLAUSIBLE | ERROR
    got: str = ""
    expected: str = ""
    detail: str = ""

    def render(self) -> str:
        line = f"{self.verdict:<11} {self.sentence}"
        if self.verdict in (FAIL, "IMPLAUSIBLE"):
            line += f"\n    expected: {self.expected}\n    got:      {self.got}"
        elif self.verdict == "ERROR":
            line += f"\n    {self.detail}"
        return line


@dataclass
class CorpusReport:
    lines: list

    @property
    def failures(self) -> int:
        return sum(1 for r in self.lines if r.verdict != PASS)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def render(self) -> str:
        body = [r.render() for r in self.lines]
        body.append(f"{len(self.lines) - self.failures}/{len(self.lines)} passed")
        return "\n".join(body)


def read_expected(text: str):
    """``{sentence: (expected text, parsed form or error message)}``."""
    table = {}
    for n, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if "\t" not in raw:
            table.setdefault(f"<line {n}>", (raw, f"line {n}: missing TAB separator"))
            continue
        sentence, expected = raw.split("\t", 1)
        try:
            table[sentence.strip()] = (expected.strip(), parse_lf(expected))
        except OntoSemError as e:
            table[sentence.strip()] = (expected.strip(), f"line {n}: {e}")
    return table


def check_sentence(sentence: str, expected, o: Ontology, lex: Lexicon) -> CorpusLine:
    if expected is None:
        return CorpusLine(sentence, "ERROR", detail="no expected form")
    text, form = expected
    if isinstance(form, str):
        return CorpusLine(sentence, "ERROR", expected=text, detail=form)
    result = analyze(sentence, o, lex)
    if result.status == ERROR:
        return CorpusLine(sentence, "ERROR", expected=text, detail=f"{result.error}: {result.message}")
    got = print_lf(result.final)
    if alpha_equal(result.final, form):
        return CorpusLine(sentence, PASS, got, text)
    verdict = "IMPLAUSIBLE" if result.status == IMPLAUSIBLE else FAIL
    return CorpusLine(sentence, verdict, got, text)


def run_corpus(corpus_file, expected_file, o: Ontology, lex: Lexicon) -> CorpusReport:
    """Analyze each corpus sentence and compare against its expected final form."""
    sentences = [s.strip() for s in Path(corpus_file).read_text(encoding="utf-8").splitlines()]
    sentences = [s for s in sentences if s and not s.startswith("#")]
    expected = read_expected(Path(expected_file).read_text(encoding="utf-8"))
    lines = [check_sentence(s, expected.get(s), o, lex) for s in sentences]
    lines += [CorpusLine(k, "ERROR", expected=v[0], detail=v[1])
              for k, v in expected.items() if k.startswith("<line ")]
    return CorpusReport(lines)


# -- compound templates ------------------------------------------------------------

@dataclass
class CompoundTemplate:
    dep_category: str
    head_category: str
    relation: str
    instances: list
    entry: object = field(default=None, repr=False, compare=False)

    def schema(self):
        """``\\P[(E x::dep)(E y::head)(Rel(..) & P(y))]`` for the generalised compound."""
        e = self.entry
        args = e.relation_args("x", "y") if e else ("y", "x")
        dep = TypeExpr(self.dep_category, e.dep_mode if e else "actual")
        head = TypeExpr(self.head_category, e.fresh_mode if e else "actual")
        body = And((Atom(self.relation, args), Atom("P", ("y",))))
        return Lambda("P", Quant(EXISTS, "x", dep, Quant(EXISTS, "y", head, body)))

    def render(self) -> str:
        return f"{self.relation}: {self.dep_category} * {self.head_category}  " \
               f"{print_lf(self.schema())}  [{', '.join(self.instances)}]"


def partition_compounds(compounds, o: Ontology, lex: Lexicon):
    """Group compounds by the bridge entry their analysis used.

    Returns ``(templates, unmatched)`` where ``unmatched`` lists
    ``(phrase, reason)`` for compounds that failed or needed no bridge.
    """
    groups, unmatched = {}, []
    for phrase in compounds:
        words = phrase.split()
        text = phrase if words and words[0].lower() in ("a", "an", "the") else f"a {phrase}"
        result = analyze(text, o, lex)
        tree = result.tree
        if result.status == ERROR:
            unmatched.append((phrase, f"{result.error}: {result.message}"))
            continue
        nominal = tree.np.nominal if tree.bare else None
        if nominal is None or nominal.modifier is None or nominal.adjectives:
            unmatched.append((phrase, "not a two-noun compound"))
            continue
        if result.status == IMPLAUSIBLE:
            unmatched.append((phrase, "implausible"))
            continue
        bridges = [s for s in result.derivation if s.kind == "bridge"]
        if not bridges:
            unmatched.append((phrase, "no bridge relation"))
            continue
        entry = bridges[0].entry
        if entry not in groups:
            groups[entry] = CompoundTemplate(entry.dep_type, entry.req_type, entry.relation, [], entry)
        groups[entry].instances.append(phrase)
    return list(groups.values()), unmatched


def extract_templates(compounds, o: Ontology, lex: Lexicon) -> list:
    return partition_compounds(compounds, o, lex)[0]
