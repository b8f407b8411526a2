"""Controlled English fragment and its compositional translation.

Grammar (tokens are lowercased; multiword lexicon entries match longest first)::

    sentence := NP                                bare noun phrase
              | clause ("and" "then" clause)*
    clause   := NP VP
    NP       := Name | Pronoun | Det Nominal
    Nominal  := Adjs Noun [Noun]                  two nouns form a compound
    Adjs     := (Adj ["and"])*
    VP       := "is" Adj ("and" Adj)* | "is" Det Nominal | Verb [NP]

Noun phrases denote predicate abstractions ``\\P[...]``; verb phrases denote
properties of the subject.  Sentence meanings come out of :func:`apply` and
are then put into prenex form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PronounUnresolved, UngrammaticalSequence, UnknownToken
from .logic import (ABSTRACT, EXISTS, EXISTS_UNIQUE, And, Atom, Lambda, Naming, Property,
                    Quant, TypeExpr, apply, conj, fresh_name, prenex)
from .ontology import Lexicon, Ontology

DETERMINERS = {"a": EXISTS, "an": EXISTS, "the": EXISTS_UNIQUE}
COPULA = "is"
PRONOUNS = {"he", "she", "it"}
FUNCTION_WORDS = set(DETERMINERS) | {COPULA, "and", "then"} | PRONOUNS

VACUOUS = "True"
VACUOUS_TYPE = TypeExpr("entity", ABSTRACT)


@dataclass(frozen=True)
class Sentence:
    raw: str
    tokens: tuple

    @classmethod
    def from_text(cls, text: str) -> "Sentence":
        tokens = tuple(re.findall(r"[a-z0-9_']+", text.lower()))
        if not tokens:
            raise UngrammaticalSequence(0, "empty sentence")
        return cls(text, tokens)


@dataclass(frozen=True)
class Nominal:
    adjectives: tuple
    noun: str
    modifier: str | None = None


@dataclass(frozen=True)
class NP:
    kind: str            # name | pronoun | det
    word: str
    position: int
    nominal: Nominal | None = None


@dataclass(frozen=True)
class Copula:
    adjectives: tuple = ()
    nominal: Nominal | None = None


@dataclass(frozen=True)
class VerbPhrase:
    verb: str
    obj: NP | None = None


@dataclass(frozen=True)
class Clause:
    subject: NP
    predicate: Copula | VerbPhrase


@dataclass(frozen=True)
class ParseTree:
    clauses: tuple = ()
    np: NP | None = None

    @property
    def bare(self) -> bool:
        return self.np is not None


class _Parser:
    def __init__(self, tokens, lex: Lexicon):
        self.toks = tokens
        self.lex = lex
        self.i = 0
        self.width = lex.max_words

    def at_end(self):
        return self.i >= len(self.toks)

    def word(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def match(self, kind, at=None):
        """Longest lexicon surface of ``kind`` starting at ``at``: ``(surface, length)``."""
        at = self.i if at is None else at
        table = self.lex.table(kind)
        for n in range(min(self.width, len(self.toks) - at), 0, -1):
            surface = " ".join(self.toks[at:at + n])
            if surface in table:
                return surface, n
        return None

    def take(self, kind):
        m = self.match(kind)
        if m is None:
            return None
        self.i += m[1]
        return m[0]

    def fail(self, detail):
        raise UngrammaticalSequence(self.i, detail)

    def sentence(self):
        if self.word() in DETERMINERS:
            start = self.i
            np = self.np()
            if self.at_end():
                return ParseTree(np=np)
            self.i = start
        clauses = [self.clause()]
        while not self.at_end():
            if self.word() == "and" and self.word(1) == "then":
                self.i += 2
                clauses.append(self.clause())
            else:
                self.fail(f"unexpected {self.word()!r}")
        return ParseTree(clauses=tuple(clauses))

    def clause(self):
        subject = self.np()
        if self.word() == COPULA:
            self.i += 1
            return Clause(subject, self.copula())
        verb = self.take("verb")
        if verb is None:
            self.fail("expected a verb or 'is'")
        arity = len(self.lex.verbs[verb].slots)
        obj = None
        if arity == 2:
            obj = self.np()
        return Clause(subject, VerbPhrase(verb, obj))

    def copula(self):
        if self.word() in DETERMINERS:
            self.i += 1
            at = self.i
            nominal = self.nominal()
            entry = self.lex.nouns[nominal.noun]
            if entry.predicate is None or nominal.modifier is not None:
                raise UngrammaticalSequence(at, "only predicative nouns follow 'is a'")
            return Copula(nominal.adjectives, nominal)
        adjs = self.adjectives()
        if not adjs:
            self.fail("expected an adjective or a determiner after 'is'")
        return Copula(adjs)

    def np(self):
        at, w = self.i, self.word()
        if w is None:
            self.fail("expected a noun phrase")
        if w in DETERMINERS:
            self.i += 1
            return NP("det", w, at, self.nominal())
        if w in PRONOUNS:
            self.i += 1
            return NP("pronoun", w, at)
        name = self.take("name")
        if name is not None:
            return NP("name", name, at)
        self.fail("expected a noun phrase")

    def adjectives(self):
        adjs = []
        while True:
            adj = self.take("adj")
            if adj is None:
                break
            adjs.append(adj)
            if self.word() == "and" and self.match("adj", self.i + 1):
                self.i += 1
        return tuple(adjs)

    def nominal(self):
        adjs = self.adjectives()
        first = self.take("noun")
        if first is None:
            self.fail("expected a noun")
        at = self.i
        second = self.take("noun")
        if second is None:
            return Nominal(adjs, first)
        if self.match("noun"):
            self.fail("compounds have exactly two nouns")
        if self.lex.nouns[first].predicate or self.lex.nouns[second].predicate:
            raise UngrammaticalSequence(at, "compounds combine category nouns")
        return Nominal(adjs, second, first)


def _check_tokens(tokens, lex: Lexicon):
    covered = [False] * len(tokens)
    width = lex.max_words
    for i, tok in enumerate(tokens):
        if tok in FUNCTION_WORDS:
            covered[i] = True
        for kind in ("noun", "adj", "verb", "name"):
            table = lex.table(kind)
            for n in range(1, min(width, len(tokens) - i) + 1):
                if " ".join(tokens[i:i + n]) in table:
                    covered[i:i + n] = [True] * n
    for i, ok in enumerate(covered):
        if not ok:
            raise UnknownToken(tokens[i], i)


def parse(s, lex: Lexicon) -> ParseTree:
    """Parse a :class:`Sentence` (or raw text)."""
    if isinstance(s, str):
        s = Sentence.from_text(s)
    _check_tokens(s.tokens, lex)
    return _Parser(s.tokens, lex).sentence()


# -- translation -------------------------------------------------------------------

@dataclass
class _Antecedent:
    var: str
    named: bool
    category: str
    head: tuple          # annotation stack carried by uses of a compound


class _Builder:
    def __init__(self, lex: Lexicon, ontology: Ontology | None):
        self.lex = lex
        self.onto = ontology
        self.used = set()
        self.antecedents = []

    def var(self, word):
        letters = re.sub(r"[^a-z]", "", word.lower()) or "x"
        name = fresh_name(letters[0], self.used)
        self.used.add(name)
        return name

    def human(self, category):
        if self.onto is not None and category in self.onto:
            return self.onto.subsumes(category, "human")
        return category == "human"

    def np(self, np: NP) -> Lambda:
        if np.kind == "name":
            label = self.lex.names[np.word]
            v = self.var(label)
            self.antecedents.append(_Antecedent(v, True, "entity", ()))
            body = And((Naming(v, label), Atom("P", (v,))))
            return Lambda("P", Quant(EXISTS_UNIQUE, v, TypeExpr("entity"), body))
        if np.kind == "pronoun":
            ante = self.resolve(np)
            return Lambda("P", Atom("P", (ante.var,), (ante.head,)))
        nom = np.nominal
        adjs = [self.lex.adjectives[a] for a in nom.adjectives]
        if nom.modifier is not None:
            # compound: the modifier noun types the binder, the head noun is a
            # requirement on every use of the phrase
            binder = self.lex.nouns[nom.modifier].type
            head = (self.lex.nouns[nom.noun].type,)
            v = self.var(nom.modifier)
            parts = [Atom("P", (v,), (head,))]
            parts += [Atom(a.predicate, (v,), (head + (a.sel,),)) for a in adjs]
            category = head[0].category
        else:
            entry = self.lex.nouns[nom.noun]
            binder, head = entry.type, ()
            v = self.var(nom.noun)
            parts = [Atom("P", (v,))]
            if entry.predicate:
                parts.append(Atom(entry.predicate, (v,), ((entry.type,),)))
            parts += [Atom(a.predicate, (v,), ((a.sel,),)) for a in adjs]
            category = binder.category
        self.antecedents.append(_Antecedent(v, False, category, head))
        return Lambda("P", Quant(DETERMINERS[np.word], v, binder, conj(parts)))

    def resolve(self, np: NP) -> _Antecedent:
        for ante in reversed(self.antecedents):
            if np.word in ("he", "she") and ante.named:
                return ante
            if np.word == "it" and not ante.named and not self.human(ante.category):
                return ante
        raise PronounUnresolved(np.word, np.position)

    def vp(self, pred) -> Property:
        s = self.var("z")
        if isinstance(pred, Copula):
            parts = []
            if pred.nominal is not None:
                entry = self.lex.nouns[pred.nominal.noun]
                parts.append(Atom(entry.predicate, (s,), ((entry.type,),)))
            for a in pred.adjectives:
                adj = self.lex.adjectives[a]
                parts.append(Atom(adj.predicate, (s,), ((adj.sel,),)))
            return Property(s, conj(parts))
        verb = self.lex.verbs[pred.verb]
        if pred.obj is None:
            return Property(s, Atom(verb.predicate, (s,), ((verb.slots[0],),)))
        obj = self.np(pred.obj)
        o = self.var("z")
        inner = Atom(verb.predicate, (s, o), ((verb.slots[0],), (verb.slots[1],)))
        return Property(s, apply(obj, Property(o, inner)))

    def clause(self, c: Clause):
        subject = self.np(c.subject)
        return prenex(apply(subject, self.vp(c.predicate)))

    def sentence(self, tree: ParseTree):
        if tree.bare:
            z = self.var("z")
            vacuous = Property(z, Atom(VACUOUS, (z,), ((VACUOUS_TYPE,),)))
            return prenex(apply(self.np(tree.np), vacuous))
        # later clauses stay in the scope of earlier binders so pronouns bind
        return prenex(conj(self.clause(c) for c in tree.clauses))


def build_initial_lf(tree: ParseTree, lex: Lexicon, ontology: Ontology | None = None):
    """Annotated initial form; a bare noun phrase is discharged with ``True``."""
    return _Builder(lex, ontology).sentence(tree)
