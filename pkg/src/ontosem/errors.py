"""Exception hierarchy shared by the loaders, parser and resolver."""


class OntoSemError(Exception):
    """Base class for every error raised by this package."""

    kind = "error"


class ParseError(OntoSemError):
    kind = "ParseError"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OntologyError(ParseError):
    kind = "OntologyError"


class CycleError(OntologyError):
    kind = "CycleError"

    def __init__(self, cycle, line=None):
        self.cycle = tuple(cycle)
        super().__init__("cycle through " + " < ".join(self.cycle), line)


class UnknownParent(OntologyError):
    kind = "UnknownParent"

    def __init__(self, name, line=None):
        self.name = name
        super().__init__(f"unknown parent category {name!r}", line)


class UnknownCategory(ParseError):
    kind = "UnknownCategory"

    def __init__(self, name, line=None):
        self.name = name
        super().__init__(f"unknown category {name!r}", line)


class AmbiguousBridge(OntoSemError):
    kind = "AmbiguousBridge"

    def __init__(self, dep, req, entries):
        self.entries = tuple(entries)
        names = ", ".join(f"{e.relation}({e.dep_type}, {e.req_type})" for e in self.entries)
        super().__init__(f"ambiguous bridge for ({dep}, {req}): {names}")


class ArityMismatch(OntoSemError):
    kind = "ArityMismatch"


class UnknownToken(OntoSemError):
    kind = "UnknownToken"

    def __init__(self, word, position):
        self.word = word
        self.position = position
        super().__init__(f"unknown token {word!r} at position {position}")


class UngrammaticalSequence(OntoSemError):
    kind = "UngrammaticalSequence"

    def __init__(self, position, detail=""):
        self.position = position
        msg = f"ungrammatical sequence at position {position}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class PronounUnresolved(OntoSemError):
    kind = "PronounUnresolved"

    def __init__(self, pronoun, position):
        self.pronoun = pronoun
        self.position = position
        super().__init__(f"no antecedent for {pronoun!r} at position {position}")
