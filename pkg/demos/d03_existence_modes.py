"""
Abstract and actual existence
=============================

Verbs such as `cancelled` or `sought` do not entail that their object
exists, while `attended` or `found` do.  An adjective that needs an
actual object (`lengthy`) brings an abstract one down.
"""

from ontosem import analyze, default_data
from ontosem.logic import Quant

onto, lex = default_data()


def binders(lf):
    while isinstance(lf, Quant):
        yield lf
        lf = lf.body


for sentence in ["john attended the seminar", "john cancelled the seminar",
                 "john sought a unicorn", "john found a unicorn",
                 "john planned the trip", "john planned the lengthy trip"]:
    final = analyze(sentence, onto, lex).final
    obj = list(binders(final))[-1]
    print(f"{sentence:32} {obj.var}::{obj.type.category:8} {obj.type.mode.value}")
