"""
From sentences to logical forms
===============================

Each sentence is parsed, translated into an annotated logical form and
then resolved against the ontology.  The derivation records every step.
"""

from ontosem import analyze, default_data, print_lf

onto, lex = default_data()

for sentence in ["sheba is hungry", "sheba is a young artist", "an important and imminent event"]:
    r = analyze(sentence, onto, lex)
    print(sentence)
    print("  initial:", print_lf(r.initial))
    print("  final:  ", print_lf(r.final))

# an implausible phrase collapses to bottom; the last step names the clash
r = analyze("an artificial car", onto, lex)
print(r.status, print_lf(r.final))
print(r.derivation[-1])

# ill-formed input is reported, not raised
r = analyze("sheba hungry is", onto, lex)
print(r.status, r.error, r.message)
