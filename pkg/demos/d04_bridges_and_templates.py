"""
Bridge relations: dot objects, metonymy and compounds
=====================================================

When two requirements on one variable are incomparable, a registered
bridge introduces a new object and a relation linking it to the original.
"""

from ontosem import analyze, default_data, print_lf
from ontosem.pipeline import partition_compounds

onto, lex = default_data()

# a book is read as content and burned as a physical object
r = analyze("john read a book and then he burned it", onto, lex)
print(print_lf(r.final))
for step in r.derivation:
    print("   ", step)

# painting an elephant does not require an actual elephant
print(print_lf(analyze("john painted a large elephant", onto, lex).final))

# the ham sandwich stands for the customer who ordered it
print(print_lf(analyze("the ham sandwich ordered a beer", onto, lex).final))

# compounds make the implicit relation explicit; a bare noun phrase keeps
# its predicate abstraction
r = analyze("a book review", onto, lex)
print(print_lf(r.lambda_form))

# grouping compounds by the bridge they used gives reusable templates
templates, unmatched = partition_compounds(
    ["book review", "design review", "book proposal", "design plan", "brick house", "car"],
    onto, lex)
for t in templates:
    print(t.render())
for phrase, reason in unmatched:
    print("unmatched:", phrase, f"({reason})")
