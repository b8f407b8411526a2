"""
Types, subsumption and pairwise unification
===========================================

Load the shipped ontology, ask subsumption questions and unify a few
pairs of type requirements by hand.
"""

from ontosem import TypeExpr, default_data, print_lf, unify_pair
from ontosem.logic import ABSTRACT

onto, lex = default_data()

# the hierarchy is a DAG rooted at `entity`
for lower, upper in [("human", "entity"), ("car", "artifact"), ("entity", "human")]:
    print(f"{lower} < {upper}: {onto.subsumes(lower, upper)}")

# comparable requirements resolve to the more specific category
print(unify_pair(onto, TypeExpr("entity"), TypeExpr("animal")).type)

# an actual requirement brings an abstract object down, never the reverse
print(unify_pair(onto, TypeExpr("trip", ABSTRACT), TypeExpr("event")).type)
print(unify_pair(onto, TypeExpr("trip"), TypeExpr("event", ABSTRACT)).type)

# incomparable requirements either go through a registered bridge...
bridged = unify_pair(onto, TypeExpr("book"), TypeExpr("content"), var="b", fresh="c")
print(print_lf(bridged.relation), bridged.fresh_type)

# ...or fail outright
print(unify_pair(onto, TypeExpr("car"), TypeExpr("naturalObj")))
