"""Compositional semantics over a typed commonsense ontology."""
from .errors import OntoSemError
from .logic import (ABSTRACT, ACTUAL, BOTTOM, Mode, TypeExpr, alpha_equal, apply, parse_lf,
                    print_lf)
from .ontology import Lexicon, Ontology, default_data, load_lexicon, load_ontology
from .parser import build_initial_lf, parse
from .pipeline import AnalysisResult, analyze, extract_templates, run_corpus
from .unify import resolve_all, unify_pair

__version__ = "0.1.0"
