"""The rights-statement vocabulary: model, graph mapping, validation, editing."""

from .editorial import add_statement, apply_minor_change, create_new_version
from .graphs import load_scheme, scheme_to_graph, statement_from_graph, statement_to_graph
from .model import ConceptScheme, RightsStatement, StatementCollection
from .validation import validate

__all__ = [
    "ConceptScheme",
    "RightsStatement",
    "StatementCollection",
    "add_statement",
    "apply_minor_change",
    "create_new_version",
    "load_scheme",
    "scheme_to_graph",
    "statement_from_graph",
    "statement_to_graph",
    "validate",
]
