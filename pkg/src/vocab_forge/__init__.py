"""vocab-forge: publish a versioned SKOS vocabulary of rights statements.

The package is split into a small RDF toolkit (:mod:`vocab_forge.rdf`), the
vocabulary domain model (:mod:`vocab_forge.vocab`), the URI grammar
(:mod:`vocab_forge.uris`), HTTP negotiation primitives
(:mod:`vocab_forge.conneg`), the publication service
(:mod:`vocab_forge.http`) and the operator CLI (:mod:`vocab_forge.cli`).
"""

from importlib import resources

__version__ = "0.1.0"

DEFAULT_BASE = "http://rightsstatements.org"


def sample_vocabulary_path():
    """Path of the bundled sample vocabulary (``vocab-1.0.ttl``)."""
    return resources.files(__name__) / "data" / "vocab-1.0.ttl"
