"""The publication server."""

from .headers import build_alternates, build_link
from .pages import render_page, render_scheme_page
from .service import Headers, Request, Response, ServerConfig, VocabularySnapshot, handle, representation

__all__ = [
    "Headers",
    "Request",
    "Response",
    "ServerConfig",
    "VocabularySnapshot",
    "build_alternates",
    "build_link",
    "handle",
    "render_page",
    "render_scheme_page",
    "representation",
]
