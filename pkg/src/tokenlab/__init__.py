"""tokenlab: design, validate, measure, and stress-test token economies."""

__version__ = "0.1.0"

from .errors import TokenlabError  # noqa: F401
