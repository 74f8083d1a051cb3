"""Exception hierarchy.

Every operational failure derives from :class:`BarTreeError`, which the CLI
maps to exit code 1.
"""
from __future__ import annotations


class BarTreeError(Exception):
    """Base class for all library errors."""


class RoiNotFound(BarTreeError):
    """The RoI display text does not occur in the page."""


class AmbiguousRoi(BarTreeError):
    def __init__(self, count: int):
        super().__init__(f"RoI text occurs {count} times; give an occurrence index")
        self.count = count


class SubRoiNotFound(BarTreeError):
    def __init__(self, label: str):
        super().__init__(f"attribute {label!r} not found inside the RoI")
        self.label = label


class InvalidRoiSpec(BarTreeError):
    pass


class DegenerateProfile(BarTreeError):
    """No layout structure surrounds the RoI."""


class InvalidRatio(BarTreeError):
    pass


class ParamMismatch(BarTreeError):
    pass


class FetchError(BarTreeError):
    """Base for fetch failures; subclasses let callers retry vs defer."""


class NetworkError(FetchError):
    pass


class FetchTimeout(FetchError):
    pass


class HttpStatus(FetchError):
    def __init__(self, code: int, url: str = ""):
        super().__init__(f"HTTP {code} for {url}" if url else f"HTTP {code}")
        self.code = code
        self.url = url


class DuplicateTarget(BarTreeError):
    pass


class UnknownTarget(BarTreeError):
    pass


class PatternStale(BarTreeError):
    """None of the stored attribute anchors match the page."""


class CorruptStore(BarTreeError):
    pass


class Inapplicable(BarTreeError):
    """A synthetic mutation cannot be applied to the given page."""
