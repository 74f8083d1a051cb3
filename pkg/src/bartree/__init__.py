"""RoI extraction and bar-tree template fingerprinting for focused harvesting."""
from __future__ import annotations

from ._kernels import BACKEND
from .bars import BarParams, BarTree, Fingerprint, bar_tree, fingerprint, nett_areas, total_area
from .detect import Action, ChangeReport, CompareMode, DeltaCase, classify_delta, compare, decide
from .errors import BarTreeError
from .harvester import Harvester, recheck
from .lexer import TagClasses, clean, serialize, tokenize
from .pipeline import analyze, page_fingerprint
from .records import LabeledRecord, TargetConfig, TargetRecord
from .reverse import DepthProfile, count_tags, depth_profile, split, symmetry
from .roi import RoiSpec, locate_roi, locate_subrois
from .store import store_load, store_save

__version__ = "0.1.0"

__all__ = [
    "Action", "BACKEND", "BarParams", "BarTree", "BarTreeError", "ChangeReport",
    "CompareMode", "DeltaCase", "DepthProfile", "Fingerprint", "Harvester",
    "LabeledRecord", "RoiSpec", "TagClasses", "TargetConfig", "TargetRecord",
    "analyze", "bar_tree", "classify_delta", "clean", "compare", "count_tags",
    "decide", "depth_profile", "fingerprint", "locate_roi", "locate_subrois",
    "nett_areas", "page_fingerprint", "recheck", "serialize", "split",
    "store_load", "store_save", "symmetry", "tokenize", "total_area",
]
