from __future__ import annotations

from pathlib import Path

import pytest

from bartree.roi import RoiSpec

FIXTURES = Path(__file__).parent / "fixtures"

TITLE = "Tracking layout drift in machine‑generated catalogue pages"
AUTHORS = "M. Rivera, K. Osei"
ABSTRACT = (
    "Catalogue sites rebuild every page from a database, so the markup around each "
    "record follows one template that may change without notice."
)
ATTRIBUTES = (("title", TITLE), ("authors", AUTHORS), ("abstract", ABSTRACT))


@pytest.fixture
def publication_html() -> bytes:
    return (FIXTURES / "publication.html").read_bytes()


@pytest.fixture
def publication_spec() -> RoiSpec:
    return RoiSpec((FIXTURES / "roi.txt").read_text(encoding="utf-8"), ATTRIBUTES)

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
