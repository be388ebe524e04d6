import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sunada import io  # noqa: E402
from sunada.perm_core import conjugacy_classes, left_cosets, parse_cycles  # noqa: E402
from sunada.spectral import symmetrize  # noqa: E402


class Triple:
    """A catalog entry enumerated once per test session."""

    def __init__(self, name):
        self.spec = io.load_catalog_entry(name)
        self.G, self.subs = self.spec.build()
        self.classes = conjugacy_classes(self.G)
        self.H1 = self.subs[self.spec.h1]
        self.H2 = self.subs[self.spec.h2]
        self.X1 = left_cosets(self.G, self.H1)
        self.X2 = left_cosets(self.G, self.H2)
        self.S = symmetrize(
            self.G, [self.G.index(parse_cycles(c, self.spec.degree)) for c in self.spec.default_gens]
        )

    def el(self, text):
        return self.G.index(parse_cycles(text, self.spec.degree))


_cache = {}


def triple(name):
    if name not in _cache:
        _cache[name] = Triple(name)
    return _cache[name]


# criterion number -> PASS/FAIL line, filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


POSITIVE = ["gl32", "affine8"]
ALL = ["gl32", "affine8", "s4", "s3"]


@pytest.fixture
def gl32():
    return triple("gl32")


@pytest.fixture
def affine8():
    return triple("affine8")


@pytest.fixture
def s4():
    return triple("s4")


@pytest.fixture
def s3():
    return triple("s3")


@pytest.fixture(params=POSITIVE)
def positive(request):
    return triple(request.param)


@pytest.fixture(params=ALL)
def any_triple(request):
    return triple(request.param)
