import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from g1lc.syntax import (
    And, Atom, Const, Exists0, Exists1, Forall0, Forall1, Not, Or, Signature, Var,
)

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SIG = Signature(frozenset({"c", "d"}), {"f": 1}, {"R": 1, "E": 2})

terms = st.recursive(
    st.sampled_from([Var("x"), Var("y"), Var("z"), Const("c"), Const("d")]),
    lambda t: st.builds(lambda a: _app("f", a), t), max_leaves=3)


def _app(fn, a):
    from g1lc.syntax import App
    return App(fn, (a,))


atoms = st.one_of(
    st.builds(lambda t: Atom("X", (t,)), terms),
    st.builds(lambda t: Atom("Y", (t,)), terms),
    st.just(Atom("P")),
    st.builds(lambda t: Atom("R", (t,), True), terms),
    st.builds(lambda a, b: Atom("E", (a, b), True), terms, terms),
)


def _extend(children):
    v0 = st.sampled_from(["x", "y", "z"])
    v1 = st.sampled_from(["X", "Y", "Z"])
    return st.one_of(
        st.builds(Not, children),
        st.builds(Or, children, children),
        st.builds(And, children, children),
        st.builds(Exists0, v0, children),
        st.builds(Forall0, v0, children),
        st.builds(lambda v, b: Exists1(v, 1, b), v1, children),
        st.builds(lambda v, b: Forall1(v, 1, b), v1, children),
    )


formulas = st.recursive(atoms, _extend, max_leaves=6)


@pytest.fixture
def corpus():
    return CORPUS


# ------------------------------------------------- acceptance reporting

CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    num = marker.args[0]
    ok, detail = CRITERIA.get(num, (True, ""))
    CRITERIA[num] = (ok and rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, detail = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


def note(num: int, detail: str):
    """Attach a one-line description to a criterion's summary line."""
    ok, _ = CRITERIA.get(num, (True, ""))
    CRITERIA[num] = (ok, detail)
