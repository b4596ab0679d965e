import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from streamlogic import ltl
from streamlogic.streams import Alphabet, FiniteElement, UPStream

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LETTERS = "abc"
AB = Alphabet.of("ab")
ABC = Alphabet.of(LETTERS)

cells = st.one_of(st.none(), st.sampled_from(LETTERS))
total_cells = st.sampled_from(LETTERS)


@st.composite
def streams(draw, max_lasso=6, cell=cells):
    q = draw(st.integers(1, max_lasso))
    p = draw(st.integers(0, max_lasso - q))
    return UPStream(tuple(draw(cell) for _ in range(p)), tuple(draw(cell) for _ in range(q)))


def total_streams(max_lasso=6):
    return streams(max_lasso, total_cells)


finite_elements = st.dictionaries(st.integers(0, 5), st.sampled_from(LETTERS), max_size=3).map(FiniteElement.of)

_leaves = st.one_of(st.sampled_from([ltl.TRUE, ltl.FALSE]), st.sampled_from(LETTERS).map(ltl.Atom))


def _extend(children, negation):
    ops = [
        st.builds(ltl.And, children, children),
        st.builds(ltl.Or, children, children),
        st.builds(ltl.Next, children),
        st.builds(ltl.Until, children, children),
        st.builds(ltl.WeakUntil, children, children),
    ]
    if negation:
        ops.append(st.builds(ltl.Not, children))
    return st.one_of(*ops)


def formulas(negation=False, max_leaves=8):
    return st.recursive(_leaves, lambda ch: _extend(ch, negation), max_leaves=max_leaves)


def g_formulas(max_leaves=8):
    def ext(ch):
        return st.one_of(
            st.builds(ltl.And, ch, ch), st.builds(ltl.Or, ch, ch), st.builds(ltl.Next, ch), st.builds(ltl.Until, ch, ch)
        )

    return st.recursive(_leaves, ext, max_leaves=max_leaves)


_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
