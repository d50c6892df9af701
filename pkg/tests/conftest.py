from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from qunroll.arith import LaurentPoly, RatFunc

settings.register_profile(
    "qunroll", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("qunroll")

# Lines recorded by tests/test_acceptance.py; echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []

small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)


@st.composite
def laurent_polys(draw, lo: int = -4, hi: int = 4, max_terms: int = 5, integral: bool = False):
    coeff = st.integers(-6, 6) if integral else small_fractions
    terms = draw(st.dictionaries(st.integers(lo, hi), coeff, max_size=max_terms))
    return LaurentPoly({e: c for e, c in terms.items() if c})


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent_polys(**kw))
    return p if p else LaurentPoly.const(1)


@st.composite
def ratfuncs(draw):
    return RatFunc(draw(laurent_polys(max_terms=3)), draw(nonzero_laurent(max_terms=3)))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
