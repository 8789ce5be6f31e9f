import pytest

from ncpart.coxtype import COMB, GROUP, parse_type


@pytest.fixture
def T():
    """Shorthand: T("A1^2") or T("B1", comb=True)."""
    def make(text, comb=False):
        return parse_type(text, COMB if comb else GROUP)
    return make
