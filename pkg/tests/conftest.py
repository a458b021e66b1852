import math

import pytest
from hypothesis import strategies as st

from safetyreg.game import CostMatrix, GameParams


@pytest.fixture
def canonical():
    return GameParams.canonical()


@st.composite
def cost_matrices(draw, lo=0.5, hi=2.0, corr=0.9):
    aa = draw(st.floats(lo, hi))
    bb = draw(st.floats(lo, hi))
    rho = draw(st.floats(-corr, corr))
    return CostMatrix(aa, bb, rho * math.sqrt(aa * bb))


@st.composite
def valid_games(draw, delta_lo=0.05, delta_hi=0.95):
    return GameParams(
        draw(cost_matrices()),
        draw(cost_matrices()),
        draw(st.floats(0.5, 2.0)),
        draw(st.floats(0.5, 2.0)),
        draw(st.floats(delta_lo, delta_hi)),
    )


@pytest.fixture(scope="session")
def canonical_bargained():
    """Every canonical game of the bargaining grid across the default share grid, one worker."""
    from safetyreg.bargaining import bargained_sweeps
    from safetyreg.sweep import SweepGrid

    return bargained_sweeps(GameParams.canonical(), SweepGrid.bargaining(), workers=1)
