import hypothesis.strategies as st
from hypothesis import settings

from eisenfoil.eisenstein import EisInt, EisRat

settings.register_profile("default", deadline=None)
settings.load_profile("default")

BIG = 10 ** 6

coords = st.integers(-BIG, BIG)
small = st.integers(-30, 30)

eisints = st.builds(EisInt, coords, coords)
nonzero_eisints = eisints.filter(bool)
small_eisints = st.builds(EisInt, small, small)
small_nonzero = small_eisints.filter(bool)

eisrats = st.builds(EisRat, small_eisints, small_nonzero)
