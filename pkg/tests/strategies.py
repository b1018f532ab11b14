"""Shared hypothesis strategies."""
import numpy as np
from hypothesis import strategies as st

from ads3 import sl2
from ads3.catalog import GroupLabel, element, spec

labels = st.sampled_from(list(GroupLabel))
angles = st.floats(0.0, 2 * np.pi)
moderate = st.floats(-1.5, 1.5)


@st.composite
def points(draw):
    """Iwasawa point K_theta A_t N_s with moderate parameters."""
    return sl2.iwasawa(draw(angles), draw(moderate), draw(st.floats(-2.0, 2.0)))


@st.composite
def elements(draw, label):
    k = spec(label).param_count
    return element(label, [draw(moderate) for _ in range(k)])
