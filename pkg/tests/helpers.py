import numpy as np
from hypothesis import strategies as st

# positions of the reference scene (5 x 5 x 3 m room)
REFERENCE_TX = (2.5, 2.5, 1.5)
REFERENCE_RX = (3.8, 4.0, 0.6)
C = 3e8


@st.composite
def room_positions(draw, lengths=(5.0, 5.0, 3.0), margin=0.05):
    """Point strictly inside the default room."""
    return tuple(
        draw(st.floats(min_value=margin, max_value=length - margin, allow_nan=False))
        for length in lengths
    )


mirror_indices = st.tuples(*(st.integers(min_value=-5, max_value=5) for _ in range(3)))


@st.composite
def unit_vectors(draw):
    v = np.array([draw(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)) for _ in range(3)])
    norm = np.linalg.norm(v)
    if norm < 1e-3:
        return np.array([0.0, 0.0, 1.0])
    return v / norm
