"""Opt-in stress cases excluded from the default suite.

Run with `pytest -m stress tests/test_stress.py` (about five minutes: the
closure walks 28800 exact 4x4 matrices over a degree-8 number field).
"""

import pytest

from invforge import corpus


@pytest.mark.stress
def test_two_icosahedral_blocks_with_swap_closure():
    g = corpus.load_corpus_group("2i2i2.group")
    assert g.order == 2 * 120 * 120
    assert len(g.center_indices()) == 2
