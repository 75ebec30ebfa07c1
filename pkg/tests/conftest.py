from __future__ import annotations

import mpmath
import pytest

mpmath.mp.dps = 30


@pytest.fixture(autouse=True)
def _single_thread_default(monkeypatch):
    """Keep the A-sum thread count fixed so timings do not depend on the host."""
    monkeypatch.setenv("CONETORSION_THREADS", "2")
