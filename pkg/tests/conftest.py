import numpy as np
import pytest

import kinklab as kl


@pytest.fixture(scope="session")
def grid50():
    return kl.make_grid(50.0, 1024)


@pytest.fixture(scope="session")
def bg50(grid50):
    return kl.kink_background(grid50, 0.0, 5.0)


def gaussian_pair(grid, delta, c1=1.5, w1=2.0, c2=-2.0, w2=3.0, amp2=0.4):
    """Normalized generic (u1, u2) perturbation used across tests."""
    x = grid.x
    u1 = np.exp(-((x - c1) ** 2) / (2 * w1**2))
    u2 = amp2 * np.exp(-((x - c2) ** 2) / (2 * w2**2))
    pair = kl.FieldPair(grid.field(u1), grid.field(u2))
    s = delta / kl.norm(pair, "H1xL2")
    return kl.FieldPair(grid.field(u1 * s), grid.field(u2 * s))


def report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)
