import numpy as np
import pytest

from qcap.channels import StinespringChannel


def random_channel(da: int, db: int, de: int, rng: np.random.Generator) -> StinespringChannel:
    """Random Stinespring channel via QR of a Ginibre matrix."""
    g = rng.standard_normal((db * de, da)) + 1j * rng.standard_normal((db * de, da))
    q, _ = np.linalg.qr(g)
    return StinespringChannel(q[:, :da], da, db, de, "random")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
