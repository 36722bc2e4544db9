import numpy as np
import pytest

from src.grs3d.algebra_catalog import FamilyTag, sample_instance


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_instances(rng):
    """Forty-six constraint-satisfying draws per family (506 in all), parameters in [-5, 5]."""
    return {tag: [sample_instance(tag, rng, bound=5.0) for _ in range(46)] for tag in FamilyTag}
