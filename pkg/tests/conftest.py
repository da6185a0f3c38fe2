# path: tests/conftest.py
import numpy as np
import pytest

from dunkl.grid import GridSpec
from dunkl.kernel import KernelEvaluator
from dunkl.roots import WeightContext


def gaussian(width=1.0, center=0.0):
    def func(x):
        return np.exp(-np.sum((x - center) ** 2, axis=-1) / (2.0 * width**2))
    return func


@pytest.fixture
def line_grid():
    # h ~ 0.047; Gaussians of unit width are resolved to machine precision
    return GridSpec(1, 12.0, 512)


@pytest.fixture
def plane_grid():
    return GridSpec(2, 10.0, 96)


def make_context(preset, k, **kw):
    ctx = WeightContext.from_preset(preset, k, **kw)
    return ctx, KernelEvaluator.for_context(ctx)


@pytest.fixture(params=[1.0, 2.0], ids=["k1", "k2"])
def rank1(request):
    return make_context("rank1", request.param)


@pytest.fixture
def rank1_k1():
    return make_context("rank1", 1.0)


@pytest.fixture
def classical():
    return make_context("rank1", 0.0)


@pytest.fixture
def z2():
    return make_context("z2_product", [1.0, 1.0], dimension=2)
