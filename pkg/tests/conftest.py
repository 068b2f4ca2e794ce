import functools
from fractions import Fraction
from importlib import resources

import pytest

from quasihopf import io
from quasihopf.constructors import sweedler
from quasihopf.qhopf import twist
from quasihopf.tensor import DualElement

BUNDLED = ["group_z2", "group_s3", "twisted_dual_z2", "twisted_dual_z3_gf7"]
ALL = BUNDLED + ["group_z3_q", "group_z3_gf3", "sweedler"]


def gallery_path(name):
    return resources.files("quasihopf") / "gallery" / f"{name}.json"


@functools.lru_cache(maxsize=None)
def load(name):
    return io.load(gallery_path(name))


@functools.lru_cache(maxsize=None)
def sweedler_twisted():
    """Sweedler's algebra twisted by F = 1⊗1 + x⊗gx + ½ x⊗x (a non-trivial reassociator)."""
    Sw = sweedler()
    A = Sw.A
    x, g, one = A.basis(1), A.basis(2), A.unit()
    return twist(Sw, one @ one + x @ (g * x) + (x @ x).scale(Fraction(1, 2)), name="sw_twist")


def sign_character(H):
    """Sign of S3, read off as -1 exactly on the group elements of order two."""
    one = H.one()
    vals = []
    for i in range(H.dim):
        g = H.b(i)
        vals.append(-1 if g != one and g * g == one else 1)
    return DualElement(H.A, vals)


@pytest.fixture(params=BUNDLED)
def bundled(request):
    return load(request.param)


@pytest.fixture(params=ALL)
def instance(request):
    return load(request.param)
