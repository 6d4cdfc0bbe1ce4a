import os
import pathlib

import pytest

from curvehull.curve import ProjectiveCurve, TrigCurveSpec, to_projective
from curvehull.rings import Ring

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session", autouse=True)
def cache_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("pd_cache")
    os.environ["CURVEHULL_CACHE_DIR"] = str(path)
    return path


@pytest.fixture(scope="session")
def quartic_curve():
    # (cos t, sin t + cos 2t, sin 2t)
    spec = TrigCurveSpec(2, [0, 0, 0],
                         [[1, 0], [0, 1], [0, 0]],
                         [[0, 0], [1, 0], [0, 1]])
    return to_projective(spec)


@pytest.fixture(scope="session")
def running_curve():
    # (cos t, sin 2t, cos 3t)
    spec = TrigCurveSpec(3, [0, 0, 0],
                         [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
                         [[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    return to_projective(spec)


@pytest.fixture(scope="session")
def morton_curve():
    R = Ring(("x0", "x1"))
    p = R.parse
    f0 = 2 * p("x0^4+2*x0^2*x1^2+x1^4-2*x0^3*x1+2*x0*x1^3") * p("x0^2+x1^2")
    f1 = (p("x0-x1") * p("x0+x1") * p("x1^2+4*x0*x1+x0^2")
          * p("x1^2-4*x0*x1+x0^2"))
    f2 = 2 * p("x0*x1") * p("x0^2-3*x1^2") * p("3*x0^2-x1^2")
    f3 = p("2*x0*x1+x0^2-x1^2") * p("x0^2-x1^2-2*x0*x1") * p("x0^2+x1^2")
    return ProjectiveCurve([f0, f1, f2, f3])


@pytest.fixture(scope="session")
def golden():
    def read(name):
        return (GOLDEN / name).read_text().strip()

    return read
