import pytest

from mdzeta.cone import Cone
from mdzeta.quadfield import make_field

# Frozen reference values, produced once by independent routes and
# cross-checked against each other:
#   ZETA2, ZETA3  - tail-corrected lattice sums at maxNorm 1e8 / 1e7
#                   (certified bounds 2.3e-12 and < 1e-16)
#   ZETA12        - t-domain quadrature at 40 nodes per axis, agreeing with
#                   the depth-2 series at maxNorm 2e6 within its 1.1e-9 bound
ZETA2 = {2: 0.03310670235899208, 3: 0.05659934363591983, 5: 0.07934796190750283}
ZETA3 = {2: 0.0025734731204661095, 3: 0.005984890698879359, 5: 0.010204949757221155}
ZETA12 = {2: 0.0016257903609128873, 3: 0.003549641143506094, 5: 0.005797544993025643}


def cone_for(D, **kw):
    return Cone.from_field(make_field(D), **kw)


@pytest.fixture(scope="session")
def cones():
    return {D: cone_for(D) for D in (2, 3, 5, 13)}


@pytest.fixture(scope="session")
def cone5(cones):
    return cones[5]


@pytest.fixture(scope="session")
def cone2(cones):
    return cones[2]
