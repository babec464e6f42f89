import functools

import pytest
from hypothesis import HealthCheck, settings

from datadisc.modelfile import load_system
from datadisc.polyring import VarRegistry

settings.register_profile(
    "datadisc", deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("datadisc")


# Printed polynomials used across several test modules.
LINEAR_DXJ = (
    "441*u0^4 + 4998*u0^3*u1 + 20041*u0^2*u1^2 + 33320*u0*u1^3 + 19600*u1^4"
    " - 756*u0^3*u2 + 20034*u0^2*u1*u2 + 83370*u0*u1^2*u2 + 79800*u1^3*u2"
    " - 5346*u0^2*u2^2 + 55890*u0*u1*u2^2 + 119025*u1^2*u2^2 + 4860*u0*u2^3"
    " + 76950*u1*u2^3 + 18225*u2^4 - 1596*u0^3*u3 - 11116*u0^2*u1*u3"
    " - 17808*u0*u1^2*u3 + 4480*u1^3*u3 + 7452*u0^2*u2*u3 - 7752*u0*u1*u2*u3"
    " + 49680*u1^2*u2*u3 - 17172*u0*u2^2*u3 + 71460*u1*u2^2*u3 + 27540*u2^3*u3"
    " + 2116*u0^2*u3^2 + 6624*u0*u1*u3^2 - 4224*u1^2*u3^2 - 9528*u0*u2*u3^2"
    " + 15264*u1*u2*u3^2 + 14724*u2^2*u3^2 - 1216*u0*u3^3 - 512*u1*u3^3"
    " + 3264*u2*u3^3 + 256*u3^4")

CUBIC_DISC = "27*u0^2*u3^2 - 18*u0*u1*u2*u3 + 4*u0*u2^3 + 4*u1^3*u3 - u1^2*u2^2"

LINEAR_J = (
    "-l1^2*p0*p1 - 4*l1^2*p0*p2 - 25*l1^2*p0*p3 - l1^2*p1*p2 - 36*l1^2*p1*p3"
    " - 49*l1^2*p2*p3 + l1*l2*p0*p1 + 8*l1*l2*p0*p2 - 125*l1*l2*p0*p3"
    " + 3*l1*l2*p1*p2 - 144*l1*l2*p1*p3 - 147*l1*l2*p2*p3 + 12*l2^2*p0*p1"
    " + 32*l2^2*p0*p2 - 150*l2^2*p0*p3 + 4*l2^2*p1*p2 - 108*l2^2*p1*p3"
    " - 98*l2^2*p2*p3")


@functools.lru_cache(maxsize=None)
def system(name):
    return load_system(name)


@functools.lru_cache(maxsize=None)
def dxj_by_elimination(name):
    from datadisc.discriminant import dxj_elimination
    return dxj_elimination(system(name)).dxj


@pytest.fixture
def linear():
    return system("linear")


@pytest.fixture
def toy():
    return system("toy")


@pytest.fixture
def xyz():
    return VarRegistry(("x", "y", "z"))


# one line per acceptance criterion, printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
