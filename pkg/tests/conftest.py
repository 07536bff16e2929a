import pytest

from pleating.surface import Signature, Triangulation, canonical_triangulation

SIGNATURES = [Signature(1, (3,)), Signature(0, (3, 3, 3)), Signature(1, (4, 3)), Signature(2, (5,))]

ACCEPTANCE_RESULTS = {}


@pytest.fixture(params=SIGNATURES, ids=str)
def sig(request):
    return request.param


@pytest.fixture
def tri(sig):
    return canonical_triangulation(sig)


@pytest.fixture(scope="session")
def torus():
    return canonical_triangulation(Signature(1, (3,)))


@pytest.fixture(scope="session")
def pants():
    return canonical_triangulation(Signature(0, (3, 3, 3)))


@pytest.fixture(scope="session")
def square():
    """Two triangles glued along one arc: a disk with four boundary arcs.

    Triangle 0 has corners (0, 1, inf) after development; the shared arc
    runs from corner 2 to corner 0 of triangle 0, so it is the diagonal
    (0, inf) with apex 1 on the near side.
    """
    tri = Triangulation(((0, 1, 2), (3, 4, 5)), ((2, 3),), ((0, (0, 1, 4, 5)),))
    order = [0]
    while len(order) < 4:
        order.append(tri.boundary_successor(order[-1]))
    return Triangulation(tri.triangles, tri.pairing, ((0, tuple(order)),))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split("-")[1])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
