import pytest

from gatsp.tsp import Instance, load_berlin52

# published optimal tour for berlin52 (length 7542 under EUC_2D rounding)
BERLIN52_OPT = (1, 49, 32, 45, 19, 41, 8, 9, 10, 43, 33, 51, 11, 52, 14, 13, 47, 26, 27, 28,
                12, 25, 4, 6, 15, 5, 24, 48, 38, 37, 40, 39, 36, 35, 34, 44, 46, 16, 29, 50,
                20, 23, 30, 2, 7, 42, 21, 17, 3, 18, 31, 22)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def berlin52():
    return load_berlin52()


@pytest.fixture
def square():
    return Instance.from_coords([(0, 0), (0, 1), (1, 1), (1, 0)], name="square")


@pytest.fixture
def collinear():
    return Instance.from_coords([(0, 0), (1, 0), (2, 0)], name="line")


def random_instance(rng, n, metric="rounded", scale=1000):
    if metric == "rounded":
        pts = rng.integers(0, scale, size=(n, 2))
    else:
        pts = rng.random((n, 2)) * scale
    return Instance.from_coords(pts, name=f"rand{n}", metric=metric)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
