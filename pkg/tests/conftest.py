import random

import pytest

from oreflag.field import Field
from oreflag.linalg import Matrix, row_reduce

GF5 = Field(5)
GF7 = Field(7)

_acceptance = []


def rand_matrix(field, n, rng, bound=3, density=1.0):
    rows = []
    for _ in range(n):
        rows.append([field(rng.randint(-bound, bound)) if rng.random() < density else field.zero for _ in range(n)])
    return Matrix(field, rows, n)


def rand_invertible(field, n, rng, bound=2):
    while True:
        m = rand_matrix(field, n, rng, bound)
        if row_reduce(m).rank == n:
            return m


def rand_upper(field, n, rng, bound=3, diag=True, density=0.7):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j > i or (j == i and diag):
                row.append(field(rng.randint(-bound, bound)) if rng.random() < density else field.zero)
            else:
                row.append(field.zero)
        rows.append(row)
    return Matrix(field, rows, n)


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_runtest_makereport(item, call):
    if call.when == "call" and item.module.__name__.endswith("test_acceptance"):
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            ok = call.excinfo is None
            _acceptance.append((marker.args[0], marker.args[1], ok))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")


def rand_flagged(field, n, count, rng, strict=False, bound=3):
    """``count`` matrices sharing a random flag; strictly upper in that flag if ``strict``."""
    g = rand_invertible(field, n, rng)
    g_inv = g.inverse()
    return [g @ rand_upper(field, n, rng, bound, diag=not strict) @ g_inv for _ in range(count)]


def rand_system(field, n, rng):
    """A random family: nilpotent, triangularizable or unstructured, in equal shares."""
    count = rng.randint(1, 3)
    kind = rng.randrange(3)
    if kind == 0:
        return rand_flagged(field, n, count, rng, strict=True)
    if kind == 1:
        return rand_flagged(field, n, count, rng)
    return [rand_matrix(field, n, rng, 2, density=0.5) for _ in range(count)]


def solve_upper_partner(field, fixed, q, fixed_is_right, rng):
    """A random upper triangular ``X`` with ``fixed X = q X fixed`` (or ``X fixed = q fixed X``)."""
    n = fixed.nrows
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    rows = [[] for _ in range(n * n)]
    for i, j in slots:
        e = Matrix.unit(field, n, i, j)
        rel = fixed @ e - (e @ fixed).scale(q) if fixed_is_right else e @ fixed - (fixed @ e).scale(q)
        for k, x in enumerate(rel.flat()):
            rows[k].append(x)
    kernel = row_reduce(Matrix(field, rows, len(slots))).kernel
    out = Matrix.zeros(field, n)
    for v in kernel.basis:
        c = field(rng.randint(-2, 2))
        for (i, j), t in zip(slots, v):
            if t:
                out = out + Matrix.unit(field, n, i, j).scale(c * t)
    return out


def quantum_plane_pair(field, n, rng, q=2):
    """Upper triangular ``(X, Y)`` with ``Y X = q X Y``; one of them is chosen at random first."""
    first = rand_upper(field, n, rng, 2)
    diag = [first[i, i] if rng.random() < 0.5 else field.zero for i in range(n)]
    rows = [list(r) for r in first.rows]
    for i in range(n):
        rows[i][i] = diag[i]
    first = Matrix(field, rows, n)
    if rng.random() < 0.5:
        # first is Y; solve Y X = q X Y for X
        return solve_upper_partner(field, first, q, True, rng), first
    # first is X; solve Y X = q X Y for Y
    return first, solve_upper_partner(field, first, q, False, rng)


def ladder_weights(family, c, k):
    if family == "borel":
        return [c + 2 * i for i in range(k)]
    return [c / 2 ** i for i in range(k)]


def ladder_matrices(field, family, c, k):
    """Truncated highest-weight module: the first generator is diagonal, the second shifts ``v_i`` to ``v_(i+1)``."""
    shift = Matrix(field, [[1 if r == s + 1 else 0 for s in range(k)] for r in range(k)], k)
    return [Matrix.diag(field, ladder_weights(family, field(c), k)), shift]
