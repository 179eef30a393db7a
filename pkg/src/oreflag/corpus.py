"""Built-in presentations, modules and matrix sets."""

from __future__ import annotations

from pathlib import Path

from .field import QQ
from .linalg import Matrix
from .presentation import OrePresentation, parse_presentation

PRESENTATIONS = {
    "qplane-q2": """\
# quantum plane, y x = 2 x y
field Q
gens x y
swap y x : sigma = 2*x
leftswap x y : sigma = 1/2*x
""",
    "qplane-gf5": """\
# quantum plane over GF(5), y x = 2 x y
field GF 5
gens x y
swap y x : sigma = 2*x
leftswap x y : sigma = 3*x
""",
    "qplane-qm1": """\
# quantum plane at q = -1: x and y anticommute
field Q
gens x y
swap y x : sigma = -x
leftswap x y : sigma = -x
""",
    "qaffine3": """\
# quantum affine 3-space: b a = 2 a b, c a = 3 a c, c b = b c
field Q
gens a b c
swap b a : sigma = 2*a
swap c a : sigma = 3*a
leftswap a b : sigma = 1/2*a
leftswap a c : sigma = 1/3*a
leftswap b c : sigma = b
""",
    "qmatrix22": """\
# 2x2 quantum matrices at q = 2, generators a b c d = X11 X12 X21 X22
field Q
gens a b c d
swap b a : sigma = 2*a
swap c a : sigma = 2*a
swap c b : sigma = b
swap d a : sigma = a, theta = 3/2*b*c
swap d b : sigma = 2*b
swap d c : sigma = 2*c
leftswap a b : sigma = 1/2*a
leftswap a c : sigma = 1/2*a
leftswap b c : sigma = b
leftswap a d : sigma = a, theta = -3/2*b*c
leftswap b d : sigma = 1/2*b
leftswap c d : sigma = 1/2*c
""",
    "borel": """\
# enveloping algebra of the Borel subalgebra of sl2: [h, e] = 2 e
field Q
gens h e
swap e h : sigma = h - 2
leftswap h e : sigma = h + 2
""",
    "borel-bracket": """\
# the same algebra generated in the order e, h: h e = e h + 2 e
field Q
gens e h
swap h e : sigma = e, theta = 2*e
leftswap e h : sigma = e, theta = -2*e
""",
    "heisenberg": """\
# enveloping algebra of the Heisenberg Lie algebra: [x, y] = z central
field Q
gens z x y
swap y x : sigma = x, theta = -z
leftswap z x : sigma = z
leftswap z y : sigma = z
leftswap x y : sigma = x, theta = z
""",
    "s3": """\
# group algebra of S3: r^3 = 1, s^2 = 1, s r = r^2 s
field Q
gens r s
power r 3 = 1
power s 2 = 1
swap s r : sigma = r^2
leftswap r s : sigma = r^2
""",
    "s3-gf7": """\
# group algebra of S3 over GF(7)
field GF 7
gens r s
power r 3 = 1
power s 2 = 1
swap s r : sigma = r^2
leftswap r s : sigma = r^2
""",
    "qaffine3-half": """\
# quantum affine 3-space b a = 2 a b, x a = 2 a x, x b = b x
field Q
gens a b x
swap b a : sigma = 2*a
swap x a : sigma = 2*a
leftswap a b : sigma = 1/2*a
leftswap a x : sigma = 1/2*a
leftswap b x : sigma = b
""",
    "commutative2": """\
# polynomial ring in two variables
field Q
gens x y
leftswap x y : sigma = x
""",
    "qaffine3-gf7": """\
# quantum affine 3-space over GF(7): b a = 2 a b, c a = 3 a c
field GF 7
gens a b c
swap b a : sigma = 2*a
swap c a : sigma = 3*a
leftswap a b : sigma = 4*a
leftswap a c : sigma = 5*a
leftswap b c : sigma = b
""",
}


def _mat(rows):
    return Matrix(QQ, rows)


def _unit(n, i, j):
    return Matrix.unit(QQ, n, i, j)


# generating matrices of finite-dimensional algebras
MATRIX_SETS = {
    "t2-upper": lambda: [_unit(2, 0, 0), _unit(2, 0, 1)],
    "jordan3": lambda: [_mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])],
    "heisenberg-image": lambda: [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)],
}

# modules: presentation name and one matrix per generator
MODULES = {
    "borel-nat": ("borel", lambda: [_mat([[1, 0], [0, -1]]), _unit(2, 0, 1)]),
    "heisenberg3": ("heisenberg", lambda: [_unit(3, 0, 2), _unit(3, 0, 1), _unit(3, 1, 2)]),
    "qplane-nat": ("qplane-q2", lambda: [_mat([[1, 0], [0, 2]]), _unit(2, 0, 1)]),
}

BUILTIN_PREFIX = "builtin:"


def builtin_names() -> list[str]:
    return sorted(PRESENTATIONS) + sorted(MATRIX_SETS) + sorted(MODULES)


def builtin_presentation(name: str) -> OrePresentation:
    try:
        return parse_presentation(PRESENTATIONS[name])
    except KeyError:
        raise KeyError(f"no built-in presentation {name!r}") from None


def builtin_matrices(name: str) -> list[Matrix]:
    try:
        return MATRIX_SETS[name]()
    except KeyError:
        raise KeyError(f"no built-in matrix set {name!r}") from None


def builtin_module(name: str):
    from .module import FDModule

    try:
        pres, mats = MODULES[name]
    except KeyError:
        raise KeyError(f"no built-in module {name!r}") from None
    return FDModule(builtin_presentation(pres), mats())


def resolve_presentation(ref: str, base: Path | None = None) -> OrePresentation:
    """A presentation from a built-in name, a file path, or inline DSL text."""
    if ref.startswith(BUILTIN_PREFIX):
        return builtin_presentation(ref[len(BUILTIN_PREFIX):])
    if "\n" in ref or ref.lstrip().startswith("field"):
        return parse_presentation(ref)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    if path.exists():
        return parse_presentation(path.read_text())
    if ref in PRESENTATIONS:
        return builtin_presentation(ref)
    raise FileNotFoundError(f"no presentation file or built-in named {ref!r}")
