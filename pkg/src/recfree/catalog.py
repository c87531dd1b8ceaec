"""Named arrangements shipped with the package."""
from __future__ import annotations

from functools import lru_cache

from .arrangement import Arrangement, disjoint_union, make_arrangement, orbit_arrangement
from .exactfield import Matrix, QQ, cyclotomic_field, prime_field


class UnknownName(KeyError):
    pass


def h3_generators():
    """The three reflections generating the Coxeter group H3 over Q(zeta_5)."""
    K = cyclotomic_field(5)
    z = K([0, 1, 0, 0])
    w = -z ** 2 - z ** 3  # golden ratio
    g1 = Matrix(K, [[1, 0, 0], [0, 1, 1], [0, 0, -1]])
    g2 = Matrix(K, [[-1, 0, 0], [w, 1, 0], [0, 0, 1]])
    g3 = Matrix(K, [[1, w, 0], [0, -1, 0], [0, 1, 1]])
    return K, [g1, g2, g3]


def h3_orbits():
    K, gens = h3_generators()
    z = K([0, 1, 0, 0])
    roots = orbit_arrangement(K, gens, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    if len(roots) != 15:
        raise AssertionError(f"positive-root orbit has {len(roots)} elements, expected 15")
    other = orbit_arrangement(K, gens, [[K(1), -z ** 2, K(0)]])
    if len(other) != 12:
        raise AssertionError(f"second orbit has {len(other)} elements, expected 12")
    return roots, other


B_F11_NORMALS = [
    (0, 0, 1), (0, 1, 1), (0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5),
    (0, 1, 6), (1, 0, 0), (1, 0, 1), (1, 2, 2), (1, 3, 1), (1, 3, 10),
    (1, 4, 3), (1, 4, 4), (1, 5, 7), (1, 6, 4), (1, 6, 6), (1, 8, 5),
    (1, 8, 8), (1, 9, 0), (1, 9, 1), (1, 9, 4), (1, 9, 5), (1, 9, 8),
    (1, 9, 9), (1, 10, 0), (1, 10, 5),
]

# hyperplanes added to B, in order, to reach an inductively free arrangement
B_F11_CHAIN = [(0, 1, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0), (1, 4, 0), (1, 5, 0), (1, 7, 0)]


def _a_h3_27():
    return disjoint_union(*h3_orbits())


def _b_plus(k):
    return make_arrangement(prime_field(11), B_F11_NORMALS + B_F11_CHAIN[:k])


_FIXTURES = {
    "A_H3_27": _a_h3_27,
    "B_F11_27": lambda: _b_plus(0),
    "boolean3": lambda: make_arrangement(QQ(), [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    # x, y, z, x+y+z: generic, not free
    "generic4": lambda: make_arrangement(QQ(), [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
    # x, y, x-y, z over F_11: three planes through the z-axis plus z
    "near_pencil4": lambda: make_arrangement(prime_field(11), [(1, 0, 0), (0, 1, 0), (1, 10, 0), (0, 0, 1)]),
    # braid arrangement A_3 (x_i - x_j after coning): x, y, z, x-y, x-z, y-z
    "braid6": lambda: make_arrangement(QQ(), [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]),
}
for _k in range(1, 8):
    _FIXTURES[f"B_F11_plus_{_k}"] = (lambda k: lambda: _b_plus(k))(_k)


def builtin_names() -> list[str]:
    return list(_FIXTURES)


@lru_cache(maxsize=None)
def builtin(name: str) -> Arrangement:
    try:
        factory = _FIXTURES[name]
    except KeyError:
        raise UnknownName(name) from None
    return factory()
