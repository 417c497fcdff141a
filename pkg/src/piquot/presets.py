"""Built-in matrices, patterns, and generator presets for the worked examples.

Everything here is constructed, not read from disk; the JSON fixtures under
fixtures/ serialize the same objects for CLI use.
"""

from __future__ import annotations

from .groups import (
    BoundarySpec,
    CongruencePattern,
    boundary_center_generators,
    embed_sl2,
    pattern_member,
    transvection,
)
from .matrices import IntMatrix, PolarizedForm


def form_1p(p: int) -> PolarizedForm:
    """Polarization of type (1, p)."""
    return PolarizedForm([1, p])


def m0_prime(p: int) -> IntMatrix:
    """The extra unipotent witness: I plus p in row 2, column 4."""
    rows = [list(r) for r in IntMatrix.identity(4).entries]
    rows[1][3] = p
    return IntMatrix(rows)


GAMMA0_13_LEVEL2_MODULI = (
    (2, 2, 2, 2),
    (6, 2, 6, 2),
    (2, 2, 2, 2),
    (6, 2, 6, 2),
)

UPSILON0_13_LEVEL2_MODULI = (
    (2, 4, 2, 2),
    (12, 2, 6, 2),
    (2, 2, 2, 4),
    (6, 2, 12, 2),
)


def gamma0_13_level2_pattern() -> CongruencePattern:
    """Level-2 congruence pattern in the (1,3)-polarized symplectic group."""
    return CongruencePattern(4, GAMMA0_13_LEVEL2_MODULI, form_1p(3))


def upsilon0_13_level2_pattern() -> CongruencePattern:
    """The sub-pattern cut out by the sharpened 4- and 12-divisibilities."""
    return CongruencePattern(4, UPSILON0_13_LEVEL2_MODULI, form_1p(3))


def thm34_boundaries() -> list[BoundarySpec]:
    """Boundary representatives used in the level-(1,3) computation: two
    coordinate lines and the two standard isotropic coordinate planes."""
    return [
        BoundarySpec("line", [[1, 0, 0, 0]]),
        BoundarySpec("line", [[0, 1, 0, 0]]),
        BoundarySpec("plane", [[1, 0, 0, 0], [0, 1, 0, 0]]),
        BoundarySpec("plane", [[0, 0, 1, 0], [0, 0, 0, 1]]),
    ]


def klein_class(g: IntMatrix) -> tuple[int, int]:
    """Class of a level-2 pattern member in the order-4 quotient.

    phi(g) = ((g - I)_{12} / 2 mod 2, (g - I)_{34} / 2 mod 2); multiplicative
    on level-2 members because products of even entries vanish mod 4.
    """
    diff = (g - IntMatrix.identity(g.dim)).entries
    return ((diff[0][1] // 2) % 2, (diff[2][3] // 2) % 2)


def pattern_transvections(
    pat: CongruencePattern, c_max: int = 48
) -> list[IntMatrix]:
    """Deterministic basket of transvections scaled minimally into the pattern.

    Scans primitive directions with entries in {-1, 0, 1} and picks the
    least positive coefficient that satisfies the pattern.
    """
    found: list[IntMatrix] = []
    seen: set = set()
    dim = pat.dim
    ident = IntMatrix.identity(dim)
    vectors = []
    for mask in range(1, 2**dim):
        v = [(mask >> i) & 1 for i in range(dim)]
        vectors.append(v)
        for flip in range(dim):
            if v[flip]:
                w = list(v)
                w[flip] = -1
                vectors.append(w)
    for v in vectors:
        for c in range(1, c_max + 1):
            t = transvection(v, c, pat.form)
            if pattern_member(t, pat):
                if t.entries not in seen and t.entries != ident.entries:
                    seen.add(t.entries)
                    found.append(t)
                break
    return found


def gamma0_13_level2_generators() -> list[IntMatrix]:
    """Generator preset for the level-2 pattern group.

    Block embeddings of level-2 SL(2) elements in both slots, the boundary
    center generators, and pattern-scaled transvections covering all four
    classes of the order-4 quotient.
    """
    pat = gamma0_13_level2_pattern()
    form = pat.form
    gens: list[IntMatrix] = []
    sl2_t = IntMatrix([[1, 2], [0, 1]])
    sl2_l = IntMatrix([[1, 0], [2, 1]])
    sl2_l6 = IntMatrix([[1, 0], [6, 1]])
    minus = IntMatrix([[-1, 0], [0, -1]])
    gens.append(embed_sl2(sl2_t, 1, form))
    gens.append(embed_sl2(sl2_l, 1, form))
    gens.append(embed_sl2(minus, 1, form))
    gens.append(embed_sl2(sl2_t, 2, form))
    gens.append(embed_sl2(sl2_l6, 2, form))
    gens.append(embed_sl2(minus, 2, form))
    for b in thm34_boundaries():
        gens.extend(boundary_center_generators(b, pat).elements)
    gens.extend(pattern_transvections(pat))
    out: list[IntMatrix] = []
    seen: set = set()
    for g in gens:
        if g.entries not in seen:
            seen.add(g.entries)
            out.append(g)
    for g in out:
        assert pattern_member(g, pat)
    return out


def klein_witnesses() -> tuple[IntMatrix, IntMatrix]:
    """Pattern members hitting the classes (1,0) and (0,1) of the quotient,
    found by the bounded transvection search."""
    pat = gamma0_13_level2_pattern()
    w10 = w01 = None
    for t in pattern_transvections(pat):
        cls = klein_class(t)
        if cls == (1, 0) and w10 is None:
            w10 = t
        if cls == (0, 1) and w01 is None:
            w01 = t
    if w10 is None or w01 is None:
        raise AssertionError("transvection search failed to reach both classes")
    return w10, w01
