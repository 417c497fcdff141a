"""Fundamental group of a toric variety as a lattice quotient.

pi_1 of the torus is the cocharacter lattice N = Z^r; partially
compactifying along a fan kills the classes of lattice points inside the
cones, so pi_1 = N / <N cap sigma for all cones sigma>.  The subgroup
generated by the lattice points of a cone equals the subgroup generated by
the primitive ray generators together with the lattice points of the
half-open fundamental parallelepiped (any lattice point of the cone splits
into a parallelepiped point plus a nonnegative integer ray combination);
dependent generator lists reduce to their maximal independent subsets by
conic Caratheodory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .matrices import CapExceeded, IntMatrix, MatrixError, smith_normal_form

PARALLELEPIPED_CAP = 10**6


@dataclass(frozen=True)
class Fan:
    """Lattice rank plus cones given by integer ray generators.

    The zero cone is an empty generator list.  Cones are not checked for
    fan compatibility: the quotient only depends on the union of cones.
    """

    rank: int
    cones: tuple[tuple[tuple[int, ...], ...], ...]

    def __init__(self, rank: int, cones: Sequence[Sequence[Sequence[int]]]):
        if rank < 1:
            raise MatrixError("fan rank must be positive")
        frozen = []
        for cone in cones:
            vecs = tuple(tuple(int(x) for x in v) for v in cone)
            for v in vecs:
                if len(v) != rank:
                    raise MatrixError(f"generator {v} does not have rank {rank}")
                if all(x == 0 for x in v):
                    raise MatrixError("zero vector is not a valid ray generator")
            frozen.append(vecs)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "cones", tuple(frozen))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def _rank_of(vectors: list[tuple[int, ...]]) -> int:
    nz = [v for v in vectors if any(v)]
    if not nz:
        return 0
    return len(smith_normal_form(IntMatrix(nz)).divisors)


def _parallelepiped_points(vectors: list[tuple[int, ...]], rank: int) -> list[tuple[int, ...]]:
    """Lattice points of {sum t_i v_i : 0 <= t_i < 1} for independent vectors.

    Reduces to a full-dimensional problem: a basis B of the saturation of
    span(V) expresses V = B M with M square; parallelepiped points of M in
    Z^m map back through B.
    """
    m = len(vectors)
    cols = IntMatrix([[vectors[j][i] for j in range(m)] for i in range(rank)])
    snf = smith_normal_form(cols)
    divisors = snf.divisors
    if len(divisors) != m:
        raise MatrixError("parallelepiped needs independent vectors")
    # B = U^-1[:, :m]; M = diag(d) W^-1 where W^-1 = V-inverse of the SNF
    u_inv = _unimodular_inverse(snf.U)
    b_cols = [[u_inv.entries[i][j] for j in range(m)] for i in range(rank)]
    w_inv = _unimodular_inverse(snf.V)
    mm = [[divisors[i] * w_inv.entries[i][j] for j in range(m)] for i in range(m)]
    det = abs(IntMatrix(mm).det())
    if det > PARALLELEPIPED_CAP:
        raise CapExceeded(
            f"parallelepiped volume {det} exceeds cap", cap=PARALLELEPIPED_CAP, partial=det
        )
    pts_m = _unit_cell_points(mm)
    out = []
    for y in pts_m:
        x = tuple(
            sum(b_cols[i][k] * y[k] for k in range(m)) for i in range(rank)
        )
        out.append(x)
    return out


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    d = u.det()
    if abs(d) != 1:
        raise MatrixError("matrix is not unimodular")
    return u.adjugate().scale(d)


def _unit_cell_points(mm: list[list[int]]) -> list[tuple[int, ...]]:
    """Integer points y with M^-1 y in [0, 1)^m, by bounding-box scan."""
    m = len(mm)
    adj = IntMatrix(mm).adjugate()
    det = IntMatrix(mm).det()
    lo = [sum(min(0, mm[i][j]) for j in range(m)) for i in range(m)]
    hi = [sum(max(0, mm[i][j]) for j in range(m)) for i in range(m)]
    span = 1
    for a, b in zip(lo, hi):
        span *= b - a + 1
    if span > 64 * PARALLELEPIPED_CAP:
        raise CapExceeded("parallelepiped bounding box too large", cap=PARALLELEPIPED_CAP)
    out = []

    def scan(prefix):
        i = len(prefix)
        if i == m:
            y = list(prefix)
            # t = M^-1 y = adj y / det must satisfy 0 <= t_i < 1
            for k in range(m):
                num = sum(adj.entries[k][j] * y[j] for j in range(m))
                if det > 0:
                    if not (0 <= num < det):
                        return
                else:
                    if not (det < num <= 0):
                        return
            out.append(tuple(y))
            return
        for val in range(lo[i], hi[i] + 1):
            scan(prefix + [val])

    scan([])
    return out


def cone_lattice_generators(
    cone: Sequence[Sequence[int]], rank: int
) -> list[tuple[int, ...]]:
    """Finite generating set for the subgroup of Z^rank generated by all
    lattice points of the real cone: primitive ray generators plus the
    parallelepiped points of every maximal independent generator subset."""
    vecs = []
    for v in cone:
        v = tuple(int(x) for x in v)
        if len(v) != rank:
            raise MatrixError(f"generator {v} does not have rank {rank}")
        if all(x == 0 for x in v):
            raise MatrixError("zero vector in cone")
        vecs.append(_primitive(v))
    vecs = list(dict.fromkeys(vecs))
    if not vecs:
        return []
    gens: dict[tuple[int, ...], None] = dict.fromkeys(vecs)
    # all maximal independent subsets share the same size (matroid bases),
    # and smaller independent subsets span sub-cones of some maximal one
    full_rank = _rank_of(vecs)
    for subset in combinations(vecs, full_rank):
        if _rank_of(list(subset)) != full_rank:
            continue
        for pt in _parallelepiped_points(list(subset), rank):
            if any(pt):
                gens.setdefault(tuple(pt))
    return list(gens.keys())


def toric_pi1(fan: Fan) -> dict:
    """Invariants {free_rank, torsion} of Z^rank modulo all cone subgroups."""
    all_gens: list[tuple[int, ...]] = []
    for cone in fan.cones:
        all_gens.extend(cone_lattice_generators(cone, fan.rank))
    if not all_gens:
        return {"free_rank": fan.rank, "torsion": []}
    mat = IntMatrix([list(g) for g in all_gens])
    divisors = smith_normal_form(mat).divisors
    free_rank = fan.rank - len(divisors)
    torsion = [d for d in divisors if d > 1]
    return {"free_rank": free_rank, "torsion": torsion}


def lattice_contains(generators: list[tuple[int, ...]], vector: tuple[int, ...]) -> bool:
    """Is the vector in the subgroup of Z^r generated by the given vectors?"""
    if not generators:
        return all(x == 0 for x in vector)
    mat = IntMatrix([list(g) for g in generators])  # rows generate
    snf = smith_normal_form(mat.transpose())  # columns generate: U A V = D
    y = [
        sum(snf.U.entries[i][j] * vector[j] for j in range(len(vector)))
        for i in range(snf.U.nrows)
    ]
    divisors = snf.divisors
    for i, val in enumerate(y):
        if i < len(divisors):
            if val % divisors[i] != 0:
                return False
        elif val != 0:
            return False
    return True
