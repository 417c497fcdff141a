"""Congruence-pattern subgroups of Sp(4) and their standard unipotent generators.

The groups handled here are cut out of an integral symplectic group
Sp(L, Z) = {g : g^T L g = L} by entrywise divisibility constraints on g - I.
A pattern with every modulus equal to l is the principal congruence subgroup
of level l; the two level-(1,3) patterns used in the degree-2 examples carry
mixed moduli (2s, 4s, 6s and 12s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .matrices import (
    IntMatrix,
    MatrixError,
    PolarizedForm,
    sp_check,
)


class EmbeddingError(MatrixError):
    """SL(2) block embedding would produce non-integer entries."""


class NoFiniteScaling(Exception):
    """No positive multiple of a unipotent direction lands in the pattern."""


class UnsupportedBoundary(Exception):
    """No integral symplectic change of basis to standard position was found."""


@dataclass(frozen=True)
class CongruencePattern:
    """Subgroup {g in Sp(L, Z) : m_ij divides (g - I)_ij}.

    A modulus of 0 or 1 at (i, j) means no constraint there.
    """

    dim: int
    moduli: tuple[tuple[int, ...], ...]
    form: PolarizedForm

    def __init__(self, dim: int, moduli: Sequence[Sequence[int]], form: PolarizedForm):
        rows = tuple(tuple(int(x) for x in row) for row in moduli)
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise MatrixError("moduli matrix must be dim x dim")
        if any(x < 0 for row in rows for x in row):
            raise MatrixError("moduli must be nonnegative")
        if form.dim != dim:
            raise MatrixError("pattern dim and form dim disagree")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "moduli", rows)
        object.__setattr__(self, "form", form)

    @classmethod
    def principal(cls, level: int, form: PolarizedForm) -> "CongruencePattern":
        n = form.dim
        return cls(n, [[level] * n for _ in range(n)], form)

    @classmethod
    def trivial(cls, form: PolarizedForm) -> "CongruencePattern":
        return cls.principal(1, form)

    def divisibility_ok(self, g: IntMatrix) -> bool:
        ident = IntMatrix.identity(self.dim)
        diff = (g - ident).entries
        for i in range(self.dim):
            for j in range(self.dim):
                m = self.moduli[i][j]
                if m >= 2 and diff[i][j] % m != 0:
                    return False
        return True

    def finite_moduli(self) -> list[int]:
        return [m for row in self.moduli for m in row if m >= 2]


def pattern_member(g: IntMatrix, pat: CongruencePattern) -> bool:
    """Symplectic for the pattern's form, and all divisibility constraints hold."""
    if g.dim != pat.dim:
        raise MatrixError(f"matrix dim {g.dim} != pattern dim {pat.dim}")
    return sp_check(g, pat.form) and pat.divisibility_ok(g)


@dataclass(frozen=True)
class GeneratorSet:
    """Labelled list of integer matrices, all symplectic for the given form."""

    label: str
    elements: tuple[IntMatrix, ...]
    form: PolarizedForm

    def __init__(self, label: str, elements: Sequence[IntMatrix], form: PolarizedForm):
        elems = tuple(elements)
        for g in elems:
            if not sp_check(g, form):
                raise MatrixError(f"generator in {label!r} is not symplectic")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "form", form)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class BoundarySpec:
    """A rational boundary component: an isotropic line or plane, by basis."""

    kind: str  # "line" | "plane"
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, kind: str, basis: Sequence[Sequence[int]]):
        if kind not in ("line", "plane"):
            raise MatrixError(f"unknown boundary kind {kind!r}")
        vecs = tuple(tuple(int(x) for x in v) for v in basis)
        want = 1 if kind == "line" else 2
        if len(vecs) != want:
            raise MatrixError(f"{kind} boundary needs {want} basis vector(s)")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "basis", vecs)

    def validate(self, form: PolarizedForm) -> None:
        for v in self.basis:
            if len(v) != form.dim:
                raise MatrixError("basis vector length != form dim")
            if all(x == 0 for x in v):
                raise MatrixError("zero vector in boundary basis")
            if math.gcd(*v) != 1:
                raise MatrixError(f"basis vector {v} is not primitive")
        for v in self.basis:
            for w in self.basis:
                if form.pair(v, w) != 0:
                    raise MatrixError("boundary basis is not isotropic for the form")
        if self.kind == "plane":
            a, b = self.basis
            # independence of two integer vectors: some 2x2 minor nonzero
            if all(
                a[i] * b[j] - a[j] * b[i] == 0
                for i in range(len(a))
                for j in range(i + 1, len(a))
            ):
                raise MatrixError("plane basis vectors are dependent")


def embed_sl2(m: IntMatrix, slot: int, form: PolarizedForm) -> IntMatrix:
    """Block embedding of SL(2, Z) into Sp(4) acting on one coordinate pair.

    Slot 1 acts on coordinates (1, 3), slot 2 on (2, 4).  The b entry is
    scaled by the slot's polarization weight and the c entry divided by it,
    so the image respects the polarized lattice; a fractional c is an error.
    """
    if form.dim != 4:
        raise MatrixError("embed_sl2 is defined for genus-2 forms")
    if m.nrows != 2 or m.ncols != 2:
        raise MatrixError("embed_sl2 takes a 2x2 matrix")
    a, b = m.entries[0]
    c, d = m.entries[1]
    if a * d - b * c != 1:
        raise MatrixError("embed_sl2 needs determinant 1")
    if slot not in (1, 2):
        raise MatrixError("slot must be 1 or 2")
    e = form.e_diag[slot - 1]
    if c % e != 0:
        raise EmbeddingError(f"c entry {c} is not divisible by the slot weight {e}")
    i, j = (0, 2) if slot == 1 else (1, 3)
    rows = [list(row) for row in IntMatrix.identity(4).entries]
    rows[i][i] = a
    rows[i][j] = e * b
    rows[j][i] = c // e
    rows[j][j] = d
    g = IntMatrix(rows)
    if not sp_check(g, form):
        raise AssertionError("embedded block failed the symplectic check")
    return g


def transvection(v: Sequence[int], c: int, form: PolarizedForm) -> IntMatrix:
    """Symplectic transvection x -> x + c <v, x> v, as the matrix I + c v (v^T L)."""
    v = [int(x) for x in v]
    if len(v) != form.dim:
        raise MatrixError("vector length != form dim")
    if all(x == 0 for x in v):
        raise MatrixError("transvection direction must be nonzero")
    lam = form.gram().entries
    n = form.dim
    row_cov = [sum(v[k] * lam[k][j] for k in range(n)) for j in range(n)]
    rows = [
        [(1 if i == j else 0) + c * v[i] * row_cov[j] for j in range(n)] for i in range(n)
    ]
    return IntMatrix(rows)


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def _plane_block_directions(form: PolarizedForm) -> list[IntMatrix]:
    """Basis of the abelian unipotent block {[[I, B], [0, I]] : E B symmetric}.

    For the standard plane spanned by e_1, e_2 the condition on
    B = [[x, beta], [gamma, y]] is e_1 beta = e_2 gamma; the minimal mixed
    direction is beta = e_2/gcd, gamma = e_1/gcd.
    """
    e1, e2 = form.e_diag
    g = math.gcd(e1, e2)
    dirs = []
    for bmat in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, e2 // g], [e1 // g, 0]]):
        rows = [list(r) for r in IntMatrix.identity(4).entries]
        for bi in range(2):
            for bj in range(2):
                rows[bi][2 + bj] = bmat[bi][bj]
        dirs.append(IntMatrix(rows) - IntMatrix.identity(4))
    return dirs


def _scale_into_pattern(direction: IntMatrix, pat: CongruencePattern, c_max: int) -> IntMatrix:
    """Least positive multiple k such that I + k * direction satisfies the pattern."""
    ident = IntMatrix.identity(pat.dim)
    for k in range(1, c_max + 1):
        cand = ident + direction.scale(k)
        if pattern_member(cand, pat):
            return cand
    raise NoFiniteScaling(
        f"no multiple up to {c_max} of the unipotent direction lies in the pattern"
    )


def _standard_plane_transforms(form: PolarizedForm) -> list[IntMatrix]:
    """Small catalog of integral symplectic maps; used to move a plane to <e1, e2>."""
    ident = IntMatrix.identity(4)
    flip = IntMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    cands = [ident, flip]
    # a few short transvection words widen the net for oblique planes
    basics = []
    for v in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]):
        for c in (1, -1):
            basics.append(transvection(v, c, form))
    for b in basics:
        cands.append(b)
        cands.append(b @ flip)
    return cands


def _lattice_span_equal(vs: Sequence[Sequence[int]], ws: Sequence[Sequence[int]]) -> bool:
    """Do two integer vector lists span the same rational subspace?"""
    from .matrices import smith_normal_form

    def rank(rows):
        nz = [r for r in rows if any(r)]
        if not nz:
            return 0
        return len(smith_normal_form(IntMatrix(nz)).divisors)

    return rank(list(vs)) == rank(list(ws)) == rank(list(vs) + list(ws))


def boundary_center_generators(
    b: BoundarySpec, pat: CongruencePattern, c_max: int = 144
) -> GeneratorSet:
    """Generators of U(F) cap Gamma for a boundary component F.

    For an isotropic line the center of the unipotent radical is the
    one-parameter transvection group along the line; for the standard
    isotropic plane it is the full abelian block {[[I, B], [0, I]]}.
    Every returned element is re-verified: unipotent, symplectic,
    a pattern member, and commuting with the others.
    """
    form = pat.form
    b.validate(form)
    if b.kind == "line":
        v = _primitive(b.basis[0])
        direction = transvection(v, 1, form) - IntMatrix.identity(4)
        gens = [_scale_into_pattern(direction, pat, c_max)]
        label = f"line {v}"
    else:
        target = [list(v) for v in b.basis]
        chosen = None
        for s in _standard_plane_transforms(form):
            image = [
                [sum(s.entries[i][k] * e[k] for k in range(4)) for i in range(4)]
                for e in ([1, 0, 0, 0], [0, 1, 0, 0])
            ]
            if _lattice_span_equal(image, target):
                chosen = s
                break
        if chosen is None:
            raise UnsupportedBoundary(
                f"no integral symplectic transform to the plane {b.basis} was found"
            )
        s_inv = _symplectic_inverse(chosen, form)
        gens = []
        for d in _plane_block_directions(form):
            conj_dir = chosen @ d @ s_inv
            gens.append(_scale_into_pattern(conj_dir, pat, c_max))
        label = f"plane {b.basis}"

    from .matrices import is_unipotent

    for g in gens:
        assert is_unipotent(g), "boundary generator is not unipotent"
        assert pattern_member(g, pat), "boundary generator left the pattern"
    for g in gens:
        for h in gens:
            assert (g @ h).entries == (h @ g).entries, "boundary generators must commute"
    return GeneratorSet(label, gens, form)


def _symplectic_inverse(g: IntMatrix, form: PolarizedForm) -> IntMatrix:
    from .matrices import sp_inverse

    return sp_inverse(g, form)


def sp_group_order(genus: int, n: int) -> int:
    """|Sp(2 genus, Z/n)| by CRT over prime powers.

    For a prime q the order is q^(g^2) * prod_{i=1..g} (q^(2i) - 1); each
    extra power of the prime multiplies by q^(g (2g + 1)), the dimension of
    the symplectic Lie algebra.
    """
    if genus < 1 or n < 2:
        raise ValueError("need genus >= 1 and modulus >= 2")
    total = 1
    for q, k in _factor(n).items():
        base = q ** (genus * genus)
        for i in range(1, genus + 1):
            base *= q ** (2 * i) - 1
        total *= base * q ** ((k - 1) * genus * (2 * genus + 1))
    return total


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def elementary_symplectic_generators(form: PolarizedForm, c: int = 1) -> list[IntMatrix]:
    """The eight root-direction unipotents I + c X of Sp(4) for this form.

    Upper and lower symmetric blocks contribute three directions each; the
    GL part contributes the two off-diagonal nilpotents.  Over a prime field
    these generate the full symplectic group.
    """
    if form.dim != 4:
        raise MatrixError("elementary generators implemented for genus 2")
    e1, e2 = form.e_diag
    g = math.gcd(e1, e2)
    ident = IntMatrix.identity(4)
    dirs: list[IntMatrix] = []
    dirs.extend(_plane_block_directions(form))  # upper block
    for bmat in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, e2 // g], [e1 // g, 0]]):
        rows = [[0] * 4 for _ in range(4)]
        for bi in range(2):
            for bj in range(2):
                rows[2 + bi][bj] = bmat[bi][bj]
        dirs.append(IntMatrix(rows))  # lower block, E C = C^T E likewise
    # GL-part nilpotents: A = I + t E_12 on the (1,2) block forces
    # -t e1/e2 at (4,3) on the inverse-transpose block; the minimal
    # integral parameter is t = e2/g, and symmetrically for E_21.
    rows = [[0] * 4 for _ in range(4)]
    rows[0][1] = e2 // g
    rows[3][2] = -(e1 // g)
    dirs.append(IntMatrix(rows))
    rows = [[0] * 4 for _ in range(4)]
    rows[1][0] = e1 // g
    rows[2][3] = -(e2 // g)
    dirs.append(IntMatrix(rows))
    gens = [ident + d.scale(c) for d in dirs]
    for m in gens:
        if not sp_check(m, form):
            raise AssertionError("elementary generator failed the symplectic check")
    return gens
