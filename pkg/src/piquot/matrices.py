"""Exact matrix arithmetic over Z and Z/n: the ground layer everything else sits on.

All group elements in this package are either integer matrices (arbitrary
precision, no overflow) or matrices of canonical residues mod n.  Both kinds
are immutable; every operation returns a fresh value, so instances are safe
to share between threads.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class MatrixError(Exception):
    """Structural problem with a matrix argument (shape, modulus, ...)."""


class NotSymplectic(MatrixError):
    """Matrix fails the symplectic membership condition g^T L g = L."""


class NotInvertible(MatrixError):
    """Matrix has no inverse over the ambient ring."""


class CapExceeded(Exception):
    """An iteration or enumeration budget ran out before the answer."""

    def __init__(self, message: str, cap: int, partial: int | None = None):
        super().__init__(message)
        self.cap = cap
        self.partial = partial


def _freeze(entries: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    if not rows:
        raise MatrixError("empty matrix")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise MatrixError("ragged rows")
    return rows


@dataclass(frozen=True)
class IntMatrix:
    """Matrix with exact integer entries.  Square in all group contexts;
    rectangular instances only occur as Smith normal form inputs/outputs."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries: Iterable[Iterable[int]]):
        object.__setattr__(self, "entries", _freeze(entries))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def dim(self) -> int:
        if self.nrows != self.ncols:
            raise MatrixError("matrix is not square")
        return self.nrows

    @classmethod
    def identity(cls, dim: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, nrows: int, ncols: int | None = None) -> "IntMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise MatrixError("dimension mismatch in product")
        bt = list(zip(*other.entries))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise MatrixError("dimension mismatch in sum")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * x for x in row] for row in self.entries])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def pow(self, k: int) -> "IntMatrix":
        if k < 0:
            raise MatrixError("negative power of an integer matrix")
        result = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> int:
        return _det_int(self.entries)

    def adjugate(self) -> "IntMatrix":
        n = self.dim
        cof = [
            [(-1) ** (i + j) * _det_int(_minor(self.entries, i, j)) for j in range(n)]
            for i in range(n)
        ]
        return IntMatrix(cof).transpose()

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:>4d}" for x in row) for row in self.entries)


def _minor(rows, i, j):
    return [
        [x for cj, x in enumerate(r) if cj != j] for ci, r in enumerate(rows) if ci != i
    ]


def _det_int(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    # cofactor expansion along the first row; dims here stay tiny
    return sum(
        (-1) ** j * rows[0][j] * _det_int(_minor(rows, 0, j)) for j in range(n) if rows[0][j]
    )


@dataclass(frozen=True)
class ModMatrix:
    """Square matrix of canonical residues in [0, n)."""

    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, modulus: int, entries: Iterable[Iterable[int]]):
        n = int(modulus)
        if n < 2:
            raise MatrixError(f"modulus must be >= 2, got {n}")
        if n >= 2**31:
            raise MatrixError("modulus too large (must fit a machine word)")
        rows = tuple(tuple(int(x) % n for x in row) for row in _freeze(entries))
        if len(rows) != len(rows[0]):
            raise MatrixError("modular matrices must be square")
        object.__setattr__(self, "modulus", n)
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, dim: int, modulus: int) -> "ModMatrix":
        return cls(modulus, IntMatrix.identity(dim).entries)

    def lift(self) -> IntMatrix:
        return IntMatrix(self.entries)

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if self.modulus != other.modulus:
            raise MatrixError("modulus mismatch in product")
        return ModMatrix(self.modulus, (self.lift() @ other.lift()).entries)

    def pow(self, k: int) -> "ModMatrix":
        if k < 0:
            return self.inverse().pow(-k)
        result = ModMatrix.identity(self.dim, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "ModMatrix":
        n = self.modulus
        lifted = self.lift()
        d = lifted.det() % n
        try:
            dinv = pow(d, -1, n)
        except ValueError:
            raise NotInvertible(f"determinant {d} is not a unit mod {n}") from None
        adj = lifted.adjugate()
        return ModMatrix(n, adj.scale(dinv).entries)

    def is_identity(self) -> bool:
        return self.entries == ModMatrix.identity(self.dim, self.modulus).entries

    def encode(self) -> bytes:
        """Canonical byte encoding, injective on (dim, modulus, entries).

        Layout: dim and modulus as little-endian uint32, then row-major
        entries packed at the minimal byte width for the modulus.
        """
        width = ((self.modulus - 1).bit_length() + 7) // 8
        head = struct.pack("<II", self.dim, self.modulus)
        body = b"".join(
            x.to_bytes(width, "little") for row in self.entries for x in row
        )
        return head + body

    @classmethod
    def decode(cls, blob: bytes) -> "ModMatrix":
        dim, modulus = struct.unpack_from("<II", blob)
        width = ((modulus - 1).bit_length() + 7) // 8
        body = blob[8:]
        if len(body) != dim * dim * width:
            raise MatrixError("corrupt encoding")
        vals = [
            int.from_bytes(body[k * width : (k + 1) * width], "little")
            for k in range(dim * dim)
        ]
        return cls(modulus, [vals[i * dim : (i + 1) * dim] for i in range(dim)])

    def __str__(self) -> str:
        body = "\n".join(" ".join(f"{x:>3d}" for x in row) for row in self.entries)
        return f"{body}  (mod {self.modulus})"


@dataclass(frozen=True)
class PolarizedForm:
    """Alternating Gram matrix L = [[0, E], [-E, 0]] for E = diag(e_1, ..., e_g).

    E = identity gives the standard symplectic form.  Coordinates i and
    g + i are paired with weight e_i.
    """

    e_diag: tuple[int, ...]

    def __init__(self, e_diag: Sequence[int]):
        es = tuple(int(e) for e in e_diag)
        if not es or any(e == 0 for e in es):
            raise MatrixError("polarization diagonal must be nonzero")
        object.__setattr__(self, "e_diag", es)

    @property
    def genus(self) -> int:
        return len(self.e_diag)

    @property
    def dim(self) -> int:
        return 2 * len(self.e_diag)

    @classmethod
    def standard(cls, genus: int) -> "PolarizedForm":
        return cls([1] * genus)

    def gram(self) -> IntMatrix:
        g, n = self.genus, self.dim
        rows = [[0] * n for _ in range(n)]
        for i, e in enumerate(self.e_diag):
            rows[i][g + i] = e
            rows[g + i][i] = -e
        return IntMatrix(rows)

    def gram_mod(self, n: int) -> ModMatrix:
        return ModMatrix(n, self.gram().entries)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        """<v, w> = v^T L w."""
        lam = self.gram().entries
        return sum(v[i] * lam[i][j] * w[j] for i in range(self.dim) for j in range(self.dim))


def sp_check(g: IntMatrix | ModMatrix, form: PolarizedForm) -> bool:
    """True iff g^T L g = L exactly (resp. mod n for ModMatrix)."""
    lam = form.gram()
    if isinstance(g, ModMatrix):
        if g.dim != form.dim:
            raise MatrixError(f"matrix dim {g.dim} != form dim {form.dim}")
        lam_n = ModMatrix(g.modulus, lam.entries)
        gt = ModMatrix(g.modulus, g.lift().transpose().entries)
        return (gt @ lam_n @ g).entries == lam_n.entries
    if g.dim != form.dim:
        raise MatrixError(f"matrix dim {g.dim} != form dim {form.dim}")
    return (g.transpose() @ lam @ g).entries == lam.entries


def sp_inverse(g: IntMatrix | ModMatrix, form: PolarizedForm):
    """Inverse of a symplectic matrix.

    Over Z uses g^{-1} = L^{-1} g^T L; the entry rescalings e_j/e_i this
    produces are exact divisions for genuine symplectic matrices.  Over Z/n
    falls back to the adjugate inverse whenever L is not invertible mod n.
    """
    if not sp_check(g, form):
        raise NotSymplectic("sp_inverse requires a symplectic matrix")
    if isinstance(g, ModMatrix):
        return g.inverse()
    lam = form.gram()
    lam_inv_frac = _inverse_rational(lam)
    gt = g.transpose()
    prod = _matmul_frac(_matmul_frac(lam_inv_frac, gt.entries), lam.entries)
    out = []
    for row in prod:
        out_row = []
        for x in row:
            if x.denominator != 1:
                raise NotSymplectic("inverse is not integral; matrix not symplectic over Z")
            out_row.append(x.numerator)
        out.append(out_row)
    return IntMatrix(out)


def _inverse_rational(m: IntMatrix):
    d = m.det()
    if d == 0:
        raise NotInvertible("singular matrix")
    adj = m.adjugate()
    return [[Fraction(x, d) for x in row] for row in adj.entries]


def _matmul_frac(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def is_unipotent(g: IntMatrix | ModMatrix) -> bool:
    """True iff (g - I)^dim = 0 in the ambient ring.

    Over Z/n only prime n is accepted: over composite moduli the condition
    is not conjugation-invariant in any useful sense.
    """
    if isinstance(g, ModMatrix):
        if not _is_prime(g.modulus):
            raise MatrixError(
                f"is_unipotent needs a prime modulus, got {g.modulus}"
            )
        nil = g.lift() - IntMatrix.identity(g.dim)
        power = ModMatrix(g.modulus, nil.pow(g.dim).entries)
        return all(x == 0 for row in power.entries for x in row)
    nil = g - IntMatrix.identity(g.dim)
    return nil.pow(g.dim).is_zero()


def element_order(g: ModMatrix, cap: int = 10**6) -> int:
    """Least k >= 1 with g^k = I, by repeated multiplication; CapExceeded past cap."""
    ident = ModMatrix.identity(g.dim, g.modulus)
    acc = g
    for k in range(1, cap + 1):
        if acc.entries == ident.entries:
            return k
        acc = acc @ g
    raise CapExceeded(f"no order found within {cap} steps", cap=cap)


def reduce_mod(g: IntMatrix, n: int) -> ModMatrix:
    """Entrywise reduction to canonical residues; a ring homomorphism."""
    return ModMatrix(n, g.entries)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries of D, in divisibility order."""
        k = min(self.D.nrows, self.D.ncols)
        diag = [self.D.entries[i][i] for i in range(k)]
        return tuple(d for d in diag if d != 0)


def smith_normal_form(a: IntMatrix | Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form over Z, rectangular inputs allowed.

    Row operations are accumulated in U, column operations in V, so that
    U A V = D holds exactly; this identity is re-verified on every call
    (the matrices here are desk-sized, the check is cheap).
    """
    if not isinstance(a, IntMatrix):
        a = IntMatrix(a)
    m, n = a.nrows, a.ncols
    d = [list(row) for row in a.entries]
    u = [list(row) for row in IntMatrix.identity(m).entries]
    v = [list(row) for row in IntMatrix.identity(n).entries]

    def row_op(i, j, q):  # row i -= q * row j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(m):
            d[r][i] -= q * d[r][j]
        for r in range(n):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(m):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    rank = min(m, n)
    for t in range(rank):
        if all(d[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
        while True:
            # move the smallest nonzero entry of the trailing block to (t, t)
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (
                        best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])
                    ):
                        best = (i, j)
            if best != (t, t):
                swap_rows(t, best[0])
                swap_cols(t, best[1])
            # division steps shrink |pivot| until it divides its row and column
            reduced = True
            for i in range(t + 1, m):
                if d[i][t] % d[t][t] != 0:
                    row_op(i, t, d[i][t] // d[t][t])
                    reduced = False
                    break
            if not reduced:
                continue
            for j in range(t + 1, n):
                if d[t][j] % d[t][t] != 0:
                    col_op(j, t, d[t][j] // d[t][t])
                    reduced = False
                    break
            if not reduced:
                continue
            # pivot divides row/column: clear them outright
            for i in range(t + 1, m):
                if d[i][t]:
                    row_op(i, t, d[i][t] // d[t][t])
            for j in range(t + 1, n):
                if d[t][j]:
                    col_op(j, t, d[t][j] // d[t][t])
            # pivot must also divide the whole trailing block, else absorb
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % d[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into row t; next pass gcds it into the pivot
            row_op(t, offender, -1)
        if d[t][t] < 0:
            negate_row(t)

    result = SNFResult(U=IntMatrix(u), D=IntMatrix(d), V=IntMatrix(v))
    _verify_snf(a, result)
    return result


def _verify_snf(a: IntMatrix, res: SNFResult) -> None:
    prod = res.U @ a @ res.V
    if prod.entries != res.D.entries:
        raise AssertionError("SNF verification failed: U A V != D")
    if abs(res.U.det()) != 1 or abs(res.V.det()) != 1:
        raise AssertionError("SNF verification failed: transform not unimodular")
    divs = res.divisors
    for x, y in zip(divs, divs[1:]):
        if y % x != 0:
            raise AssertionError("SNF verification failed: divisor chain broken")
    k = min(res.D.nrows, res.D.ncols)
    for i in range(res.D.nrows):
        for j in range(res.D.ncols):
            if i != j and res.D.entries[i][j] != 0:
                raise AssertionError("SNF verification failed: D not diagonal")
            if i == j and i < k and res.D.entries[i][i] < 0:
                raise AssertionError("SNF verification failed: negative divisor")
