"""Exact-arithmetic layer: worked examples plus randomized algebraic properties."""

import random

import pytest

from piquot.matrices import (
    CapExceeded,
    IntMatrix,
    MatrixError,
    ModMatrix,
    NotSymplectic,
    PolarizedForm,
    element_order,
    is_unipotent,
    reduce_mod,
    smith_normal_form,
    sp_check,
    sp_inverse,
)


def unit(dim, i, j, val=1):
    rows = [[0] * dim for _ in range(dim)]
    rows[i - 1][j - 1] = val
    return IntMatrix(rows)


def m0_prime(p):
    # I plus p in row 2, column 4
    return IntMatrix.identity(4) + unit(4, 2, 4, p)


def gram_oracle(g, form):
    # independent hand evaluation of g^T L g, entry by entry
    lam = form.gram().entries
    n = form.dim
    ent = g.entries
    out = [
        [
            sum(ent[k][i] * lam[k][l] * ent[l][j] for k in range(n) for l in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return out


class TestSpCheck:
    def test_identity_any_form(self):
        for es in ([1, 1], [1, 3], [1, 5], [2, 6]):
            form = PolarizedForm(es)
            assert sp_check(IntMatrix.identity(form.dim), form)

    def test_m0_prime_is_symplectic_for_1_5(self):
        form = PolarizedForm([1, 5])
        g = m0_prime(5)
        assert sp_check(g, form)
        assert gram_oracle(g, form) == list(map(list, form.gram().entries))

    def test_unit_12_fails_for_1_3(self):
        form = PolarizedForm([1, 3])
        g = IntMatrix.identity(4) + unit(4, 1, 2)
        assert gram_oracle(g, form) != list(map(list, form.gram().entries))
        assert not sp_check(g, form)

    def test_dimension_mismatch(self):
        with pytest.raises(MatrixError):
            sp_check(IntMatrix.identity(2), PolarizedForm([1, 3]))

    def test_mod_matrix_variant(self):
        form = PolarizedForm([1, 5])
        g = reduce_mod(m0_prime(5), 7)
        assert sp_check(g, form)
        assert not sp_check(reduce_mod(IntMatrix.identity(4) + unit(4, 1, 2), 7), form)


class TestSpInverse:
    def test_identity(self):
        form = PolarizedForm([1, 3])
        assert sp_inverse(IntMatrix.identity(4), form).entries == IntMatrix.identity(4).entries

    def test_m0_prime_inverse(self):
        form = PolarizedForm([1, 5])
        inv = sp_inverse(m0_prime(5), form)
        assert inv.entries == (IntMatrix.identity(4) + unit(4, 2, 4, -5)).entries
        assert (m0_prime(5) @ inv).entries == IntMatrix.identity(4).entries

    def test_j2_block_inverse(self):
        # slot-2 image of [[1,1],[0,1]] inverts to the image of [[1,-1],[0,1]]
        from piquot.groups import embed_sl2

        form = PolarizedForm([1, 5])
        g = embed_sl2(IntMatrix([[1, 1], [0, 1]]), 2, form)
        ginv = sp_inverse(g, form)
        assert ginv.entries == embed_sl2(IntMatrix([[1, -1], [0, 1]]), 2, form).entries

    def test_rejects_non_symplectic(self):
        form = PolarizedForm([1, 3])
        with pytest.raises(NotSymplectic):
            sp_inverse(IntMatrix.identity(4) + unit(4, 1, 2), form)

    def test_group_closure_property(self):
        # products of transvections stay symplectic, and so do their inverses
        from piquot.groups import transvection

        rng = random.Random(7)
        form = PolarizedForm([1, 3])
        for _ in range(50):
            g = IntMatrix.identity(4)
            for _ in range(4):
                v = [rng.randint(-2, 2) for _ in range(4)]
                if all(x == 0 for x in v):
                    v[0] = 1
                g = g @ transvection(v, rng.randint(-2, 2), form)
            h = transvection([1, 0, 1, 0], 2, form)
            assert sp_check(g, form)
            assert sp_check(g @ h, form)
            gi = sp_inverse(g, form)
            assert sp_check(gi, form)
            assert (g @ gi).entries == IntMatrix.identity(4).entries


class TestUnipotent:
    def test_identity(self):
        assert is_unipotent(IntMatrix.identity(4))

    def test_m0_prime(self):
        assert is_unipotent(m0_prime(5))
        assert is_unipotent(m0_prime(3))

    def test_torsion_diagonal_is_not(self):
        g = IntMatrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
        assert not is_unipotent(g)

    def test_composite_modulus_rejected(self):
        g = ModMatrix.identity(4, 6)
        with pytest.raises(MatrixError):
            is_unipotent(g)

    def test_integral_unipotent_reduces_unipotent(self):
        from piquot.groups import transvection

        rng = random.Random(3)
        form = PolarizedForm([1, 3])
        for _ in range(30):
            v = [rng.randint(-2, 2) for _ in range(4)]
            if all(x == 0 for x in v):
                v[2] = 1
            g = transvection(v, rng.randint(-3, 3), form)
            assert is_unipotent(g)
            for p in (2, 3, 5, 7):
                assert is_unipotent(reduce_mod(g, p))


class TestElementOrder:
    def test_identity_mod_7(self):
        assert element_order(ModMatrix.identity(4, 7)) == 1

    def test_translation_block_order_p(self):
        # [[I, red_p(l) I], [0, I]] for l = 4, p = 3 has order 3
        l_mod = 4 % 3
        g = ModMatrix(
            3,
            [
                [1, 0, l_mod, 0],
                [0, 1, 0, l_mod],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ],
        )
        assert element_order(g) == 3

    def test_minus_identity_mod_5(self):
        g = ModMatrix(5, IntMatrix.identity(4).scale(-1).entries)
        assert element_order(g) == 2

    def test_cap_exceeded(self):
        g = ModMatrix(97, [[3]])
        with pytest.raises(CapExceeded):
            element_order(g, cap=2)

    def test_power_order_divides(self):
        rng = random.Random(11)
        for _ in range(40):
            a, b = rng.randint(0, 6), rng.randint(0, 6)
            g = ModMatrix(7, [[1, a], [b, 1]])
            try:
                g.inverse()
            except Exception:
                continue
            o = element_order(g, cap=10_000)
            for k in (2, 3, 5):
                ok = element_order(g.pow(k), cap=10_000)
                assert o % ok == 0


class TestReduceMod:
    def test_identity(self):
        assert reduce_mod(IntMatrix.identity(4), 3).is_identity()

    def test_m0_prime_dies_at_its_own_level(self):
        assert reduce_mod(m0_prime(3), 3).is_identity()

    def test_small_example(self):
        assert reduce_mod(IntMatrix([[1, 4], [0, 1]]), 2).is_identity()

    def test_homomorphism_on_random_products(self):
        rng = random.Random(5)
        for _ in range(1000):
            n = rng.choice([2, 3, 5, 12])
            a = IntMatrix([[rng.randint(-50, 50) for _ in range(3)] for _ in range(3)])
            b = IntMatrix([[rng.randint(-50, 50) for _ in range(3)] for _ in range(3)])
            lhs = reduce_mod(a @ b, n)
            rhs = reduce_mod(a, n) @ reduce_mod(b, n)
            assert lhs.entries == rhs.entries


class TestSNF:
    def test_identity(self):
        res = smith_normal_form(IntMatrix.identity(2))
        assert res.divisors == (1, 1)

    def test_diag_2_3(self):
        res = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
        assert res.divisors == (1, 6)

    def test_single_column(self):
        res = smith_normal_form(IntMatrix([[1], [1]]))
        assert res.divisors == (1,)
        assert res.D.nrows == 2 and res.D.ncols == 1

    def test_zero_matrix(self):
        res = smith_normal_form(IntMatrix.zero(3, 2))
        assert res.divisors == ()

    def test_random_reconstruction(self):
        rng = random.Random(2024)
        for _ in range(1000):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            a = IntMatrix([[rng.randint(-100, 100) for _ in range(n)] for _ in range(m)])
            res = smith_normal_form(a)  # UAV = D re-verified internally
            divs = res.divisors
            for x, y in zip(divs, divs[1:]):
                assert y % x == 0

    def test_divisors_invariant_under_transpose(self):
        rng = random.Random(1)
        for _ in range(100):
            a = IntMatrix([[rng.randint(-9, 9) for _ in range(3)] for _ in range(4)])
            assert smith_normal_form(a).divisors == smith_normal_form(a.transpose()).divisors


class TestEncoding:
    def test_round_trip(self):
        g = ModMatrix(12, [[1, 5, 0, 11], [3, 1, 7, 2], [0, 0, 1, 0], [6, 6, 6, 1]])
        assert ModMatrix.decode(g.encode()).entries == g.entries

    def test_injective_on_samples(self):
        rng = random.Random(9)
        seen = {}
        for _ in range(500):
            n = rng.choice([2, 3, 5, 257, 70000])
            g = ModMatrix(n, [[rng.randint(0, n - 1) for _ in range(2)] for _ in range(2)])
            blob = g.encode()
            if blob in seen:
                assert seen[blob] == (g.modulus, g.entries)
            seen[blob] = (g.modulus, g.entries)

    def test_dim_and_modulus_prefixed(self):
        a = ModMatrix(3, [[1]])
        b = ModMatrix(5, [[1]])
        assert a.encode() != b.encode()
