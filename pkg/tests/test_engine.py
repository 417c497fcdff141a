"""Finite matrix-group engine: closure, normal closure, center, Sylow, quotients."""

import numpy as np
import pytest

from piquot.matrices import CapExceeded, IntMatrix, ModMatrix, PolarizedForm, element_order, reduce_mod
from piquot.groups import elementary_symplectic_generators, sp_group_order, transvection
from piquot.engine import (
    BudgetExceeded,
    GroupContext,
    NotNormal,
    WitnessNotFound,
    center,
    closure,
    find_dihedral8,
    is_normal,
    normal_closure,
    quotient_structure,
    sylow_subgroup,
)


@pytest.fixture(scope="session")
def ctx3():
    return GroupContext(4, 3, PolarizedForm.standard(2))


@pytest.fixture(scope="session")
def gens3(ctx3):
    return [reduce_mod(g, 3) for g in elementary_symplectic_generators(PolarizedForm.standard(2))]


@pytest.fixture(scope="session")
def sp4f3(ctx3, gens3):
    return closure(ctx3, gens3)


class TestClosure:
    def test_identity_only(self, ctx3):
        t = closure(ctx3, [ModMatrix.identity(4, 3)])
        assert len(t) == 1 and t.complete

    def test_sp4_f3_full_order(self, sp4f3):
        assert len(sp4f3) == sp_group_order(2, 3) == 51840

    def test_level4_generators_mod3_fill_the_group(self, ctx3):
        form = PolarizedForm.standard(2)
        gens = [reduce_mod(g, 3) for g in elementary_symplectic_generators(form, c=4)]
        t = closure(ctx3, gens)
        assert len(t) == 51840

    def test_generator_order_independence(self, ctx3, gens3, sp4f3):
        t2 = closure(ctx3, list(reversed(gens3)))
        assert len(t2) == len(sp4f3)
        assert np.array_equal(t2.keys_sorted, sp4f3.keys_sorted)

    def test_lagrange(self, ctx3, sp4f3):
        sub = closure(ctx3, [reduce_mod(transvection([1, 0, 0, 0], 1, PolarizedForm.standard(2)), 3)])
        assert 51840 % len(sub) == 0
        assert len(sp4f3) % len(sub) == 0

    def test_cap_exceeded(self, ctx3, gens3):
        with pytest.raises(CapExceeded) as err:
            closure(ctx3, gens3, cap=1000)
        assert err.value.partial is not None and err.value.partial > 1000

    def test_sl2_f3(self):
        ctx = GroupContext(2, 3, PolarizedForm.standard(1))
        gens = [ModMatrix(3, [[1, 1], [0, 1]]), ModMatrix(3, [[1, 0], [1, 1]])]
        assert len(closure(ctx, gens)) == 24

    def test_sp4_z4_order(self):
        # prime-power lift: |Sp(4, Z/4)| = 720 * 2^10
        ctx = GroupContext(4, 4, PolarizedForm.standard(2))
        gens = [reduce_mod(g, 4) for g in elementary_symplectic_generators(PolarizedForm.standard(2))]
        assert len(closure(ctx, gens)) == sp_group_order(2, 4)

    def test_byte_key_path_matches_uint64_path(self):
        # modulus large enough to force the bytes fallback on a tiny group
        ctx = GroupContext(4, 65537, PolarizedForm.standard(2))
        assert not ctx.packs_uint64
        g = ModMatrix(65537, (IntMatrix.identity(4) + IntMatrix(
            [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, -1, 0]]
        ).scale(7)).entries)
        t = closure(ctx, [g])
        assert len(t) == 65537  # one-parameter unipotent group mod a prime


class TestNormalClosure:
    def test_identity(self, ctx3, gens3):
        t = normal_closure(ctx3, [ModMatrix.identity(4, 3)], gens3)
        assert len(t) == 1

    def test_minus_identity_is_central(self, ctx3, gens3):
        minus = ModMatrix(3, IntMatrix.identity(4).scale(-1).entries)
        t = normal_closure(ctx3, [minus], gens3)
        assert len(t) == 2

    def test_one_transvection_generates_everything(self, ctx3, gens3):
        tv = reduce_mod(transvection([1, 0, 0, 0], 1, PolarizedForm.standard(2)), 3)
        t = normal_closure(ctx3, [tv], gens3)
        assert len(t) == 51840

    def test_output_is_normal(self, ctx3, gens3):
        tv = reduce_mod(transvection([0, 1, 0, 0], 1, PolarizedForm.standard(2)), 3)
        t = normal_closure(ctx3, [tv], gens3)
        assert is_normal(t, gens3)


class TestIsNormal:
    def test_center_is_normal(self, ctx3, gens3, sp4f3):
        z = center(sp4f3)
        assert is_normal(z, gens3)

    def test_order_two_subgroup_not_normal(self, ctx3, gens3):
        i0 = ModMatrix(3, [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
        sub = closure(ctx3, [i0])
        assert len(sub) == 2
        assert not is_normal(sub, gens3)
        # explicit conjugation witness
        found = None
        for g in gens3:
            conj = g @ i0 @ g.inverse()
            if conj not in sub:
                found = (g, conj)
                break
        assert found is not None

    def test_group_in_itself(self, ctx3, gens3, sp4f3):
        assert is_normal(sp4f3, gens3)


class TestCenter:
    def test_sp4_f3_center_is_plus_minus_identity(self, sp4f3):
        z = center(sp4f3)
        assert len(z) == 2
        keys = {m.encode() for m in z.mod_matrices()}
        plus = ModMatrix.identity(4, 3)
        minus = ModMatrix(3, IntMatrix.identity(4).scale(-1).entries)
        assert keys == {plus.encode(), minus.encode()}

    def test_sp4_f2_center_trivial(self):
        ctx = GroupContext(4, 2, PolarizedForm.standard(2))
        gens = [reduce_mod(g, 2) for g in elementary_symplectic_generators(PolarizedForm.standard(2))]
        t = closure(ctx, gens)
        assert len(t) == 720
        assert len(center(t)) == 1

    def test_abelian_table_is_its_own_center(self, ctx3):
        rot = ModMatrix(3, [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        t = closure(ctx3, [rot])
        assert len(center(t)) == len(t)


class TestSylow:
    def test_sylow2_of_sp4_f3(self, sp4f3):
        p = sylow_subgroup(sp4f3, 2, seed=7)
        assert len(p) == 128
        # every element has 2-power order
        for m in p.mod_matrices():
            o = element_order(m, cap=1000)
            assert o & (o - 1) == 0

    def test_sylow3_of_sl2_f3(self):
        ctx = GroupContext(2, 3, PolarizedForm.standard(1))
        t = closure(ctx, [ModMatrix(3, [[1, 1], [0, 1]]), ModMatrix(3, [[1, 0], [1, 1]])])
        p = sylow_subgroup(t, 3, seed=1)
        assert len(p) == 3

    def test_whole_cyclic_p_group(self):
        ctx = GroupContext(2, 5, PolarizedForm.standard(1))
        t = closure(ctx, [ModMatrix(5, [[1, 1], [0, 1]])])
        assert len(t) == 5
        p = sylow_subgroup(t, 5, seed=0)
        assert len(p) == 5

    def test_q_must_divide(self, sp4f3):
        with pytest.raises(ValueError):
            sylow_subgroup(sp4f3, 7, seed=0)

    def test_deterministic_given_seed(self, sp4f3):
        p1 = sylow_subgroup(sp4f3, 2, seed=42)
        p2 = sylow_subgroup(sp4f3, 2, seed=42)
        assert np.array_equal(p1.keys_sorted, p2.keys_sorted)


class TestDihedral8:
    def test_sp4_f7_witness(self):
        form = PolarizedForm.standard(2)
        ctx = GroupContext(4, 7, form)
        gens = [reduce_mod(g, 7) for g in elementary_symplectic_generators(form)]
        a, b = find_dihedral8(ctx, gens, seed=1)
        assert element_order(a, cap=10) == 4
        assert element_order(b, cap=10) == 2
        assert (b @ a @ b.inverse()).entries == a.inverse().entries
        assert b.entries not in {a.pow(k).entries for k in range(4)}

    def test_sp4_f3_witness_and_sylow_oracle(self, ctx3, gens3, sp4f3):
        a, b = find_dihedral8(ctx3, gens3, seed=3)
        assert element_order(a, cap=10) == 4 and element_order(b, cap=10) == 2
        # oracle: exhaustive search inside the 128-element Sylow-2 subgroup
        syl = sylow_subgroup(sp4f3, 2, seed=0)
        mats = syl.mod_matrices()
        orders = {m.encode(): element_order(m, cap=200) for m in mats}
        found = False
        for x in mats:
            if orders[x.encode()] != 4:
                continue
            for y in mats:
                if orders[y.encode()] != 2:
                    continue
                if (y @ x @ y.inverse()).entries == x.inverse().entries and y.entries not in {
                    x.pow(k).entries for k in range(4)
                }:
                    found = True
                    break
            if found:
                break
        assert found

    def test_cyclic_group_has_none(self):
        ctx = GroupContext(4, 3, PolarizedForm.standard(2))
        g = ModMatrix(3, [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        assert element_order(g, cap=20) == 8
        with pytest.raises(WitnessNotFound):
            find_dihedral8(ctx, [g], seed=0, budget=150)


class TestQuotientStructure:
    def test_trivial_quotient(self, sp4f3):
        rep = quotient_structure(sp4f3, sp4f3)
        assert rep.order == 1 and rep.abelian and rep.invariants == ()

    def test_sp4_f3_mod_center(self, sp4f3):
        z = center(sp4f3)
        rep = quotient_structure(sp4f3, z)
        assert rep.order == 25920
        assert not rep.abelian
        assert rep.invariants is None
        assert not rep.reps_computed  # index above the default cap

    def test_quotient_by_identity_reproduces_group(self, ctx3):
        rot = ModMatrix(3, [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        t = closure(ctx3, [rot])
        triv = closure(ctx3, [ModMatrix.identity(4, 3)])
        rep = quotient_structure(t, triv)
        assert rep.order == len(t) == 8
        assert rep.abelian
        assert rep.invariants == (8,)

    def test_klein_quotient_invariants(self):
        # (Z/4 x Z/4) / diagonal Z/4-ish: direct small abelian check mod 5
        ctx = GroupContext(2, 5, PolarizedForm.standard(1))
        a = ModMatrix(5, [[2, 0], [0, 3]])  # order 4
        b = ModMatrix(5, [[3, 0], [0, 2]])  # order 4
        g = closure(ctx, [a, b])
        n = closure(ctx, [a @ b])  # {I, -I}-like subgroup
        rep = quotient_structure(g, n)
        assert rep.order * len(n) == len(g)
        assert rep.abelian
        total = 1
        for f in rep.invariants:
            total *= f
        assert total == rep.order

    def test_not_normal_raises(self, ctx3, gens3, sp4f3):
        i0 = ModMatrix(3, [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
        sub = closure(ctx3, [i0])
        with pytest.raises(NotNormal):
            quotient_structure(sp4f3, sub)


class TestUnipotentOrderLaw:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_sampled_unipotents_have_p_power_order(self, p):
        form = PolarizedForm.standard(2)
        ctx = GroupContext(4, p, form)
        gens = [reduce_mod(g, p) for g in elementary_symplectic_generators(form)]
        mults = [ctx.as_array(g) for g in gens] + [ctx.as_array(g.inverse()) for g in gens]
        rng = np.random.default_rng(p)
        upper = [reduce_mod(g, p) for g in elementary_symplectic_generators(form)][:3]
        n_samples = 1000
        for _ in range(n_samples):
            u = ctx.identity_array()
            for b in upper:
                k = int(rng.integers(0, p))
                u = ctx.mul_right(u[None], ctx.as_array(b.pow(k)))[0]
            w = ctx.identity_array()
            for _ in range(int(rng.integers(1, 8))):
                w = ctx.mul_right(w[None], mults[int(rng.integers(0, len(mults)))])[0]
            wmod = ctx.as_mod_matrix(w)
            conj = wmod @ ctx.as_mod_matrix(u) @ wmod.inverse()
            o = element_order(conj, cap=p * p + 1)
            assert o in {1, p, p * p}
            if p >= 5:
                assert o in {1, p}
