"""Enumeration and structural queries in finite matrix groups over Z/n.

The engine stores group elements as numpy arrays of canonical residues and
deduplicates through injective per-matrix keys (a base-n packing into uint64
when it fits, fixed-width bytes otherwise).  All bulk work (products,
conjugation, powers, membership) is vectorized; the Python layer only
orchestrates rounds.  Completed tables are immutable and results are
value-identical across runs: frontiers are processed in a fixed order and
elements are stored in (breadth-first round, key) order, which depends only
on the generator set, not its ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .matrices import CapExceeded, MatrixError, ModMatrix, PolarizedForm


class NotNormal(Exception):
    """quotient_structure got a non-normal subgroup."""


class WitnessNotFound(Exception):
    """Randomized search exhausted its budget without a witness."""

    def __init__(self, message: str, budget: int):
        super().__init__(message)
        self.budget = budget


class BudgetExceeded(Exception):
    """Sylow ascent ran out of attempts."""


DEFAULT_CLOSURE_CAP = 20_000_000


def _entry_dtype(n: int):
    if n <= 0xFF:
        return np.uint8
    if n <= 0xFFFF:
        return np.uint16
    return np.uint32


@dataclass(frozen=True)
class GroupContext:
    """Ambient arena: dimension, modulus, and the polarized form mod n."""

    dim: int
    modulus: int
    form: PolarizedForm

    def __init__(self, dim: int, modulus: int, form: PolarizedForm):
        if modulus < 2:
            raise MatrixError("modulus must be >= 2")
        if form.dim != dim:
            raise MatrixError("form dimension disagrees with context dimension")
        if dim * (modulus - 1) ** 2 >= 2**62:
            raise MatrixError("modulus too large for the vectorized engine")
        lam = np.array(form.gram().entries) % modulus
        if not np.array_equal((lam + lam.T) % modulus, np.zeros_like(lam)):
            raise MatrixError("form is not alternating mod n")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "form", form)

    # -- vectorized primitives -------------------------------------------

    @property
    def _work_dtype(self):
        return np.int32 if self.dim * (self.modulus - 1) ** 2 < 2**31 else np.int64

    def as_array(self, g: ModMatrix) -> np.ndarray:
        if g.modulus != self.modulus or g.dim != self.dim:
            raise MatrixError("matrix does not live in this context")
        return np.array(g.entries, dtype=_entry_dtype(self.modulus))

    def as_mod_matrix(self, arr: np.ndarray) -> ModMatrix:
        return ModMatrix(self.modulus, arr.tolist())

    def identity_array(self) -> np.ndarray:
        return np.eye(self.dim, dtype=_entry_dtype(self.modulus))

    def mul_right(self, batch: np.ndarray, m: np.ndarray) -> np.ndarray:
        """(N, d, d) @ (d, d) mod n."""
        d, n = self.dim, self.modulus
        wt = self._work_dtype
        flat = batch.reshape(-1, d).astype(wt, copy=False)
        out = (flat @ m.astype(wt)) % n
        return out.reshape(-1, d, d).astype(batch.dtype, copy=False)

    def mul_left(self, m: np.ndarray, batch: np.ndarray) -> np.ndarray:
        """(d, d) @ (N, d, d) mod n, via one transposed GEMM."""
        d, n = self.dim, self.modulus
        wt = self._work_dtype
        bt = batch.transpose(0, 2, 1).reshape(-1, d).astype(wt, copy=False)
        out = (bt @ m.astype(wt).T) % n
        return out.reshape(-1, d, d).transpose(0, 2, 1).astype(batch.dtype, copy=False)

    def mul_pairwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise-paired (N, d, d) @ (N, d, d) mod n."""
        wt = self._work_dtype
        out = np.matmul(a.astype(wt, copy=False), b.astype(wt, copy=False)) % self.modulus
        return out.astype(a.dtype, copy=False)

    def pow_batch(self, batch: np.ndarray, e: int, chunk: int = 1 << 19) -> np.ndarray:
        """Elementwise matrix power by square-and-multiply, chunked."""
        pieces = []
        for lo in range(0, len(batch), chunk):
            base = batch[lo : lo + chunk]
            acc = np.broadcast_to(self.identity_array(), base.shape).copy()
            sq = base.copy()
            k = e
            while k:
                if k & 1:
                    acc = self.mul_pairwise(acc, sq)
                k >>= 1
                if k:
                    sq = self.mul_pairwise(sq, sq)
            pieces.append(acc)
        return np.concatenate(pieces) if pieces else batch[:0]

    # -- canonical keys ---------------------------------------------------

    @property
    def packs_uint64(self) -> bool:
        return self.modulus ** (self.dim * self.dim) <= 2**64

    def encode(self, batch: np.ndarray) -> np.ndarray:
        """Injective per-matrix keys; sortable, searchable."""
        nn = self.dim * self.dim
        flat = np.ascontiguousarray(batch).reshape(-1, nn)
        if self.packs_uint64:
            keys = np.zeros(len(flat), dtype=np.uint64)
            base = np.uint64(self.modulus)
            for i in range(nn):
                keys = keys * base + flat[:, i].astype(np.uint64)
            return keys
        width = nn * flat.dtype.itemsize
        return np.frombuffer(flat.tobytes(), dtype=f"S{width}")

    def encode_one(self, g: ModMatrix) -> np.ndarray:
        return self.encode(self.as_array(g)[None, :, :])[0]


@dataclass(frozen=True)
class ElementTable:
    """A finite set of group elements with constant-time-ish membership.

    ``elements`` is in canonical (BFS round, key) order; ``keys_sorted`` and
    ``sorted_pos`` index it for membership tests.  ``complete`` means the
    set is closed under multiplication (hence a subgroup).
    """

    ctx: GroupContext
    elements: np.ndarray
    keys_sorted: np.ndarray
    sorted_pos: np.ndarray
    gens: tuple[ModMatrix, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.keys_sorted, keys)
        pos = np.minimum(pos, len(self.keys_sorted) - 1)
        return self.keys_sorted[pos] == keys

    def __contains__(self, g: ModMatrix | np.ndarray) -> bool:
        if isinstance(g, ModMatrix):
            key = self.ctx.encode_one(g)
        else:
            key = self.ctx.encode(np.asarray(g)[None, :, :])[0]
        return bool(self.contains_keys(np.array([key]))[0])

    def mod_matrices(self, limit: int | None = None) -> list[ModMatrix]:
        upto = len(self.elements) if limit is None else min(limit, len(self.elements))
        return [self.ctx.as_mod_matrix(self.elements[i]) for i in range(upto)]

    def sorted_elements(self) -> np.ndarray:
        """Elements in canonical key order (the export order)."""
        return self.elements[self.sorted_pos]

    def to_json(self, max_export: int = 10_000) -> dict:
        out = {
            "dim": self.ctx.dim,
            "modulus": self.ctx.modulus,
            "size": len(self),
            "complete": self.complete,
        }
        if len(self) <= max_export:
            out["elements"] = [m.tolist() for m in self.sorted_elements()]
        return out


def _build_table(ctx, elements, keys, gens, complete) -> ElementTable:
    order = np.argsort(keys, kind="stable")
    return ElementTable(
        ctx=ctx,
        elements=elements,
        keys_sorted=keys[order],
        sorted_pos=order,
        gens=tuple(gens),
        complete=complete,
    )


def _gen_arrays(ctx: GroupContext, generators: Iterable[ModMatrix]) -> list[np.ndarray]:
    """Generator matrices plus their inverses, deduplicated, in key order."""
    mats: dict[object, np.ndarray] = {}
    for g in generators:
        arr = ctx.as_array(g)
        inv = ctx.as_array(g.inverse())
        for a in (arr, inv):
            mats[ctx.encode(a[None])[0].item() if ctx.packs_uint64 else bytes(ctx.encode(a[None])[0])] = a
    return [mats[k] for k in sorted(mats.keys())]


_CHUNK = 1 << 20


def closure(
    ctx: GroupContext,
    generators: Sequence[ModMatrix],
    cap: int = DEFAULT_CLOSURE_CAP,
) -> ElementTable:
    """Breadth-first product closure of the generator set.

    Deterministic: the resulting element set (and its canonical order)
    depends only on the generator set.  Raises CapExceeded with the partial
    size when the table would outgrow the cap.
    """
    mults = _gen_arrays(ctx, generators)
    ident = ctx.identity_array()
    elements = [ident[None, :, :].copy()]
    known_keys = ctx.encode(elements[0])
    frontier = elements[0]
    total = 1
    while len(frontier):
        round_elems: list[np.ndarray] = []
        round_keys: list[np.ndarray] = []
        seen_this_round = np.empty(0, dtype=known_keys.dtype)
        for m in mults:
            for lo in range(0, len(frontier), _CHUNK):
                prod = ctx.mul_right(frontier[lo : lo + _CHUNK], m)
                keys = ctx.encode(prod)
                # dedupe inside the chunk, against this round, against known
                _, first = np.unique(keys, return_index=True)
                prod, keys = prod[first], keys[first]
                mask = ~_in_sorted(known_keys, keys)
                if len(seen_this_round):
                    mask &= ~_in_sorted(seen_this_round, keys)
                if mask.any():
                    prod, keys = prod[mask], keys[mask]
                    round_elems.append(prod)
                    round_keys.append(keys)
                    seen_this_round = _merge_sorted(seen_this_round, np.sort(keys))
        if not round_keys:
            break
        new_keys = np.concatenate(round_keys)
        new_elems = np.concatenate(round_elems)
        order = np.argsort(new_keys, kind="stable")
        new_keys, new_elems = new_keys[order], new_elems[order]
        total += len(new_keys)
        if total > cap:
            raise CapExceeded(
                f"closure exceeded cap {cap} (at least {total} elements)",
                cap=cap,
                partial=total,
            )
        elements.append(new_elems)
        known_keys = _merge_sorted(known_keys, new_keys)
        frontier = new_elems
    all_elems = np.concatenate(elements)
    keys = ctx.encode(all_elems)
    return _build_table(ctx, all_elems, keys, generators, complete=True)


def _in_sorted(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(keys), dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, len(sorted_keys) - 1)
    return sorted_keys[pos] == keys


def _merge_sorted(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0:
        return b
    if len(b) == 0:
        return a
    out = np.concatenate([a, b])
    out.sort(kind="stable")
    return out


def _extend(table: ElementTable, new_gen: np.ndarray, cap: int) -> ElementTable:
    """Smallest subgroup containing a complete table and one extra element."""
    ctx = table.ctx
    key = ctx.encode(new_gen[None])[0:1]
    if bool(table.contains_keys(key)[0]):
        return table
    mults = [ctx.as_array(g) for g in table.gens]
    mults.append(new_gen)
    mults.append(ctx.as_array(ctx.as_mod_matrix(new_gen).inverse()))
    known_keys = table.keys_sorted.copy()
    elements = [table.elements]
    total = len(table)
    # every old element must meet the new generator once; BFS handles the rest
    frontier_parts = []
    for lo in range(0, total, _CHUNK):
        prod = ctx.mul_right(table.elements[lo : lo + _CHUNK], new_gen)
        keys = ctx.encode(prod)
        _, first = np.unique(keys, return_index=True)
        prod, keys = prod[first], keys[first]
        mask = ~_in_sorted(known_keys, keys)
        prod, keys = prod[mask], keys[mask]
        order = np.argsort(keys, kind="stable")
        prod, keys = prod[order], keys[order]
        if len(keys):
            frontier_parts.append((prod, keys))
            known_keys = _merge_sorted(known_keys, keys)
            total += len(keys)
    frontier = (
        np.concatenate([p for p, _ in frontier_parts]) if frontier_parts else table.elements[:0]
    )
    elements.append(frontier)
    while len(frontier):
        if total > cap:
            raise CapExceeded(
                f"extension exceeded cap {cap}", cap=cap, partial=total
            )
        round_elems, round_keys = [], []
        seen = np.empty(0, dtype=known_keys.dtype)
        for m in mults:
            for lo in range(0, len(frontier), _CHUNK):
                prod = ctx.mul_right(frontier[lo : lo + _CHUNK], m)
                keys = ctx.encode(prod)
                _, first = np.unique(keys, return_index=True)
                prod, keys = prod[first], keys[first]
                mask = ~_in_sorted(known_keys, keys)
                if len(seen):
                    mask &= ~_in_sorted(seen, keys)
                if mask.any():
                    prod, keys = prod[mask], keys[mask]
                    round_elems.append(prod)
                    round_keys.append(keys)
                    seen = _merge_sorted(seen, np.sort(keys))
        if not round_keys:
            break
        new_keys = np.concatenate(round_keys)
        new_elems = np.concatenate(round_elems)
        order = np.argsort(new_keys, kind="stable")
        new_keys, new_elems = new_keys[order], new_elems[order]
        total += len(new_keys)
        elements.append(new_elems)
        known_keys = _merge_sorted(known_keys, new_keys)
        frontier = new_elems
    all_elems = np.concatenate(elements)
    keys = ctx.encode(all_elems)
    gens = tuple(table.gens) + (ctx.as_mod_matrix(new_gen),)
    return _build_table(ctx, all_elems, keys, gens, complete=True)


def normal_closure(
    ctx: GroupContext,
    sub_gens: Sequence[ModMatrix],
    group_gens: Sequence[ModMatrix],
    cap: int = DEFAULT_CLOSURE_CAP,
) -> ElementTable:
    """Least subgroup containing sub_gens that is stable under conjugation
    by the group generators.  Works generator-by-generator: conjugates of
    accumulated generators are adjoined until nothing new appears."""
    table = closure(ctx, sub_gens, cap)
    conjugators: list[tuple[np.ndarray, np.ndarray]] = []
    for g in group_gens:
        arr = ctx.as_array(g)
        inv = ctx.as_array(g.inverse())
        conjugators.append((arr, inv))
        conjugators.append((inv, arr))
    worklist = [ctx.as_array(s) for s in sub_gens]
    i = 0
    while i < len(worklist):
        x = worklist[i]
        i += 1
        for garr, ginv in conjugators:
            y = ctx.mul_right(ctx.mul_left(garr, x[None]), ginv)[0]
            if ctx.as_mod_matrix(y) not in table:
                table = _extend(table, y, cap)
                worklist.append(y)
    return table


def is_normal(sub: ElementTable, group_gens: Sequence[ModMatrix]) -> bool:
    """Conjugation of the whole table by each group generator lands inside it."""
    ctx = sub.ctx
    for g in group_gens:
        garr = ctx.as_array(g)
        ginv = ctx.as_array(g.inverse())
        for lo in range(0, len(sub), _CHUNK):
            conj = ctx.mul_right(ctx.mul_left(garr, sub.elements[lo : lo + _CHUNK]), ginv)
            if not sub.contains_keys(ctx.encode(conj)).all():
                return False
    return True


def center(table: ElementTable) -> ElementTable:
    """Elements commuting with every generator (hence with the whole group)."""
    ctx = table.ctx
    gens = table.gens if table.gens else tuple(table.mod_matrices())
    mask = np.ones(len(table), dtype=bool)
    for g in gens:
        garr = ctx.as_array(g)
        left = ctx.mul_left(garr, table.elements)
        right = ctx.mul_right(table.elements, garr)
        mask &= (left == right).all(axis=(1, 2))
    elems = table.elements[mask]
    keys = ctx.encode(elems)
    central_gens = [ctx.as_mod_matrix(e) for e in elems[np.argsort(keys)][: min(len(elems), 64)]]
    return _build_table(ctx, elems, keys, central_gens, complete=True)


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


def sylow_subgroup(table: ElementTable, q: int, seed: int = 0) -> ElementTable:
    """A Sylow q-subgroup of a fully enumerated group.

    Collects all q-elements in one vectorized pass, then grows a q-subgroup
    by repeatedly adjoining normalizing q-elements (normalizer growth
    guarantees one exists until the full q-part is reached).  Deterministic
    given the seed, which only orders the candidate scan.
    """
    ctx = table.ctx
    order = len(table)
    fact = _factor(order)
    if q not in fact:
        raise ValueError(f"{q} does not divide the group order {order}")
    target = q ** fact[q]
    qv = fact[q]

    # q-elements are exactly those killed by the full q-part of |G|
    powered = ctx.pow_batch(table.elements, q**qv)
    ident = ctx.identity_array()
    mask = (powered == ident[None]).all(axis=(1, 2))
    q_elems = table.elements[mask]
    q_inv = ctx.pow_batch(q_elems, q**qv - 1)

    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(q_elems))
    q_elems, q_inv = q_elems[perm], q_inv[perm]

    current = closure(ctx, [], cap=target + 1)
    attempts = 0
    while len(current) < target:
        attempts += 1
        if attempts > 4 * qv + 16:
            raise BudgetExceeded(
                f"sylow ascent stalled at order {len(current)} of {target}"
            )
        norm_mask = ~current.contains_keys(ctx.encode(q_elems))
        for p in current.gens:
            parr = ctx.as_array(p)
            conj = ctx.mul_pairwise(ctx.mul_right(q_elems, parr), q_inv)
            # x p x^{-1} in P for every generator p means x normalizes P
            norm_mask &= current.contains_keys(ctx.encode(conj))
        idx = np.flatnonzero(norm_mask)
        if len(idx) == 0:
            raise BudgetExceeded("no normalizing q-element found; ascent stuck")
        current = _extend(current, q_elems[idx[0]], cap=target)
    if len(current) != target:
        raise BudgetExceeded(f"sylow construction overshot: {len(current)} != {target}")
    return current


def _random_word(ctx, rng, mults, max_len=24) -> np.ndarray:
    acc = ctx.identity_array()
    for _ in range(int(rng.integers(2, max_len))):
        acc = ctx.mul_right(acc[None], mults[int(rng.integers(0, len(mults)))])[0]
    return acc


def _order_of(ctx, arr: np.ndarray, cap: int = 100_000) -> int:
    ident = ctx.identity_array()
    acc = arr
    for k in range(1, cap + 1):
        if (acc == ident).all():
            return k
        acc = ctx.mul_right(acc[None], arr)[0]
    raise CapExceeded("element order exceeded cap", cap=cap)


def find_dihedral8(
    ctx: GroupContext,
    group_gens: Sequence[ModMatrix],
    seed: int = 0,
    budget: int = 400,
) -> tuple[ModMatrix, ModMatrix]:
    """Search for a dihedral subgroup of order 8: (a, b) with a^4 = b^2 = I,
    b a b^{-1} = a^{-1}, b outside <a>.

    Samples random words, harvests involutions, and pairs them: two
    involutions t, s generate a dihedral group of order 2 ord(ts), so a
    product of order 4 hands us the witness.  The returned pair is
    re-verified through its full 8-element multiplication table.
    NotFound after the budget is only heuristic evidence of absence.
    """
    rng = np.random.default_rng(seed)
    mults = _gen_arrays(ctx, group_gens)
    involutions: list[np.ndarray] = []
    inv_keys: set = set()
    for _ in range(budget):
        x = _random_word(ctx, rng, mults)
        try:
            o = _order_of(ctx, x)
        except CapExceeded:
            continue
        if o % 2:
            continue
        t = ctx.pow_batch(x[None], o // 2)[0]
        tkey = ctx.encode(t[None])[0].item() if ctx.packs_uint64 else bytes(ctx.encode(t[None])[0])
        if tkey in inv_keys:
            continue
        for s in involutions:
            a = ctx.mul_right(t[None], s)[0]
            if _order_of(ctx, a, cap=64) == 4:
                b = t
                _verify_dihedral8(ctx, a, b)
                return ctx.as_mod_matrix(a), ctx.as_mod_matrix(b)
        involutions.append(t)
        inv_keys.add(tkey)
    raise WitnessNotFound(
        f"no dihedral order-8 witness within budget {budget}", budget=budget
    )


def _verify_dihedral8(ctx, a: np.ndarray, b: np.ndarray) -> None:
    amod = ctx.as_mod_matrix(a)
    bmod = ctx.as_mod_matrix(b)
    ident = ModMatrix.identity(ctx.dim, ctx.modulus)
    assert amod.pow(4).entries == ident.entries and amod.pow(2).entries != ident.entries
    assert bmod.pow(2).entries == ident.entries and bmod.entries != ident.entries
    conj = bmod @ amod @ bmod.inverse()
    assert conj.entries == amod.inverse().entries, "b a b^-1 != a^-1"
    elems = {}
    for i in range(4):
        for j in range(2):
            g = amod.pow(i) @ bmod.pow(j)
            elems[g.encode()] = g
    assert len(elems) == 8, "witness subgroup is not of order 8"
    # closure of the 8-element table, entry by entry
    keys = set(elems.keys())
    for g in elems.values():
        for h in elems.values():
            assert (g @ h).encode() in keys, "multiplication table left the subgroup"


@dataclass(frozen=True)
class QuotientReport:
    """Structure of group/normal: order, abelianness, invariants if abelian."""

    order: int
    normal: bool
    abelian: bool
    invariants: tuple[int, ...] | None
    reps_computed: bool

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "normal": self.normal,
            "abelian": self.abelian,
            "invariants": list(self.invariants) if self.invariants is not None else None,
            "reps_computed": self.reps_computed,
        }


def quotient_structure(
    group: ElementTable,
    normal: ElementTable,
    quotient_cap: int = 10_000,
) -> QuotientReport:
    """Coset structure of a normal subgroup inside an enumerated group.

    Order and the generator-level abelian test are always reported.  Coset
    representatives (and, for abelian quotients, the cyclic invariant
    factors, via counts of cosets killed by each prime power) are computed
    only when the index fits under the cap.
    """
    ctx = group.ctx
    if len(group) % len(normal) != 0:
        raise NotNormal("subgroup order does not divide group order")
    if not group.contains_keys(normal.keys_sorted).all():
        raise NotNormal("normal candidate is not contained in the group")
    if not is_normal(normal, group.gens):
        raise NotNormal("candidate subgroup is not normal under the group generators")
    index = len(group) // len(normal)

    # abelian iff all generator commutators fall into the normal subgroup
    abelian = True
    gen_arrays = [ctx.as_array(g) for g in group.gens]
    gen_invs = [ctx.as_array(g.inverse()) for g in group.gens]
    for i in range(len(gen_arrays)):
        for j in range(i + 1, len(gen_arrays)):
            comm = ctx.mul_right(
                ctx.mul_right(
                    ctx.mul_right(gen_arrays[i][None], gen_arrays[j]),
                    gen_invs[i],
                ),
                gen_invs[j],
            )
            if not normal.contains_keys(ctx.encode(comm)).all():
                abelian = False
                break
        if not abelian:
            break

    if index > quotient_cap:
        return QuotientReport(
            order=index, normal=True, abelian=abelian, invariants=None, reps_computed=False
        )

    # breadth-first coset discovery; covered keys grow by one N-coset at a time
    mults = [ctx.as_array(g) for g in group.gens] + gen_invs
    reps: list[np.ndarray] = [ctx.identity_array()]
    covered = normal.keys_sorted.copy()
    queue = [reps[0]]
    while queue:
        r = queue.pop(0)
        for m in mults:
            x = ctx.mul_right(r[None], m)[0]
            if not _in_sorted(covered, ctx.encode(x[None]))[0]:
                reps.append(x)
                coset_keys = np.sort(ctx.encode(ctx.mul_right(normal.elements, x)))
                covered = _merge_sorted(covered, coset_keys)
                queue.append(x)
    if len(reps) != index:
        raise NotNormal(
            f"coset discovery found {len(reps)} classes, expected index {index}"
        )

    invariants = None
    if abelian:
        coset_orders = []
        for r in reps:
            acc = r
            k = 1
            while not _in_sorted(normal.keys_sorted, ctx.encode(acc[None]))[0]:
                acc = ctx.mul_right(acc[None], r)[0]
                k += 1
            coset_orders.append(k)
        invariants = _abelian_invariants_from_orders(coset_orders, index)
    return QuotientReport(
        order=index, normal=True, abelian=abelian, invariants=invariants, reps_computed=True
    )


def _abelian_invariants_from_orders(orders: Sequence[int], size: int) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its element orders.

    With m_k = log_p #{x : x^(p^k) = 1}, the increments m_k - m_(k-1) form
    the conjugate of the p-primary partition; assembling the prime parts
    largest-first yields the divisor chain.  Element order multisets
    determine finite abelian groups up to isomorphism, so this is exact.
    """
    parts: dict[int, list[int]] = {}
    for p in _factor(size):
        m = [0]
        k = 1
        while True:
            pk = p**k
            c = sum(1 for o in orders if pk % o == 0)
            mk = _exact_log(c, p)
            m.append(mk)
            if mk == m[k - 1]:
                break
            k += 1
        increments = [m[i] - m[i - 1] for i in range(1, len(m))]
        lam = [
            sum(1 for inc in increments if inc > row)
            for row in range(increments[0] if increments else 0)
        ]
        if lam:
            parts[p] = sorted(lam, reverse=True)
    n_factors = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(n_factors):
        f = 1
        for p, lam in parts.items():
            if i < len(lam):
                f *= p ** lam[i]
        factors.append(f)
    return tuple(sorted(factors))


def _exact_log(c: int, p: int) -> int:
    k = 0
    acc = 1
    while acc < c:
        acc *= p
        k += 1
    if acc != c:
        raise AssertionError(f"count {c} is not a power of {p}")
    return k
