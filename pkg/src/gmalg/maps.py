"""Linear self-maps of a generalized matrix algebra.

Covers: the k-commuting test, the linear solution space of all k-commuting
maps, the sixteen-block decomposition of a self-map, the structure-condition
report for k-commuting maps, the sufficient-hypothesis check and the
proper-form construction, plus a hypothesis-free properness decision.
"""

import itertools
from collections import namedtuple

import numpy as np

from . import linalg
from .algebra import Submodule, iter_vectors, scalar_multiples_of
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    HypothesesNotMet,
    NotEnumerable,
    NotKCommuting,
    TheoremViolation,
    TwoTorsion,
)
from .morita import BLOCKS
from .report import Report
from .rings import Zmod


class LinMap:
    """A square matrix acting on coordinate columns; column j is the image
    of basis vector e_j."""

    def __init__(self, ring, rows):
        self.ring = ring
        self.dim = len(rows)
        self.rows = tuple(
            tuple(ring.coerce(c) for c in r) for r in rows
        )
        for r in self.rows:
            if len(r) != self.dim:
                raise DimensionMismatch("map matrix must be square")

    @classmethod
    def identity(cls, ring, dim):
        return cls(
            ring,
            [
                [ring.one if i == j else ring.zero for j in range(dim)]
                for i in range(dim)
            ],
        )

    @classmethod
    def zero(cls, ring, dim):
        return cls(ring, [[ring.zero] * dim for _ in range(dim)])

    @classmethod
    def from_columns(cls, ring, cols):
        dim = len(cols)
        return cls(
            ring, [[cols[j][i] for j in range(dim)] for i in range(dim)]
        )

    @classmethod
    def from_flat(cls, ring, dim, flat):
        return cls(
            ring,
            [flat[i * dim : (i + 1) * dim] for i in range(dim)],
        )

    def flatten(self):
        return tuple(c for row in self.rows for c in row)

    def apply(self, v):
        if len(v) != self.dim:
            raise DimensionMismatch("vector length does not match map")
        rg = self.ring
        out = []
        for row in self.rows:
            s = rg.zero
            for c, x in zip(row, v):
                if c != rg.zero and x != rg.zero:
                    s = rg.add(s, rg.mul(c, x))
            out.append(s)
        return tuple(out)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def compose(self, other):
        """self after other."""
        rg = self.ring
        cols = [self.apply(other.column(j)) for j in range(self.dim)]
        return LinMap.from_columns(rg, cols)

    def add(self, other):
        rg = self.ring
        return LinMap(
            rg,
            [
                [rg.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def sub(self, other):
        rg = self.ring
        return LinMap(
            rg,
            [
                [rg.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def scale(self, c):
        rg = self.ring
        return LinMap(rg, [[rg.mul(c, a) for a in r] for r in self.rows])

    def is_zero(self):
        return all(c == self.ring.zero for r in self.rows for c in r)

    def __eq__(self, other):
        return (
            isinstance(other, LinMap)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    def to_json(self):
        from .rings import scalar_to_json

        return {
            "schema": "map/1",
            "matrix": [
                [scalar_to_json(self.ring, c) for c in row] for row in self.rows
            ],
        }

    def __repr__(self):
        return f"LinMap(dim={self.dim})"


def _underlying(G):
    """Accept either a plain Algebra or a GMAlgebra wrapper."""
    return getattr(G, "algebra", G)


def is_k_commuting(G, theta, k):
    """(True, None) if [theta(x), x]_k = 0 for every x, else (False, x).

    The identity has degree k+1 in x, so over finite rings every element is
    scanned; over the rationals only k = 1 is decided (by polarization on
    basis pairs, valid in the absence of 2-torsion).
    """
    alg = _underlying(G)
    if k < 1:
        raise DimensionMismatch("commuting order must be >= 1")
    if theta.dim != alg.dim:
        raise DimensionMismatch("map dimension does not match the algebra")
    if alg.ring.enumerable:
        return _scan_k_commuting(alg, theta, k)
    if k == 1:
        for i in range(alg.dim):
            ei = alg.basis_vector(i)
            ti = theta.apply(ei)
            for j in range(i, alg.dim):
                ej = alg.basis_vector(j)
                tj = theta.apply(ej)
                s = alg.add(alg.bracket(ti, ej), alg.bracket(tj, ei))
                if not alg.is_zero(s):
                    return False, alg.add(ei, ej) if i != j else ei
        return True, None
    raise NotEnumerable(
        "k-commuting for k >= 2 is only decidable over finite rings"
    )


def _scan_k_commuting(alg, theta, k):
    if isinstance(alg.ring, Zmod):
        n = alg.ring.n
        d = alg.dim
        Tl, Tr = alg._np_tensors()
        Tm = np.array([[int(c) for c in row] for row in theta.rows], dtype=np.int64)
        for x in iter_vectors(alg.ring, d):
            xv = np.asarray(x, dtype=np.int64)
            w = (Tm @ xv) % n
            L = ((xv @ Tl) % n).reshape(d, d).T
            R = ((xv @ Tr) % n).reshape(d, d).T
            D = (R - L) % n
            for _ in range(k):
                w = (D @ w) % n
            if w.any():
                return False, tuple(int(c) for c in x)
        return True, None
    for x in iter_vectors(alg.ring, alg.dim):
        if not alg.is_zero(alg.iterated_bracket(theta.apply(x), x, k)):
            return False, x
    return True, None


class MapSpace:
    """A submodule of LinMaps given by flattened-matrix generators."""

    def __init__(self, algebra, space):
        self.algebra = algebra
        self.space = space

    @property
    def ring(self):
        return self.algebra.ring

    def basis(self):
        d = self.algebra.dim
        return [LinMap.from_flat(self.ring, d, g) for g in self.space.gens]

    @property
    def rank(self):
        return self.space.rank

    def contains(self, linmap):
        return self.space.contains(linmap.flatten())

    def count(self):
        return self.space.count()

    def random_member(self, rng):
        """A random linear combination of the generators; deterministic for
        a seeded generator."""
        rg = self.ring
        d = self.algebra.dim
        out = LinMap.zero(rg, d)
        for g in self.basis():
            if rg.enumerable:
                c = rg.coerce(rng.randrange(rg.size))
            else:
                c = rg.coerce(rng.randint(-9, 9))
            out = out.add(g.scale(c))
        return out

    def __repr__(self):
        return f"MapSpace(dim={self.algebra.dim}, ngens={len(self.space.gens)})"


def commuting_space(G, k):
    """All maps theta with [theta(x), x]_k = 0 for every x, as the solution
    of the linear system in theta's matrix entries."""
    alg = _underlying(G)
    d = alg.dim
    if k < 1:
        raise DimensionMismatch("commuting order must be >= 1")
    if alg.ring.enumerable:
        if isinstance(alg.ring, Zmod):
            n = alg.ring.n
            Tl, Tr = alg._np_tensors()
            acc = linalg.kernel_builder(alg.ring, d * d)
            for x in iter_vectors(alg.ring, d):
                xv = np.asarray(x, dtype=np.int64)
                L = ((xv @ Tl) % n).reshape(d, d).T
                R = ((xv @ Tr) % n).reshape(d, d).T
                D = (R - L) % n
                P = np.eye(d, dtype=np.int64)
                for _ in range(k):
                    P = (P @ D) % n
                # unknown theta[p][q] sits at flat index p*d+q; the row for
                # output coordinate r is the outer product P[r,:] x
                acc.add_rows(np.kron(P, xv.reshape(1, d)))
            gens = acc.nullspace()
        else:
            raise NotEnumerable("finite enumeration needs a Zmod ring")
        return MapSpace(alg, Submodule(alg.ring, d * d, gens))
    if k != 1:
        raise NotEnumerable(
            "the commuting space for k >= 2 needs a finite ring"
        )
    rg = alg.ring
    rows = []
    ad = [alg.adjoint_matrix(alg.basis_vector(i)) for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            # polarized constraint [theta(e_i), e_j] + [theta(e_j), e_i] = 0
            for r in range(d):
                row = [rg.zero] * (d * d)
                for p in range(d):
                    row[p * d + i] = rg.add(row[p * d + i], ad[j][r][p])
                    row[p * d + j] = rg.add(row[p * d + j], ad[i][r][p])
                rows.append(row)
    gens = linalg.nullspace(rg, rows, d * d)
    return MapSpace(alg, Submodule(rg, d * d, gens))


class BlockDecomposition:
    """The sixteen source-block -> target-block components of a self-map."""

    def __init__(self, G, theta):
        if theta.dim != G.dim:
            raise DimensionMismatch("map dimension does not match the algebra")
        self.G = G
        self.theta = theta
        self.ring = G.ring
        self._blocks = {}
        for src in BLOCKS:
            for dst in BLOCKS:
                self._blocks[(src, dst)] = tuple(
                    tuple(theta.rows[r][c] for c in G.block_range(src))
                    for r in G.block_range(dst)
                )

    def block(self, src, dst):
        return self._blocks[(src, dst)]

    def set_block(self, src, dst, matrix):
        """Test hook: overwrite one component (negative controls only)."""
        rows = tuple(
            tuple(self.ring.coerce(c) for c in r) for r in matrix
        )
        if len(rows) != len(self._blocks[(src, dst)]):
            raise DimensionMismatch("block shape mismatch")
        self._blocks[(src, dst)] = rows

    def apply(self, src, dst, v):
        rg = self.ring
        out = []
        for row in self._blocks[(src, dst)]:
            s = rg.zero
            for c, x in zip(row, v):
                s = rg.add(s, rg.mul(c, x))
            out.append(s)
        return tuple(out)

    def block_is_zero(self, src, dst):
        rg = self.ring
        for row in self._blocks[(src, dst)]:
            for c in row:
                if c != rg.zero:
                    return False
        return True

    def at_unit(self, src, dst):
        """Component applied to the unit of the source algebra (A or B)."""
        unit = self.G.ctx.A.unit if src == "A" else self.G.ctx.B.unit
        return self.apply(src, dst, unit)

    def reassemble(self):
        d = self.G.dim
        cols = []
        for j in range(d):
            src, loc = self.G.block_of_index(j)
            col = [self.ring.zero] * d
            sv = tuple(
                self.ring.one if t == loc else self.ring.zero
                for t in range(len(list(self.G.block_range(src))))
            )
            for dst in BLOCKS:
                img = self.apply(src, dst, sv)
                off = self.G.offsets[dst]
                for r, c in enumerate(img):
                    col[off + r] = c
            cols.append(tuple(col))
        return LinMap.from_columns(self.ring, cols)

    def component_map(self, src, dst):
        """The component as a LinMap on the source algebra (square blocks
        only: A->A and B->B)."""
        return LinMap(self.ring, self.block(src, dst))


def decompose(G, theta):
    return BlockDecomposition(G, theta)


def _module_vectors(ring, dim):
    return list(iter_vectors(ring, dim))


def verify_structure_conditions(G, theta, k, blocks=None):
    """The structural consequences that every k-commuting map satisfies:
    six vanishing components, six components ranging in the order-k
    centers, the two diagonal components k-commuting with central unit
    images, and four compatibility identities between the off-diagonal
    components."""
    ok, bad = is_k_commuting(G, theta, k)
    if not ok:
        raise NotKCommuting(f"map is not {k}-commuting (witness {bad})")
    dec = blocks if blocks is not None else decompose(G, theta)
    rep = Report(f"structure conditions (k={k})")
    ctx = G.ctx
    rg = G.ring
    dA, dM, dN, dB = G.dims

    for src, dst, cid in (
        ("A", "M", "a_to_m_zero"),
        ("A", "N", "a_to_n_zero"),
        ("B", "M", "b_to_m_zero"),
        ("B", "N", "b_to_n_zero"),
        ("N", "M", "n_to_m_zero"),
        ("M", "N", "m_to_n_zero"),
    ):
        rep.add(cid, dec.block_is_zero(src, dst), None)

    ZAk = ctx.A.engel_center(k)
    ZBk = ctx.B.engel_center(k)

    def _range_line(src, dst, target, cid):
        dim_src = G.dims[BLOCKS.index(src)]
        for p in range(dim_src):
            e = tuple(rg.one if r == p else rg.zero for r in range(dim_src))
            img = dec.apply(src, dst, e)
            if not target.contains(img):
                rep.add(cid, False, {"basis_index": p, "image": img})
                return
        rep.add(cid, True, None)

    _range_line("M", "A", ZAk, "m_to_a_engel_range")
    _range_line("N", "A", ZAk, "n_to_a_engel_range")
    _range_line("B", "A", ZAk, "b_to_a_engel_range")
    _range_line("A", "B", ZBk, "a_to_b_engel_range")
    _range_line("M", "B", ZBk, "m_to_b_engel_range")
    _range_line("N", "B", ZBk, "n_to_b_engel_range")

    d1 = dec.component_map("A", "A")
    okA, witA = is_k_commuting(ctx.A, d1, k)
    rep.add("diag_a_k_commuting", okA, witA)
    rep.add(
        "diag_a_unit_engel",
        ZAk.contains(dec.at_unit("A", "A")),
        dec.at_unit("A", "A"),
    )
    m4 = dec.component_map("B", "B")
    okB, witB = is_k_commuting(ctx.B, m4, k)
    rep.add("diag_b_k_commuting", okB, witB)
    rep.add(
        "diag_b_unit_engel",
        ZBk.contains(dec.at_unit("B", "B")),
        dec.at_unit("B", "B"),
    )

    d1_1 = dec.at_unit("A", "A")
    d4_1 = dec.at_unit("B", "A")
    m1_1 = dec.at_unit("A", "B")
    m4_1 = dec.at_unit("B", "B")
    sumA = ctx.A.add(d1_1, d4_1)
    sumB = ctx.B.add(m1_1, m4_1)
    difA = ctx.A.sub(d1_1, d4_1)
    difB = ctx.B.sub(m1_1, m4_1)
    two = rg.add(rg.one, rg.one)

    def _m_balance(m):
        # (d1(1)+d4(1)+2*d2(m))*m = m*(m1(1)+m4(1)+2*m2(m))
        lhs = ctx.am(
            ctx.A.add(sumA, ctx.A.scale(two, dec.apply("M", "A", m))), m
        )
        rhs = ctx.mb(
            m, ctx.B.add(sumB, ctx.B.scale(two, dec.apply("M", "B", m)))
        )
        return lhs == rhs

    def _n_balance(n):
        lhs = ctx.na(
            n, ctx.A.add(sumA, ctx.A.scale(two, dec.apply("N", "A", n)))
        )
        rhs = ctx.bn(
            ctx.B.add(sumB, ctx.B.scale(two, dec.apply("N", "B", n))), n
        )
        return lhs == rhs

    # degree two in the module variable, so basis checking is insufficient
    rep.add(*_scan_module_identity(rg, dM, _m_balance, "m_balance_symmetrized",
                                   _m_balance_split(ctx, dec, difsum=(sumA, sumB))))
    rep.add(*_scan_module_identity(rg, dN, _n_balance, "n_balance_symmetrized",
                                   _n_balance_split(ctx, dec, difsum=(sumA, sumB))))

    ok5 = True
    wit5 = None
    for p in range(dM):
        m = tuple(rg.one if r == p else rg.zero for r in range(dM))
        lhs = tuple(
            rg.mul(two, c) for c in dec.apply("M", "M", m)
        )
        rhs = tuple(
            rg.sub(a, b) for a, b in zip(ctx.am(difA, m), ctx.mb(m, difB))
        )
        if lhs != rhs:
            ok5, wit5 = False, {"basis_index": p}
            break
    rep.add("m_to_m_doubling", ok5, wit5)

    ok6 = True
    wit6 = None
    for q in range(dN):
        n = tuple(rg.one if r == q else rg.zero for r in range(dN))
        lhs = tuple(rg.mul(two, c) for c in dec.apply("N", "N", n))
        rhs = tuple(
            rg.sub(a, b) for a, b in zip(ctx.na(n, difA), ctx.bn(difB, n))
        )
        if lhs != rhs:
            ok6, wit6 = False, {"basis_index": q}
            break
    rep.add("n_to_n_doubling", ok6, wit6)
    return rep


def _scan_module_identity(ring, dim, predicate, cond_id, rational_split):
    """Check an identity of degree <= 2 in one module variable.

    Finite rings: scan every module element.  Rationals: delegate to the
    caller-supplied split into linear and symmetrized-bilinear basis
    checks (sound in characteristic zero)."""
    if ring.enumerable:
        for m in iter_vectors(ring, dim):
            if not predicate(m):
                return cond_id, False, {"module_element": m}
        return cond_id, True, None
    ok, wit = rational_split()
    return cond_id, ok, wit


def _m_balance_split(ctx, dec, difsum):
    sumA, sumB = difsum
    rg = ctx.ring
    dM = ctx.M.dim
    two = rg.add(rg.one, rg.one)

    def run():
        basis = [
            tuple(rg.one if r == p else rg.zero for r in range(dM))
            for p in range(dM)
        ]
        for p, m in enumerate(basis):
            if ctx.am(sumA, m) != ctx.mb(m, sumB):
                return False, {"basis_index": p, "part": "linear"}
        for p in range(dM):
            for q in range(dM):
                lhs = ctx.am(
                    ctx.A.scale(two, dec.apply("M", "A", basis[p])), basis[q]
                )
                rhs = ctx.mb(
                    basis[q], ctx.B.scale(two, dec.apply("M", "B", basis[p]))
                )
                l2 = ctx.am(
                    ctx.A.scale(two, dec.apply("M", "A", basis[q])), basis[p]
                )
                r2 = ctx.mb(
                    basis[p], ctx.B.scale(two, dec.apply("M", "B", basis[q]))
                )
                dif = [
                    rg.add(rg.sub(a, b), rg.sub(c, d))
                    for a, b, c, d in zip(lhs, rhs, l2, r2)
                ]
                if any(c != rg.zero for c in dif):
                    return False, {"basis_pair": (p, q), "part": "bilinear"}
        return True, None

    return run


def _n_balance_split(ctx, dec, difsum):
    sumA, sumB = difsum
    rg = ctx.ring
    dN = ctx.N.dim
    two = rg.add(rg.one, rg.one)

    def run():
        basis = [
            tuple(rg.one if r == q else rg.zero for r in range(dN))
            for q in range(dN)
        ]
        for q, n in enumerate(basis):
            if ctx.na(n, sumA) != ctx.bn(sumB, n):
                return False, {"basis_index": q, "part": "linear"}
        for p in range(dN):
            for q in range(dN):
                lhs = ctx.na(
                    basis[q], ctx.A.scale(two, dec.apply("N", "A", basis[p]))
                )
                rhs = ctx.bn(
                    ctx.B.scale(two, dec.apply("N", "B", basis[p])), basis[q]
                )
                l2 = ctx.na(
                    basis[p], ctx.A.scale(two, dec.apply("N", "A", basis[q]))
                )
                r2 = ctx.bn(
                    ctx.B.scale(two, dec.apply("N", "B", basis[q])), basis[p]
                )
                dif = [
                    rg.add(rg.sub(a, b), rg.sub(c, d))
                    for a, b, c, d in zip(lhs, rhs, l2, r2)
                ]
                if any(c != rg.zero for c in dif):
                    return False, {"basis_pair": (p, q), "part": "bilinear"}
        return True, None

    return run


HypothesisWitness = namedtuple(
    "HypothesisWitness",
    ["cond1", "cond2", "cond3", "m_witness", "n_witness"],
)


def _hyp_all(h):
    return h.cond1 and h.cond2 and h.cond3


def check_properness_hypotheses(G, k, pair_budget=10**6):
    """The three sufficient conditions for properness of every k-commuting
    map: both order-k centers are exactly the diagonal projections of the
    center, and some single pair (m0, n0) already cuts out the center.
    """
    rg = G.ring
    if not rg.enumerable:
        raise NotEnumerable("the hypothesis check enumerates module elements")
    if not rg.is_two_torsion_free():
        raise TwoTorsion("the proper-form pipeline needs 2x = 0 => x = 0")
    G.require_faithful()
    piA, piB = G.center_projections()
    cond1 = G.ctx.A.engel_center(k).equals(piA)
    cond2 = G.ctx.B.engel_center(k).equals(piB)

    dA, dM, dN, dB = G.dims
    Ms = _module_vectors(rg, dM)
    Ns = _module_vectors(rg, dN)
    if len(Ms) * len(Ns) > pair_budget:
        raise BudgetExceeded("witness-pair search space too large")
    adA = [
        G.ctx.A.adjoint_matrix(G.ctx.A.basis_vector(i)) for i in range(dA)
    ]
    adB = [
        G.ctx.B.adjoint_matrix(G.ctx.B.basis_vector(j)) for j in range(dB)
    ]
    zdiag = Submodule(rg, dA + dB, _diag_coords(G))

    def pinned_set(m0, n0):
        rows = []
        for mat in adA:
            for r in mat:
                rows.append(list(r) + [rg.zero] * dB)
        for mat in adB:
            for r in mat:
                rows.append([rg.zero] * dA + list(r))
        rows.extend(G._center_pair_rows(m0=m0, n0=n0))
        return Submodule(rg, dA + dB, linalg.nullspace(rg, rows, dA + dB))

    cond3 = False
    m_wit = n_wit = None
    for i, j in _witness_order(len(Ms), len(Ns)):
        s = pinned_set(Ms[i], Ns[j])
        if s.equals(zdiag):
            cond3, m_wit, n_wit = True, Ms[i], Ns[j]
            break
    return HypothesisWitness(cond1, cond2, cond3, m_wit, n_wit)


def _diag_coords(G):
    dA, dB = G.dims[0], G.dims[3]
    out = []
    for g in G.gma_center().gens:
        a = tuple(g[i] for i in G.block_range("A"))
        b = tuple(g[i] for i in G.block_range("B"))
        out.append(a + b)
    return out


def _witness_order(nm, nn):
    """Matched-index pairs first, then the remaining lexicographic grid."""
    seen = set()
    for i in range(max(nm, nn)):
        p = (min(i, nm - 1), min(i, nn - 1))
        if p not in seen:
            seen.add(p)
            yield p
    for p in itertools.product(range(nm), range(nn)):
        if p not in seen:
            seen.add(p)
            yield p


PropernessCertificate = namedtuple(
    "PropernessCertificate", ["multiplier", "offset"]
)

ProperFormResult = namedtuple(
    "ProperFormResult", ["center_shift", "residual_map"]
)


def construct_proper_form(G, theta, k, hypotheses=None):
    """Split a k-commuting map as x -> x*C + (central-valued remainder),
    with C built from the unit images of the two diagonal components via
    the center isomorphism."""
    ok, bad = is_k_commuting(G, theta, k)
    if not ok:
        raise NotKCommuting(f"map is not {k}-commuting (witness {bad})")
    hyp = hypotheses if hypotheses is not None else check_properness_hypotheses(G, k)
    if not _hyp_all(hyp):
        raise HypothesesNotMet(f"sufficient conditions fail: {hyp}")
    dec = decompose(G, theta)
    d1_1 = dec.at_unit("A", "A")
    m1_1 = dec.at_unit("A", "B")
    Ca = G.ctx.A.sub(d1_1, G.phi_inv_apply(m1_1))
    Cb = G.ctx.B.sub(G.phi_apply(d1_1), m1_1)
    C = G.embed_diag(Ca, Cb)
    z = G.gma_center()
    if not z.contains(C):
        raise TheoremViolation("constructed shift is not central", C)
    alg = G.algebra
    cols = []
    for j in range(G.dim):
        ej = alg.basis_vector(j)
        res = alg.sub(theta.apply(ej), alg.mul(ej, C))
        if not z.contains(res):
            raise TheoremViolation(
                "residual escapes the center despite the hypotheses",
                {"basis_index": j, "residual": res},
            )
        cols.append(res)
    return ProperFormResult(C, LinMap.from_columns(G.ring, cols))


def properness_certificate(G, theta):
    """Any (central multiplier, central-valued remainder) splitting of the
    map, or None when no such splitting exists.

    Membership of the remainder in the center is encoded with auxiliary
    unknowns (one coordinate vector per basis element), which keeps the
    system linear over every supported ring."""
    alg = _underlying(G)
    rg = alg.ring
    d = alg.dim
    zgens = G.gma_center().gens if hasattr(G, "gma_center") else None
    if zgens is None:
        zgens = alg.center().gens
    nz = len(zgens)
    if nz == 0:
        if all(theta.column(j) == alg.zero() for j in range(d)):
            return PropernessCertificate(alg.zero(), LinMap.zero(rg, d))
        return None
    # unknowns: t (nz multiplier coords), then u_j (nz per basis element)
    nunk = nz * (1 + d)
    rows = []
    rhs = []
    for j in range(d):
        ej = alg.basis_vector(j)
        ej_z = [alg.mul(ej, g) for g in zgens]
        tj = theta.apply(ej)
        for r in range(d):
            row = [rg.zero] * nunk
            for s in range(nz):
                row[s] = ej_z[s][r]
                row[nz * (1 + j) + s] = zgens[s][r]
            rows.append(row)
            rhs.append(tj[r])
    sol = linalg.solve_linear(rg, rows, rhs)
    if sol is None:
        return None
    t = sol.particular[:nz]
    lam = alg.zero()
    for c, g in zip(t, zgens):
        lam = alg.add(lam, alg.scale(c, g))
    cols = [
        alg.sub(theta.apply(alg.basis_vector(j)), alg.mul(alg.basis_vector(j), lam))
        for j in range(d)
    ]
    return PropernessCertificate(lam, LinMap.from_columns(rg, cols))


def verify_proper_form_steps(G, theta, k, blocks=None, hypotheses=None):
    """The intermediate identities established on the way to the proper
    form, checked directly on the supplied map."""
    ok, bad = is_k_commuting(G, theta, k)
    if not ok:
        raise NotKCommuting(f"map is not {k}-commuting (witness {bad})")
    hyp = hypotheses if hypotheses is not None else check_properness_hypotheses(G, k)
    if not _hyp_all(hyp):
        raise HypothesesNotMet(f"sufficient conditions fail: {hyp}")
    dec = blocks if blocks is not None else decompose(G, theta)
    ctx = G.ctx
    rg = G.ring
    dA, dM, dN, dB = G.dims
    rep = Report(f"proper-form step invariants (k={k})")
    z = G.gma_center()

    def mbasis(p):
        return tuple(rg.one if r == p else rg.zero for r in range(dM))

    def nbasis(q):
        return tuple(rg.one if r == q else rg.zero for r in range(dN))

    def abasis(i):
        return ctx.A.basis_vector(i)

    def bbasis(j):
        return ctx.B.basis_vector(j)

    # quadratic in the module variable -> full module scans
    def _m_quad(m):
        return ctx.am(dec.apply("M", "A", m), m) == ctx.mb(
            m, dec.apply("M", "B", m)
        )

    def _n_quad(n):
        return ctx.na(n, dec.apply("N", "A", n)) == ctx.bn(
            dec.apply("N", "B", n), n
        )

    rep.add(*_scan_module_identity(
        rg, dM, _m_quad, "m_to_a_quadratic_balance",
        _pure_quadratic_split(rg, dM, lambda m, m2: _pair_diff(
            ctx, dec, m, m2)),
    ))
    rep.add(*_scan_module_identity(
        rg, dN, _n_quad, "n_to_a_quadratic_balance",
        _pure_quadratic_split(rg, dN, lambda n, n2: _pair_diff_n(
            ctx, dec, n, n2)),
    ))

    okc = True
    witc = None
    for q in range(dN):
        for p in range(dM):
            if ctx.am(dec.apply("N", "A", nbasis(q)), mbasis(p)) != ctx.mb(
                mbasis(p), dec.apply("N", "B", nbasis(q))
            ):
                okc, witc = False, {"n_index": q, "m_index": p}
                break
        if not okc:
            break
    rep.add("n_to_a_m_compat", okc, witc)

    okd = True
    witd = None
    for p in range(dM):
        for q in range(dN):
            if ctx.bn(dec.apply("M", "B", mbasis(p)), nbasis(q)) != ctx.na(
                nbasis(q), dec.apply("M", "A", mbasis(p))
            ):
                okd, witd = False, {"m_index": p, "n_index": q}
                break
        if not okd:
            break
    rep.add("m_to_b_n_compat", okd, witd)

    oke = True
    wite = None
    for p in range(dM):
        v = G.embed_diag(
            dec.apply("M", "A", mbasis(p)), dec.apply("M", "B", mbasis(p))
        )
        if not z.contains(v):
            oke, wite = False, {"m_index": p}
            break
    rep.add("m_to_diag_central", oke, wite)

    okf = True
    witf = None
    for q in range(dN):
        v = G.embed_diag(
            dec.apply("N", "A", nbasis(q)), dec.apply("N", "B", nbasis(q))
        )
        if not z.contains(v):
            okf, witf = False, {"n_index": q}
            break
    rep.add("n_to_diag_central", okf, witf)

    d1_1 = dec.at_unit("A", "A")
    m1_1 = dec.at_unit("A", "B")

    okg = True
    witg = None
    for i in range(dA):
        a = abasis(i)
        da = dec.apply("A", "A", a)
        ma = dec.apply("A", "B", a)
        for p in range(dM):
            m = mbasis(p)
            lhs = tuple(
                rg.sub(x, y) for x, y in zip(ctx.am(da, m), ctx.mb(m, ma))
            )
            inner = tuple(
                rg.sub(x, y)
                for x, y in zip(ctx.am(d1_1, m), ctx.mb(m, m1_1))
            )
            rhs = ctx.am(a, inner)
            if lhs != rhs:
                okg, witg = False, {"a_index": i, "m_index": p}
                break
        if not okg:
            break
    rep.add("diag_a_unit_reduction_m", okg, witg)

    okh = True
    with_h = None
    for i in range(dA):
        a = abasis(i)
        da = dec.apply("A", "A", a)
        ma = dec.apply("A", "B", a)
        for q in range(dN):
            n = nbasis(q)
            inner = tuple(
                rg.sub(x, y)
                for x, y in zip(ctx.na(n, d1_1), ctx.bn(m1_1, n))
            )
            lhs = ctx.na(inner, a)
            rhs = tuple(
                rg.sub(x, y) for x, y in zip(ctx.na(n, da), ctx.bn(ma, n))
            )
            if lhs != rhs:
                okh, with_h = False, {"a_index": i, "n_index": q}
                break
        if not okh:
            break
    rep.add("diag_a_unit_reduction_n", okh, with_h)

    oki = True
    witi = None
    for j in range(dB):
        b = bbasis(j)
        db = dec.apply("B", "A", b)
        mb4 = dec.apply("B", "B", b)
        for p in range(dM):
            m = mbasis(p)
            lhs = tuple(
                rg.sub(x, y) for x, y in zip(ctx.am(db, m), ctx.mb(m, mb4))
            )
            inner = tuple(
                rg.sub(x, y)
                for x, y in zip(ctx.mb(m, m1_1), ctx.am(d1_1, m))
            )
            rhs = ctx.mb(inner, b)
            if lhs != rhs:
                oki, witi = False, {"b_index": j, "m_index": p}
                break
        if not oki:
            break
    rep.add("diag_b_unit_reduction_m", oki, witi)

    okj = True
    witj = None
    for j in range(dB):
        b = bbasis(j)
        db = dec.apply("B", "A", b)
        mb4 = dec.apply("B", "B", b)
        for q in range(dN):
            n = nbasis(q)
            lhs = tuple(
                rg.sub(x, y) for x, y in zip(ctx.bn(mb4, n), ctx.na(n, db))
            )
            inner = tuple(
                rg.sub(x, y)
                for x, y in zip(ctx.na(n, d1_1), ctx.bn(m1_1, n))
            )
            rhs = ctx.bn(b, inner)
            if lhs != rhs:
                okj, witj = False, {"b_index": j, "n_index": q}
                break
        if not okj:
            break
    rep.add("diag_b_unit_reduction_n", okj, witj)
    return rep


def _pair_diff(ctx, dec, m, m2):
    rg = ctx.ring
    a = ctx.am(dec.apply("M", "A", m), m2)
    b = ctx.mb(m2, dec.apply("M", "B", m))
    return tuple(rg.sub(x, y) for x, y in zip(a, b))


def _pair_diff_n(ctx, dec, n, n2):
    rg = ctx.ring
    a = ctx.na(n2, dec.apply("N", "A", n))
    b = ctx.bn(dec.apply("N", "B", n), n2)
    return tuple(rg.sub(x, y) for x, y in zip(a, b))


def _pure_quadratic_split(rg, dim, bilinear):
    """Split check for an identity B(m, m) = 0 with B bilinear (char 0)."""

    def run():
        basis = [
            tuple(rg.one if r == p else rg.zero for r in range(dim))
            for p in range(dim)
        ]
        for p in range(dim):
            for q in range(p, dim):
                s = tuple(
                    rg.add(x, y)
                    for x, y in zip(
                        bilinear(basis[p], basis[q]),
                        bilinear(basis[q], basis[p]),
                    )
                )
                if any(c != rg.zero for c in s):
                    return False, {"basis_pair": (p, q)}
        return True, None

    return run


def has_scalar_engel_centers(G, k):
    """Whether both order-k centers collapse to the scalar multiples of the
    unit -- the easy sufficient condition for properness of every
    k-commuting map."""
    if not G.ring.enumerable and k >= 2:
        raise NotEnumerable("order-k centers need a finite ring for k >= 2")
    ZA = G.ctx.A.engel_center(k)
    ZB = G.ctx.B.engel_center(k)
    return ZA.equals(scalar_multiples_of(G.ctx.A)) and ZB.equals(
        scalar_multiples_of(G.ctx.B)
    )
