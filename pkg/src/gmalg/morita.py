"""Morita contexts and the order-2 generalized matrix algebra they generate.

A context is given by raw action/pairing tensors over basis elements; all
axioms are checked at load time rather than trusted, since every theorem
downstream assumes them.  The global basis order of the built algebra is
fixed as blocks A, M, N, B.
"""

from collections import namedtuple

from . import linalg
from .algebra import Algebra, Submodule
from .errors import (
    DimensionMismatch,
    InvalidContext,
    NotFaithful,
    TheoremViolation,
)

Violation = namedtuple("Violation", ["axiom", "witness"])

BLOCKS = ("A", "M", "N", "B")


def _bilinear(ring, x, y, tensor, out_dim):
    """Sum_{p,q} x_p * y_q * tensor[p][q]."""
    out = [ring.zero] * out_dim
    for p, xp in enumerate(x):
        if xp == ring.zero:
            continue
        row = tensor[p]
        for q, yq in enumerate(y):
            if yq == ring.zero:
                continue
            c = ring.mul(xp, yq)
            for r, tr in enumerate(row[q]):
                if tr != ring.zero:
                    out[r] = ring.add(out[r], ring.mul(c, tr))
    return tuple(out)


class Bimodule:
    """A finite free module with a left action of one algebra and a right
    action of another, both given as basis tensors."""

    def __init__(self, ring, dim, left, right, left_dim, right_dim):
        self.ring = ring
        self.dim = dim
        if len(left) != left_dim or any(len(row) != dim for row in left):
            raise DimensionMismatch("left action tensor has wrong shape")
        if len(right) != dim or any(len(row) != right_dim for row in right):
            raise DimensionMismatch("right action tensor has wrong shape")
        self.left = tuple(
            tuple(tuple(ring.coerce(c) for c in v) for v in row) for row in left
        )
        self.right = tuple(
            tuple(tuple(ring.coerce(c) for c in v) for v in row) for row in right
        )
        for row in self.left:
            for v in row:
                if len(v) != dim:
                    raise DimensionMismatch("left action value has wrong length")
        for row in self.right:
            for v in row:
                if len(v) != dim:
                    raise DimensionMismatch("right action value has wrong length")

    def act_left(self, a, m):
        return _bilinear(self.ring, a, m, self.left, self.dim)

    def act_right(self, m, b):
        # tensor is indexed module-basis first
        out = [self.ring.zero] * self.dim
        rg = self.ring
        for p, mp in enumerate(m):
            if mp == rg.zero:
                continue
            for j, bj in enumerate(b):
                if bj == rg.zero:
                    continue
                c = rg.mul(mp, bj)
                for r, tr in enumerate(self.right[p][j]):
                    if tr != rg.zero:
                        out[r] = rg.add(out[r], rg.mul(c, tr))
        return tuple(out)


class MoritaContext:
    """(A, B, M, N, pairing M x N -> A, pairing N x M -> B)."""

    def __init__(self, A, B, M, N, phi, psi):
        if A.ring != B.ring:
            raise DimensionMismatch("A and B must share a coefficient ring")
        self.ring = A.ring
        self.A = A
        self.B = B
        self.M = M
        self.N = N
        rg = self.ring
        self.phi = tuple(
            tuple(tuple(rg.coerce(c) for c in v) for v in row) for row in phi
        )
        self.psi = tuple(
            tuple(tuple(rg.coerce(c) for c in v) for v in row) for row in psi
        )
        if len(self.phi) != M.dim or any(len(r) != N.dim for r in self.phi):
            raise DimensionMismatch("phi tensor has wrong shape")
        if len(self.psi) != N.dim or any(len(r) != M.dim for r in self.psi):
            raise DimensionMismatch("psi tensor has wrong shape")
        for row in self.phi:
            for v in row:
                if len(v) != A.dim:
                    raise DimensionMismatch("phi values must live in A")
        for row in self.psi:
            for v in row:
                if len(v) != B.dim:
                    raise DimensionMismatch("psi values must live in B")

    # element-level operations
    def pair_mn(self, m, n):
        return _bilinear(self.ring, m, n, self.phi, self.A.dim)

    def pair_nm(self, n, m):
        return _bilinear(self.ring, n, m, self.psi, self.B.dim)

    def am(self, a, m):
        return self.M.act_left(a, m)

    def mb(self, m, b):
        return self.M.act_right(m, b)

    def bn(self, b, n):
        return self.N.act_left(b, n)

    def na(self, n, a):
        return self.N.act_right(n, a)


def validate_context(ctx):
    """Every violated axiom with a witnessing basis tuple; empty iff valid."""
    out = []
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    for name, alg in (("algebra_A", A), ("algebra_B", B)):
        for kind, wit in alg.structure_violations():
            out.append(Violation(f"{name}_{kind}", wit))
    if M.dim == 0 and N.dim == 0:
        out.append(Violation("modules_both_zero", None))

    def basis(alg_dim):
        return range(alg_dim)

    eA = [A.basis_vector(i) for i in range(A.dim)]
    eB = [B.basis_vector(j) for j in range(B.dim)]
    em = [
        tuple(ctx.ring.one if r == p else ctx.ring.zero for r in range(M.dim))
        for p in range(M.dim)
    ]
    en = [
        tuple(ctx.ring.one if r == q else ctx.ring.zero for r in range(N.dim))
        for q in range(N.dim)
    ]

    for p in basis(M.dim):
        if ctx.am(A.unit, em[p]) != em[p]:
            out.append(Violation("m_left_unit", p))
        if ctx.mb(em[p], B.unit) != em[p]:
            out.append(Violation("m_right_unit", p))
    for q in basis(N.dim):
        if ctx.bn(B.unit, en[q]) != en[q]:
            out.append(Violation("n_left_unit", q))
        if ctx.na(en[q], A.unit) != en[q]:
            out.append(Violation("n_right_unit", q))

    for i in basis(A.dim):
        for j in basis(A.dim):
            prod = A.table[i][j]
            for p in basis(M.dim):
                if ctx.am(prod, em[p]) != ctx.am(eA[i], ctx.am(eA[j], em[p])):
                    out.append(Violation("m_left_associativity", (i, j, p)))
            for q in basis(N.dim):
                if ctx.na(en[q], prod) != ctx.na(ctx.na(en[q], eA[i]), eA[j]):
                    out.append(Violation("n_right_associativity", (q, i, j)))
    for i in basis(B.dim):
        for j in basis(B.dim):
            prod = B.table[i][j]
            for p in basis(M.dim):
                if ctx.mb(em[p], prod) != ctx.mb(ctx.mb(em[p], eB[i]), eB[j]):
                    out.append(Violation("m_right_associativity", (p, i, j)))
            for q in basis(N.dim):
                if ctx.bn(prod, en[q]) != ctx.bn(eB[i], ctx.bn(eB[j], en[q])):
                    out.append(Violation("n_left_associativity", (i, j, q)))
    for i in basis(A.dim):
        for p in basis(M.dim):
            for j in basis(B.dim):
                lhs = ctx.mb(ctx.am(eA[i], em[p]), eB[j])
                rhs = ctx.am(eA[i], ctx.mb(em[p], eB[j]))
                if lhs != rhs:
                    out.append(Violation("m_mixed_associativity", (i, p, j)))
    for j in basis(B.dim):
        for q in basis(N.dim):
            for i in basis(A.dim):
                lhs = ctx.na(ctx.bn(eB[j], en[q]), eA[i])
                rhs = ctx.bn(eB[j], ctx.na(en[q], eA[i]))
                if lhs != rhs:
                    out.append(Violation("n_mixed_associativity", (j, q, i)))

    for p in basis(M.dim):
        for q in basis(N.dim):
            for i in basis(A.dim):
                if ctx.pair_mn(ctx.am(eA[i], em[p]), en[q]) != A.mul(
                    eA[i], ctx.pair_mn(em[p], en[q])
                ):
                    out.append(Violation("pairing_mn_left_linear", (i, p, q)))
                if ctx.pair_mn(em[p], ctx.na(en[q], eA[i])) != A.mul(
                    ctx.pair_mn(em[p], en[q]), eA[i]
                ):
                    out.append(Violation("pairing_mn_right_linear", (p, q, i)))
            for j in basis(B.dim):
                if ctx.pair_mn(ctx.mb(em[p], eB[j]), en[q]) != ctx.pair_mn(
                    em[p], ctx.bn(eB[j], en[q])
                ):
                    out.append(Violation("pairing_mn_balanced", (p, j, q)))
    for q in basis(N.dim):
        for p in basis(M.dim):
            for j in basis(B.dim):
                if ctx.pair_nm(ctx.bn(eB[j], en[q]), em[p]) != B.mul(
                    eB[j], ctx.pair_nm(en[q], em[p])
                ):
                    out.append(Violation("pairing_nm_left_linear", (j, q, p)))
                if ctx.pair_nm(en[q], ctx.mb(em[p], eB[j])) != B.mul(
                    ctx.pair_nm(en[q], em[p]), eB[j]
                ):
                    out.append(Violation("pairing_nm_right_linear", (q, p, j)))
            for i in basis(A.dim):
                if ctx.pair_nm(ctx.na(en[q], eA[i]), em[p]) != ctx.pair_nm(
                    en[q], ctx.am(eA[i], em[p])
                ):
                    out.append(Violation("pairing_nm_balanced", (q, i, p)))

    # the two commuting diagrams
    for p in basis(M.dim):
        for q in basis(N.dim):
            for r in basis(M.dim):
                lhs = ctx.am(ctx.pair_mn(em[p], en[q]), em[r])
                rhs = ctx.mb(em[p], ctx.pair_nm(en[q], em[r]))
                if lhs != rhs:
                    out.append(Violation("diagram_mnm", (p, q, r)))
    for q in basis(N.dim):
        for p in basis(M.dim):
            for r in basis(N.dim):
                lhs = ctx.bn(ctx.pair_nm(en[q], em[p]), en[r])
                rhs = ctx.na(en[q], ctx.pair_mn(em[p], en[r]))
                if lhs != rhs:
                    out.append(Violation("diagram_nmn", (q, p, r)))
    return out


def check_faithful(ctx):
    """Faithfulness of M as a left A-module and as a right B-module."""
    rg = ctx.ring
    left_rows = []
    for p in range(ctx.M.dim):
        for c in range(ctx.M.dim):
            left_rows.append([ctx.M.left[i][p][c] for i in range(ctx.A.dim)])
    right_rows = []
    for p in range(ctx.M.dim):
        for c in range(ctx.M.dim):
            right_rows.append([ctx.M.right[p][j][c] for j in range(ctx.B.dim)])
    left_ok = (
        ctx.A.dim == 0
        or not linalg.nullspace(rg, left_rows, ctx.A.dim)
    )
    right_ok = (
        ctx.B.dim == 0
        or not linalg.nullspace(rg, right_rows, ctx.B.dim)
    )
    return {"left_faithful": left_ok, "right_faithful": right_ok}


class GMAlgebra:
    """The order-2 matrix-like algebra [A M; N B] with block bookkeeping."""

    def __init__(self, ctx, algebra):
        self.ctx = ctx
        self.algebra = algebra
        self.ring = ctx.ring
        self.dims = (ctx.A.dim, ctx.M.dim, ctx.N.dim, ctx.B.dim)
        dA, dM, dN, dB = self.dims
        self.offsets = {"A": 0, "M": dA, "N": dA + dM, "B": dA + dM + dN}
        self._gma_center = None

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def A(self):
        return self.ctx.A

    @property
    def B(self):
        return self.ctx.B

    def block_range(self, name):
        off = self.offsets[name]
        size = self.dims[BLOCKS.index(name)]
        return range(off, off + size)

    def block_of_index(self, i):
        """(block name, local index) of a global basis index."""
        for b, name in enumerate(BLOCKS):
            off = self.offsets[name]
            if off <= i < off + self.dims[b]:
                return name, i - off
        raise DimensionMismatch(f"index {i} out of range")

    def embed(self, name, v):
        out = [self.ring.zero] * self.dim
        off = self.offsets[name]
        for r, c in enumerate(v):
            out[off + r] = self.ring.coerce(c)
        return tuple(out)

    def extract(self, name, v):
        return tuple(v[i] for i in self.block_range(name))

    def embed_diag(self, a, b):
        out = list(self.embed("A", a))
        off = self.offsets["B"]
        for r, c in enumerate(b):
            out[off + r] = self.ring.coerce(c)
        return tuple(out)

    def faithful(self):
        return check_faithful(self.ctx)

    def require_faithful(self):
        f = self.faithful()
        if not (f["left_faithful"] and f["right_faithful"]):
            raise NotFaithful(
                "M must be faithful as a left A-module and a right B-module"
            )

    # -- center machinery ---------------------------------------------------

    def _center_pair_rows(self, m0=None, n0=None):
        """Rows over unknowns (a | b) of a*m = m*b, n*a = b*n.

        With m0/n0 given, only those elements are used; otherwise every
        module basis element (equivalently, all of M and N, by linearity).
        """
        ctx = self.ctx
        rg = self.ring
        dA, dM, dN, dB = self.dims
        ms = (
            [m0]
            if m0 is not None
            else [
                tuple(rg.one if r == p else rg.zero for r in range(dM))
                for p in range(dM)
            ]
        )
        ns = (
            [n0]
            if n0 is not None
            else [
                tuple(rg.one if r == q else rg.zero for r in range(dN))
                for q in range(dN)
            ]
        )
        rows = []
        eA = [ctx.A.basis_vector(i) for i in range(dA)]
        eB = [ctx.B.basis_vector(j) for j in range(dB)]
        for m in ms:
            acols = [ctx.am(a, m) for a in eA]
            bcols = [ctx.mb(m, b) for b in eB]
            for c in range(dM):
                rows.append(
                    [acols[i][c] for i in range(dA)]
                    + [rg.neg(bcols[j][c]) for j in range(dB)]
                )
        for n in ns:
            acols = [ctx.na(n, a) for a in eA]
            bcols = [ctx.bn(b, n) for b in eB]
            for c in range(dN):
                rows.append(
                    [acols[i][c] for i in range(dA)]
                    + [rg.neg(bcols[j][c]) for j in range(dB)]
                )
        return rows

    def gma_center(self):
        """{diag(a, b) : a*m = m*b and n*a = b*n for all m, n}.

        When M is faithful both ways this coincides with the center of the
        underlying algebra.
        """
        if self._gma_center is None:
            dA, dB = self.dims[0], self.dims[3]
            gens = linalg.nullspace(self.ring, self._center_pair_rows(), dA + dB)
            self._gma_center = Submodule(
                self.ring,
                self.dim,
                [self.embed_diag(g[:dA], g[dA:]) for g in gens],
            )
        return self._gma_center

    def center_projections(self):
        """(image of the center in A, image of the center in B)."""
        z = self.gma_center()
        return (
            z.project(list(self.block_range("A"))),
            z.project(list(self.block_range("B"))),
        )

    def phi_apply(self, a):
        """The unique b with diag(a, b) central; needs a in the A-image."""
        dA, dB = self.dims[0], self.dims[3]
        rows = self._center_pair_rows()
        full = [list(r) for r in rows]
        rhs = []
        mat = []
        for r in full:
            # move the known a to the right-hand side
            rhs.append(_dot(self.ring, r[:dA], a))
            mat.append([self.ring.neg(c) for c in r[dA:]])
        sol = linalg.solve_linear(self.ring, mat, rhs)
        if sol is None:
            raise TheoremViolation("no center partner for the given element", a)
        if sol.kernel:
            raise NotFaithful("center partner is not unique; M is not faithful")
        return tuple(sol.particular) if dB else ()

    def phi_inv_apply(self, b):
        dA = self.dims[0]
        rows = self._center_pair_rows()
        rhs = []
        mat = []
        for r in rows:
            rhs.append(_dot(self.ring, [self.ring.neg(c) for c in r[dA:]], b))
            mat.append(list(r[:dA]))
        sol = linalg.solve_linear(self.ring, mat, rhs)
        if sol is None:
            raise TheoremViolation("no center partner for the given element", b)
        if sol.kernel:
            raise NotFaithful("center partner is not unique; M is not faithful")
        return tuple(sol.particular) if dA else ()


def _dot(ring, coeffs, vec):
    out = ring.zero
    for c, v in zip(coeffs, vec):
        out = ring.add(out, ring.mul(c, v))
    return out


CenterIso = namedtuple("CenterIso", ["domain", "codomain", "mapping"])


def center_iso_phi(G):
    """The multiplicative bijection a -> b between the two diagonal images
    of the center, verified exhaustively over finite rings."""
    G.require_faithful()
    dom, cod = G.center_projections()
    mapping = []
    if G.ring.enumerable:
        for a in dom.elements():
            b = G.phi_apply(a)
            mapping.append((a, b))
        table = dict(mapping)
        images = set(table.values())
        if len(images) != len(table) or images != set(cod.elements()):
            raise TheoremViolation("center map is not a bijection")
        A = G.ctx.A
        B = G.ctx.B
        for a1, b1 in mapping:
            for a2, b2 in mapping:
                if table[A.mul(a1, a2)] != B.mul(b1, b2):
                    raise TheoremViolation(
                        "center map is not multiplicative", (a1, a2)
                    )
    else:
        for a in dom.gens:
            mapping.append((a, G.phi_apply(a)))
        img = Submodule(G.ring, G.dims[3], [b for _, b in mapping])
        if not img.equals(cod):
            raise TheoremViolation("center map image mismatch")
    return CenterIso(dom, cod, mapping)


def build_gma(ctx):
    """Assemble the generalized matrix algebra; the context must validate."""
    bad = validate_context(ctx)
    if bad:
        raise InvalidContext(f"context axioms violated: {bad[:5]}")
    rg = ctx.ring
    dA, dM, dN, dB = ctx.A.dim, ctx.M.dim, ctx.N.dim, ctx.B.dim
    dim = dA + dM + dN + dB
    offs = {"A": 0, "M": dA, "N": dA + dM, "B": dA + dM + dN}

    def emb(name, v):
        out = [rg.zero] * dim
        for r, c in enumerate(v):
            out[offs[name] + r] = c
        return tuple(out)

    zero = (rg.zero,) * dim
    table = [[zero for _ in range(dim)] for _ in range(dim)]

    for i in range(dA):
        for j in range(dA):
            table[offs["A"] + i][offs["A"] + j] = emb("A", ctx.A.table[i][j])
        for p in range(dM):
            table[offs["A"] + i][offs["M"] + p] = emb("M", ctx.M.left[i][p])
    for p in range(dM):
        for j in range(dB):
            table[offs["M"] + p][offs["B"] + j] = emb("M", ctx.M.right[p][j])
        for q in range(dN):
            table[offs["M"] + p][offs["N"] + q] = emb("A", ctx.phi[p][q])
    for q in range(dN):
        for p in range(dM):
            table[offs["N"] + q][offs["M"] + p] = emb("B", ctx.psi[q][p])
        for i in range(dA):
            table[offs["N"] + q][offs["A"] + i] = emb("N", ctx.N.right[q][i])
    for j in range(dB):
        for q in range(dN):
            table[offs["B"] + j][offs["N"] + q] = emb("N", ctx.N.left[j][q])
        for i in range(dB):
            table[offs["B"] + j][offs["B"] + i] = emb("B", ctx.B.table[j][i])

    labels = (
        [f"A:{s}" for s in ctx.A.labels]
        + [f"M:{p}" for p in range(dM)]
        + [f"N:{q}" for q in range(dN)]
        + [f"B:{s}" for s in ctx.B.labels]
    )
    unit = list(emb("A", ctx.A.unit))
    for r, c in enumerate(ctx.B.unit):
        unit[offs["B"] + r] = c
    alg = Algebra(rg, labels, table, unit).validate()
    return GMAlgebra(ctx, alg)
