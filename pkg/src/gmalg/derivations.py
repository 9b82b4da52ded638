"""Derivations of a generalized matrix algebra: the Leibniz test, the
linear space of all derivations, the structural normal form on a 2x2
block algebra, and the vanishing of k-commuting derivations."""

from collections import namedtuple

from . import linalg
from .algebra import Submodule
from .errors import (
    DimensionMismatch,
    NotDerivation,
    NotEnumerable,
    TheoremViolation,
    TwoTorsion,
)
from .maps import LinMap, MapSpace, commuting_space
from .morita import BLOCKS
from .report import Report


def is_derivation(G, theta):
    """(True, None) if theta(xy) = theta(x)y + x theta(y), else a failing
    basis pair.  The law is bilinear, so basis pairs suffice."""
    alg = getattr(G, "algebra", G)
    if theta.dim != alg.dim:
        raise DimensionMismatch("map dimension does not match the algebra")
    for i in range(alg.dim):
        ei = alg.basis_vector(i)
        ti = theta.apply(ei)
        for j in range(alg.dim):
            ej = alg.basis_vector(j)
            lhs = theta.apply(alg.table[i][j])
            rhs = alg.add(alg.mul(ti, ej), alg.mul(ei, theta.apply(ej)))
            if lhs != rhs:
                return False, (i, j)
    return True, None


def adjoint_map(G, c):
    """The inner derivation x -> cx - xc."""
    alg = getattr(G, "algebra", G)
    cols = [
        alg.bracket(c, alg.basis_vector(j)) for j in range(alg.dim)
    ]
    return LinMap.from_columns(alg.ring, cols)


def _leibniz_rows(alg):
    """Constraint rows over the flattened unknowns theta[p][q] expressing
    theta(e_i e_j) - theta(e_i) e_j - e_i theta(e_j) = 0."""
    rg = alg.ring
    d = alg.dim
    L = [alg.left_mult_matrix(alg.basis_vector(i)) for i in range(d)]
    R = [alg.right_mult_matrix(alg.basis_vector(i)) for i in range(d)]
    rows = []
    for i in range(d):
        for j in range(d):
            prod = alg.table[i][j]
            for r in range(d):
                row = [rg.zero] * (d * d)
                for p in range(d):
                    # theta(e_i e_j) contributes prod[p] * theta[r][p]
                    row[r * d + p] = rg.add(row[r * d + p], prod[p])
                    # -theta(e_i) e_j: -(R_j theta e_i)[r]
                    row[p * d + i] = rg.sub(row[p * d + i], R[j][r][p])
                    # -e_i theta(e_j): -(L_i theta e_j)[r]
                    row[p * d + j] = rg.sub(row[p * d + j], L[i][r][p])
                rows.append(row)
    return rows


def derivation_space(G):
    """All maps satisfying the Leibniz law, as a MapSpace."""
    alg = getattr(G, "algebra", G)
    d = alg.dim
    gens = linalg.nullspace(alg.ring, _leibniz_rows(alg), d * d)
    return MapSpace(alg, Submodule(alg.ring, d * d, gens))


DerivationForm = namedtuple(
    "DerivationForm",
    ["inner_m", "inner_n", "diag_a", "m_to_m", "n_to_n", "diag_b"],
)


def verify_derivation_form(G, theta):
    """Extract the normal form of a derivation on the 2x2 block algebra
    and verify it: the off-diagonal unit images (inner_m, inner_n) drive
    an inner part, the four retained components satisfy the product rules
    coupling them, and the reassembled map equals the original exactly."""
    ok, bad = is_derivation(G, theta)
    if not ok:
        raise NotDerivation(f"Leibniz law fails on basis pair {bad}")
    ctx = G.ctx
    rg = G.ring
    alg = G.algebra
    dA, dM, dN, dB = G.dims
    rep = Report("derivation normal form")

    e_a = G.embed("A", ctx.A.unit)
    img = theta.apply(e_a)
    m0 = G.extract("M", img)
    n0 = G.extract("N", img)

    from .maps import decompose

    dec = decompose(G, theta)
    form = DerivationForm(
        m0,
        n0,
        dec.block("A", "A"),
        dec.block("M", "M"),
        dec.block("N", "N"),
        dec.block("B", "B"),
    )

    def mbasis(p):
        return tuple(rg.one if r == p else rg.zero for r in range(dM))

    def nbasis(q):
        return tuple(rg.one if r == q else rg.zero for r in range(dN))

    # reassembly on every basis element of G
    ok_re = True
    wit_re = None
    for j in range(G.dim):
        src, loc = G.block_of_index(j)
        ej = alg.basis_vector(j)
        a = G.extract("A", ej)
        m = G.extract("M", ej)
        n = G.extract("N", ej)
        b = G.extract("B", ej)
        top = ctx.A.sub(
            dec.apply("A", "A", a),
            ctx.A.add(ctx.pair_mn(m, n0), ctx.pair_mn(m0, n)),
        )
        mid = tuple(
            rg.add(x, y)
            for x, y in zip(
                tuple(
                    rg.sub(u, v)
                    for u, v in zip(ctx.am(a, m0), ctx.mb(m0, b))
                ),
                dec.apply("M", "M", m),
            )
        )
        nid = tuple(
            rg.add(x, y)
            for x, y in zip(
                tuple(
                    rg.sub(u, v)
                    for u, v in zip(ctx.na(n0, a), ctx.bn(b, n0))
                ),
                dec.apply("N", "N", n),
            )
        )
        bot = ctx.B.add(
            ctx.B.add(ctx.pair_nm(n0, m), ctx.pair_nm(n, m0)),
            dec.apply("B", "B", b),
        )
        expect = list(G.embed("A", top))
        for r, c in enumerate(mid):
            expect[G.offsets["M"] + r] = c
        for r, c in enumerate(nid):
            expect[G.offsets["N"] + r] = c
        for r, c in enumerate(bot):
            expect[G.offsets["B"] + r] = rg.add(
                expect[G.offsets["B"] + r], c
            )
        if theta.apply(ej) != tuple(expect):
            ok_re, wit_re = False, {"basis_index": j}
            break
    rep.add("reassembly", ok_re, wit_re)

    # the two diagonal components are themselves derivations
    d1map = LinMap(rg, dec.block("A", "A"))
    okda, witda = is_derivation(ctx.A, d1map)
    rep.add("diag_a_leibniz", okda, witda)
    m4map = LinMap(rg, dec.block("B", "B"))
    okdb, witdb = is_derivation(ctx.B, m4map)
    rep.add("diag_b_leibniz", okdb, witdb)

    # product rules coupling the retained components, on basis tuples
    ok1 = True
    wit1 = None
    for p in range(dM):
        for q in range(dN):
            lhs = dec.apply("A", "A", ctx.pair_mn(mbasis(p), nbasis(q)))
            rhs = ctx.A.add(
                ctx.pair_mn(dec.apply("M", "M", mbasis(p)), nbasis(q)),
                ctx.pair_mn(mbasis(p), dec.apply("N", "N", nbasis(q))),
            )
            if lhs != rhs:
                ok1, wit1 = False, {"m_index": p, "n_index": q}
                break
        if not ok1:
            break
    rep.add("diag_a_of_pairing", ok1, wit1)

    ok2 = True
    wit2 = None
    for q in range(dN):
        for p in range(dM):
            lhs = dec.apply("B", "B", ctx.pair_nm(nbasis(q), mbasis(p)))
            rhs = ctx.B.add(
                ctx.pair_nm(dec.apply("N", "N", nbasis(q)), mbasis(p)),
                ctx.pair_nm(nbasis(q), dec.apply("M", "M", mbasis(p))),
            )
            if lhs != rhs:
                ok2, wit2 = False, {"n_index": q, "m_index": p}
                break
        if not ok2:
            break
    rep.add("diag_b_of_pairing", ok2, wit2)

    ok3 = True
    wit3 = None
    for i in range(ctx.A.dim):
        a = ctx.A.basis_vector(i)
        for p in range(dM):
            m = mbasis(p)
            lhs = dec.apply("M", "M", ctx.am(a, m))
            rhs = tuple(
                rg.add(x, y)
                for x, y in zip(
                    ctx.am(a, dec.apply("M", "M", m)),
                    ctx.am(dec.apply("A", "A", a), m),
                )
            )
            if lhs != rhs:
                ok3, wit3 = False, {"a_index": i, "m_index": p}
                break
        if not ok3:
            break
    rep.add("m_to_m_left_rule", ok3, wit3)

    ok4 = True
    wit4 = None
    for p in range(dM):
        m = mbasis(p)
        for j in range(ctx.B.dim):
            b = ctx.B.basis_vector(j)
            lhs = dec.apply("M", "M", ctx.mb(m, b))
            rhs = tuple(
                rg.add(x, y)
                for x, y in zip(
                    ctx.mb(dec.apply("M", "M", m), b),
                    ctx.mb(m, dec.apply("B", "B", b)),
                )
            )
            if lhs != rhs:
                ok4, wit4 = False, {"m_index": p, "b_index": j}
                break
        if not ok4:
            break
    rep.add("m_to_m_right_rule", ok4, wit4)

    ok5 = True
    wit5 = None
    for j in range(ctx.B.dim):
        b = ctx.B.basis_vector(j)
        for q in range(dN):
            n = nbasis(q)
            lhs = dec.apply("N", "N", ctx.bn(b, n))
            rhs = tuple(
                rg.add(x, y)
                for x, y in zip(
                    ctx.bn(b, dec.apply("N", "N", n)),
                    ctx.bn(dec.apply("B", "B", b), n),
                )
            )
            if lhs != rhs:
                ok5, wit5 = False, {"b_index": j, "n_index": q}
                break
        if not ok5:
            break
    rep.add("n_to_n_left_rule", ok5, wit5)

    ok6 = True
    wit6 = None
    for q in range(dN):
        n = nbasis(q)
        for i in range(ctx.A.dim):
            a = ctx.A.basis_vector(i)
            lhs = dec.apply("N", "N", ctx.na(n, a))
            rhs = tuple(
                rg.add(x, y)
                for x, y in zip(
                    ctx.na(dec.apply("N", "N", n), a),
                    ctx.na(n, dec.apply("A", "A", a)),
                )
            )
            if lhs != rhs:
                ok6, wit6 = False, {"n_index": q, "a_index": i}
                break
        if not ok6:
            break
    rep.add("n_to_n_right_rule", ok6, wit6)

    if not rep.all_pass:
        raise TheoremViolation(
            "derivation normal form failed for a genuine derivation",
            rep.failures(),
        )
    return rep, form


def verify_commuting_derivations_vanish(G, k):
    """True iff the only derivation that is also k-commuting is zero.

    A nonzero member of the intersection contradicts the vanishing theorem
    and is raised as TheoremViolation with the witness attached."""
    rg = G.ring
    if not rg.enumerable:
        raise NotEnumerable("the intersection check enumerates the algebra")
    if not rg.is_two_torsion_free():
        raise TwoTorsion("the vanishing theorem needs 2x = 0 => x = 0")
    G.require_faithful()
    dspace = derivation_space(G)
    cspace = commuting_space(G, k)
    d = G.dim
    # joint nullspace: members of the derivation space (in its generator
    # coordinates) whose flat vector also lies in the commuting space
    dgens = dspace.space.gens
    if not dgens:
        return True
    inter = _intersect(rg, d * d, dgens, cspace.space.gens)
    for v in inter:
        if any(c != rg.zero for c in v):
            raise TheoremViolation(
                "nonzero k-commuting derivation found",
                LinMap.from_flat(rg, d, v),
            )
    return True


def _intersect(ring, dim, gens_a, gens_b):
    """Generators of span(gens_a) intersected with span(gens_b)."""
    na, nb = len(gens_a), len(gens_b)
    if na == 0 or nb == 0:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0; the a-part of each kernel
    # generator spans the intersection
    rows = [
        [gens_a[i][r] for i in range(na)]
        + [ring.neg(gens_b[j][r]) for j in range(nb)]
        for r in range(dim)
    ]
    out = []
    for kvec in linalg.nullspace(ring, rows, na + nb):
        v = [ring.zero] * dim
        for c, g in zip(kvec[:na], gens_a):
            if c != ring.zero:
                for r, gr in enumerate(g):
                    v[r] = ring.add(v[r], ring.mul(c, gr))
        out.append(tuple(v))
    return out
