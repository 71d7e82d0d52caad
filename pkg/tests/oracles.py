"""Brute-force oracles that never touch the code paths they check."""

from mcmcat.linalg import QQ, Matrix, hstack, rank


def shift_matrix(n):
    """Nilpotent Jordan block: e_i -> e_{i+1}."""
    return Matrix([[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)], rows=n, cols=n)


def jordan_type_of_quotient(T, U):
    """Jordan block sizes of the nilpotent T acting on k^n / span(U).

    Blocks of size >= s number rank(T^(s-1)) - rank(T^s) on the quotient, and
    rank(T^s on W/U) = rank([T^s | U]) - rank(U).
    """
    n = T.rows
    ru = rank(U) if U.cols else 0
    ranks = []
    P = Matrix.identity(n)
    for s in range(n + 2):
        ranks.append(rank(hstack(P, U)) - ru if U.cols else rank(P))
        P = T @ P
    sizes = []
    for s in range(1, n + 2):
        at_least = ranks[s - 1] - ranks[s]
        at_least_next = ranks[s] - ranks[s + 1] if s + 1 < len(ranks) else 0
        sizes += [s] * (at_least - at_least_next)
    return sorted(sizes)


def truncated_module_type(rel_coeffs, g, q, N):
    """Jordan type of t on coker(P) / t^N for a g x q matrix of coefficient lists."""
    n = g * N
    T = Matrix.zeros(n, n).tolist()
    for blk in range(g):
        for i in range(N - 1):
            T[blk * N + i + 1][blk * N + i] = 1
    T = Matrix(T, rows=n, cols=n)
    cols = []
    for j in range(q):
        for l in range(N):
            v = [0] * n
            for i in range(g):
                for d, c in enumerate(rel_coeffs[i][j]):
                    if d + l < N and c:
                        v[i * N + d + l] += c
            cols.append(v)
    U = Matrix.from_columns(cols, n) if cols else Matrix.zeros(n, 0)
    return jordan_type_of_quotient(T, U)


def ext1_cyclic_by_brute_force(a, b):
    """Jordan type of coker(t^a : V/t^b -> V/t^b) from 0 -> V -t^a-> V -> V/t^a -> 0."""
    T = shift_matrix(b)
    Ta = Matrix.identity(b)
    for _ in range(a):
        Ta = T @ Ta
    return jordan_type_of_quotient(T, Ta)


def hom_dims_by_commuting(act_m, act_n):
    """dim of {f : f A_g = B_g f for all g} by an unstructured linear system."""
    dm, dn = act_m[0].rows, act_n[0].rows
    eqs = []
    # unknown f[i][j] at index i*dm + j
    for A, B in zip(act_m, act_n):
        for i in range(dn):
            for j in range(dm):
                row = [0] * (dm * dn)
                for k in range(dm):
                    row[i * dm + k] += A[k, j]
                for k in range(dn):
                    row[k * dm + j] -= B[i, k]
                eqs.append(row)
    if not eqs:
        return dm * dn
    return dm * dn - rank(Matrix(eqs, QQ, rows=len(eqs), cols=dm * dn))


def jordan_type(act):
    """Jordan block sizes of a nilpotent matrix."""
    return jordan_type_of_quotient(act, Matrix.zeros(act.rows, 0))


def endomorphism_algebra(summands):
    """End(X_1 + ... + X_n) built from the direct sum's own hom space.

    Independent of any composition tensor: the basis is a kernel basis of the
    commuting system for the big module, products are matrix products, and
    the idempotents are the block projections.
    """
    from mcmcat.algebra import FdAlgebra
    from mcmcat.linalg import Subspace, kernel_basis, kronecker, vstack

    big = summands[0].direct_sum(*summands[1:]) if len(summands) > 1 else summands[0]
    d = big.dim
    I = Matrix.identity(d)
    eqs = [kronecker(A.T, I) - kronecker(I, A) for A in big.acts]
    K = kernel_basis(vstack(*eqs)) if eqs else Matrix.identity(d * d)
    sub = Subspace(K)

    def vec(f):
        return [f[i, j] for j in range(d) for i in range(d)]

    def unvec(v):
        return Matrix([[v[j * d + i] for j in range(d)] for i in range(d)], rows=d, cols=d)

    basis = [unvec(v) for v in sub.basis.columns()]
    n = len(basis)
    table = [[dict(enumerate(sub.coords(vec(a @ b)))) for b in basis] for a in basis]
    unit = sub.coords(vec(I))
    idems, off = [], 0
    for x in summands:
        e = [[1 if i == j and off <= i < off + x.dim else 0 for j in range(d)] for i in range(d)]
        idems.append(sub.coords(vec(Matrix(e, rows=d, cols=d))))
        off += x.dim
    return FdAlgebra(n, table, unit, idems)
