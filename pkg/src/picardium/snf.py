"""Smith normal form over the integers and linear systems over Z/N."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

__all__ = ["smith_normal_form", "solve_mod", "in_image_mod", "quotient_invariants", "invariant_factors"]


def smith_normal_form(M):
    """Return (U, D, V, Vinv) with U*M*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        # pivot of smallest absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        done = False
                        if abs(A[i][t]) < abs(A[t][t]):
                            swap_rows(t, i)
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        done = False
                        if abs(A[t][j]) < abs(A[t][t]):
                            swap_cols(t, j)
            if not done:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V, Vi


def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(M) -> list[int]:
    if not M or not M[0]:
        return []
    _, D, _, _ = smith_normal_form(M)
    return [d for d in _diag(D) if d]


def _prepare(M, b, N):
    U, D, V, _ = smith_normal_form(M)
    c = [sum(u * x for u, x in zip(row, b)) % N for row in U]
    return U, D, V, c


def _choices(D, c, N, n):
    diag = _diag(D)
    choices = []
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d:
            g = math.gcd(d, N)
            if c[i] % g:
                return None
            base = (c[i] // g) * pow(d // g, -1, N // g) % (N // g) if N // g > 1 else 0
            choices.append([base + t * (N // g) for t in range(g)])
        else:
            choices.append(range(N))
    for i in range(len(c)):
        d = diag[i] if i < len(diag) else 0
        if not d and c[i] % N:
            return None
    return choices


def in_image_mod(M, b, N) -> bool:
    n = len(M[0]) if M else 0
    _, D, _, c = _prepare(M, b, N)
    return _choices(D, c, N, n) is not None


def solve_mod(M, b, N) -> list[tuple]:
    """All x in (Z/N)^n with M x = b mod N, sorted lexicographically."""
    n = len(M[0]) if M else 0
    _, D, V, c = _prepare(M, b, N)
    ch = _choices(D, c, N, n)
    if ch is None:
        return []
    out = []
    for y in itertools.product(*ch):
        out.append(tuple(sum(V[i][j] * y[j] for j in range(n)) % N for i in range(n)))
    out.sort()
    return out


def _solve_rational(B, rhs_cols):
    """Solve B X = R over Q for square invertible B; columns of R given as lists."""
    k = len(B)
    aug = [[Fraction(x) for x in B[i]] + [Fraction(col[i]) for col in rhs_cols] for i in range(k)]
    for c in range(k):
        p = next(r for r in range(c, k) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(k):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [[aug[i][k + j] for i in range(k)] for j in range(len(rhs_cols))]


def quotient_invariants(W, L) -> list[int]:
    """Invariant factors (> 1) of the lattice quotient <W> / <L>.

    W and L are k x r and k x s integer matrices whose columns generate full
    rank lattices with <L> contained in <W>.
    """
    k = len(W)
    U, D, V, _ = smith_normal_form(W)
    # basis of <W>: columns U^{-1} D restricted to the nonzero diagonal
    Uinv = _solve_rational(U, [[int(i == j) for i in range(k)] for j in range(k)])
    Uinv = [[Uinv[j][i] for j in range(k)] for i in range(k)]  # columns back to rows
    diag = _diag(D)
    if len([d for d in diag if d]) != k:
        raise ValueError("generating set does not span a full-rank lattice")
    B = [[Uinv[i][j] * diag[j] for j in range(k)] for i in range(k)]
    cols = [[L[i][j] for i in range(k)] for j in range(len(L[0]))]
    coords = _solve_rational(B, cols)
    C = []
    for i in range(k):
        row = []
        for col in coords:
            x = col[i]
            if x.denominator != 1:
                raise ValueError("sublattice is not contained in the lattice")
            row.append(int(x))
        C.append(row)
    return [d for d in invariant_factors(C) if d != 1]
