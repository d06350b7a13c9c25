#!/usr/bin/env python3
"""Brute-force counts of 2x2 matrix conjugacy classes over F_p.

Prints, for p in (2, 3), the number of GL_2(F_p)-conjugacy classes of
2x2 matrices (isomorphism classes of 2-dimensional representations of the
Jordan quiver), the number of indecomposable classes, and the number of
absolutely indecomposable classes. A matrix is decomposable over a field
iff the plane splits as a sum of two invariant lines; it is absolutely
indecomposable iff it stays indecomposable over the algebraic closure,
i.e. iff it is a scalar plus a nonzero nilpotent.
"""
import itertools


def mat_mul(a, b, p):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % p for j in range(2))
        for i in range(2)
    )


def inverse(g, p):
    det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p
    inv = pow(det, p - 2, p)
    return ((g[1][1] * inv % p, -g[0][1] * inv % p), (-g[1][0] * inv % p, g[0][0] * inv % p))


def all_matrices(p):
    for a, b, c, d in itertools.product(range(p), repeat=4):
        yield ((a, b), (c, d))


def invariant_lines(m, p):
    lines = [(1, x) for x in range(p)] + [(0, 1)]
    out = []
    for v in lines:
        w = ((m[0][0] * v[0] + m[0][1] * v[1]) % p, (m[1][0] * v[0] + m[1][1] * v[1]) % p)
        if (w[0] * v[1] - w[1] * v[0]) % p == 0:
            out.append(v)
    return out


def is_scalar_plus_nilpotent(m, p):
    for lam in range(p):
        n = ((m[0][0] - lam) % p, m[0][1], m[1][0], (m[1][1] - lam) % p)
        if any(n) and (n[0] * n[3] - n[1] * n[2]) % p == 0 and (n[0] + n[3]) % p == 0:
            return True
    return False


def classes(p):
    gl = [g for g in all_matrices(p) if (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p]
    seen = set()
    reps = []
    for m in all_matrices(p):
        if m in seen:
            continue
        orbit = {mat_mul(mat_mul(g, m, p), inverse(g, p), p) for g in gl}
        seen |= orbit
        reps.append(m)
    return reps


def main():
    for p in (2, 3):
        reps = classes(p)
        indec = [m for m in reps if len(invariant_lines(m, p)) < 2]
        absolute = [m for m in reps if is_scalar_plus_nilpotent(m, p)]
        print(f"p={p} classes={len(reps)} indecomposable={len(indec)} absolutely_indecomposable={len(absolute)}")


if __name__ == "__main__":
    main()
