"""Exact linear algebra over Q and Z used by the subgroup and oracle modules."""
from fractions import Fraction
from math import gcd, lcm


def rref(rows):
    """Reduced row echelon form over Q. Returns (basis rows, pivot columns)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncol = len(rows[0])
    basis, pivots = [], []
    for c in range(ncol):
        piv = None
        for i, r in enumerate(rows):
            if r[c] != 0:
                piv = i
                break
        if piv is None:
            continue
        r = rows.pop(piv)
        inv = 1 / r[c]
        r = [x * inv for x in r]
        for j, other in enumerate(rows):
            if other[c] != 0:
                f = other[c]
                rows[j] = [a - f * b for a, b in zip(other, r)]
        for j, b in enumerate(basis):
            if b[c] != 0:
                f = b[c]
                basis[j] = [a - f * x for a, x in zip(b, r)]
        basis.append(r)
        pivots.append(c)
        rows = [x for x in rows if any(x)]
        if not rows:
            break
    return basis, pivots


def rank(rows):
    return len(rref(rows)[0])


def reduce_vector(basis, pivots, v):
    """Remainder of v after subtracting its component along an rref basis."""
    v = [Fraction(x) for x in v]
    for b, c in zip(basis, pivots):
        if v[c] != 0:
            f = v[c]
            v = [a - f * x for a, x in zip(v, b)]
    return v


def in_span(rows, v):
    basis, pivots = rref(rows)
    return not any(reduce_vector(basis, pivots, v))


def span_le(rows_a, rows_b):
    """Q-span(rows_a) is contained in Q-span(rows_b)."""
    basis, pivots = rref(rows_b)
    return all(not any(reduce_vector(basis, pivots, v)) for v in rows_a)


def span_eq(rows_a, rows_b):
    return span_le(rows_a, rows_b) and span_le(rows_b, rows_a)


def dim_sum(rows_a, rows_b):
    return rank(list(rows_a) + list(rows_b))


def dim_meet(rows_a, rows_b):
    return rank(rows_a) + rank(rows_b) - dim_sum(rows_a, rows_b)


def coordinates(basis, v):
    """Rational coefficients of v in terms of independent rows basis, or None."""
    if not basis:
        return [] if not any(v) else None
    n = len(basis)
    # solve c * B = v through the rref of the augmented transpose
    aug = [[Fraction(basis[i][j]) for i in range(n)] + [Fraction(v[j])] for j in range(len(v))]
    red, piv = rref(aug)
    if n in piv:
        return None
    c = [Fraction(0)] * n
    for r, pc in zip(red, piv):
        c[pc] = r[n]
    return c


# ----------------------------------------------------------- integer part

def hnf(rows):
    """Row Hermite normal form of an integer matrix; zero rows dropped."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        # gather a gcd into row r in column c using unimodular row ops
        for i in range(r + 1, m):
            if A[i][c] != 0:
                a, b = A[r][c], A[i][c]
                g, x, y = _egcd(a, b)
                ua, ub = a // g, b // g
                Ar, Ai = A[r], A[i]
                A[r] = [x * s + y * t for s, t in zip(Ar, Ai)]
                A[i] = [-ub * s + ua * t for s, t in zip(Ar, Ai)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        d = A[r][c]
        for i in range(r):
            q = A[i][c] // d
            if q:
                A[i] = [s - q * t for s, t in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r]]


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lattice_basis(rows):
    """Z-basis (rational rows) of the subgroup of Q^n generated by rational rows."""
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not rows:
        return []
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in rows]
    return [[Fraction(x, den) for x in r] for r in hnf(ints)]


def content(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def valuation(x, p):
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def denominator_primes_ok(x, allowed):
    """Denominator of rational x only has primes from allowed (a set, or None for all)."""
    if allowed is None:
        return True
    d = Fraction(x).denominator
    for p in allowed:
        while d % p == 0:
            d //= p
    return d == 1
