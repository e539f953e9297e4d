"""Subgroups of a minimax description and their rank functions.

A subgroup is given by localized generators (g, P), each denoting the
subgroup Z[1/prod P]*g, plus quasi-cyclic lines (p, v) denoting
{t*v mod 1 : t in Z[1/p]} inside the quasi-cyclic p-coordinates.

Quotient invariants are read off a p-local presentation: after tensoring
with Z_(p) the ambient becomes a sum of copies of Z_(p), Q, Q/Z_(p) and
finite cyclic p-groups, and the subgroup becomes a module generated by
Z_(p)-rows and Q-rows. Everything below is exact rational arithmetic.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from sympy import isprime

from . import linalg
from .errors import IllDefinedGenerator, NonMinimax, NotInClosure, PreconditionFailed
from .groupdsl import Cyclic, Element, Free, GroupDesc, Quasi, parse, scalar_multiply
from .invariants import critical_primes, local_counts, rank as group_rank


@dataclass(frozen=True)
class SubgroupDesc:
    ambient: GroupDesc
    gens: tuple = ()
    qc: tuple = ()

    def free_part(self, g):
        inst = self.ambient.instances()
        return tuple(c for b, c in zip(inst, g.coords) if isinstance(b, Free))


def subgroup(ambient, gens=(), qc=()):
    """Build and validate a subgroup; gens are (coords, primes), qc are (p, direction)."""
    if isinstance(ambient, str):
        ambient = parse(ambient)
    if not ambient.is_minimax:
        raise NonMinimax("subgroups are only computed inside minimax groups")
    built = []
    for coords, primes in gens:
        try:
            g = Element(ambient, [Fraction(x) for x in coords])
        except ValueError as e:
            raise IllDefinedGenerator(str(e))
        built.append((g, frozenset(int(p) for p in primes)))
    return validate(SubgroupDesc(ambient, tuple(built), tuple((int(p), tuple(int(x) for x in v)) for p, v in qc)))


def _normalize_direction(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return None
    v = tuple(x // g for x in v)
    for x in v:
        if x != 0:
            if x < 0:
                v = tuple(-y for y in v)
            break
    return v


def quasi_indices(G, p):
    return [i for i, b in enumerate(G.instances()) if isinstance(b, Quasi) and b.p == p]


def free_indices(G):
    return [i for i, b in enumerate(G.instances()) if isinstance(b, Free)]


def validate(S):
    A = S.ambient
    if not A.is_minimax:
        raise NonMinimax("ambient group is not minimax")
    inst = A.instances()
    gens = []
    seen = set()
    for g, P in S.gens:
        for q in P:
            if not isprime(q):
                raise IllDefinedGenerator("%d in a localization set is not prime" % q, prime=q)
            for i, (b, c) in enumerate(zip(inst, g.coords)):
                if c == 0:
                    continue
                if isinstance(b, (Cyclic, Quasi)) and b.p == q:
                    raise IllDefinedGenerator(
                        "coordinate %d of a Z[1/%d]-generator is %d-torsion" % (i, q, q), i, q)
                if isinstance(b, Free) and q not in b.primes:
                    raise IllDefinedGenerator(
                        "coordinate %d lies in %s, which is not %d-divisible" % (i, b.text(), q), i, q)
        if g.is_zero():
            continue
        if not any(S.free_part(g)):
            P = frozenset()   # a torsion generator spans a finite cyclic group anyway
        key = (g.coords, P)
        if key in seen:
            continue
        seen.add(key)
        gens.append((g, P))
    qcs = []
    for p, v in S.qc:
        idx = quasi_indices(A, p)
        if not idx:
            raise IllDefinedGenerator("no quasi-cyclic %d-coordinates for a line" % p, prime=p)
        if len(v) != len(idx):
            raise IllDefinedGenerator("line at %d needs %d entries" % (p, len(idx)), prime=p)
        nv = _normalize_direction(v)
        if nv is None or (p, nv) in qcs:
            continue
        qcs.append((p, nv))
    return SubgroupDesc(A, tuple(gens), tuple(qcs))


# ------------------------------------------------------------ basic data

def free_rows(S):
    return [S.free_part(g) for g, _ in S.gens]


def divisible_rows(S, p):
    """Free parts of the generators in which p is inverted."""
    return [S.free_part(g) for g, P in S.gens if p in P]


def qc_rows(S, p):
    return [v for q, v in S.qc if q == p]


def unit_rows(G, pred):
    """Unit vectors (in free coordinates) of the free instances whose block satisfies pred."""
    blocks = [b for b in G.instances() if isinstance(b, Free)]
    n = len(blocks)
    return [tuple(1 if j == i else 0 for j in range(n)) for i, b in enumerate(blocks) if pred(b)]


def relevant_primes(S):
    ps = set(S.ambient.primes())
    for _, P in S.gens:
        ps.update(P)
    ps.update(p for p, _ in S.qc)
    return sorted(ps)


def rank_S(S):
    return linalg.rank(free_rows(S))


def tau_S(S, p):
    return linalg.rank(qc_rows(S, p))


def kappa_S(S, p):
    return linalg.rank(divisible_rows(S, p))


def ell_S(S, p):
    return tau_S(S, p) + kappa_S(S, p)


def subgroup_profile(S):
    """(r(S), {p: ell_p(S)}) over the relevant primes."""
    return rank_S(S), {p: ell_S(S, p) for p in relevant_primes(S)}


def gamma_S(S, V):
    """gamma_V of the subgroup itself: rank of Hom(S, Z_V)."""
    V = set(V)
    blocked = [S.free_part(g) for g, P in S.gens if V.intersection(P)]
    return rank_S(S) - linalg.rank(blocked)


# ------------------------------------------------------------- local data

class LocalData:
    """p-local presentation of A/S.

    Columns are the ambient coordinates that survive tensoring with Z_(p),
    tagged 'Q' (free block with p inverted), 'Zp' (other free block), 'Q/Zp'
    (quasi-cyclic p-block) or 'Z/p^k'. Rows are tagged 'Q' when the whole
    rational line lies in the subgroup and 'Zp' otherwise; the relations of
    the torsion coordinates are included as 'Zp' rows.
    """

    def __init__(self, S, p):
        self.p = p
        A = S.ambient
        inst = A.instances()
        self.cols, self.tags = [], []
        for i, b in enumerate(inst):
            if isinstance(b, Free):
                self.cols.append(i)
                self.tags.append("Q" if p in b.primes else "Zp")
            elif b.p == p:
                self.cols.append(i)
                self.tags.append("Q/Zp" if isinstance(b, Quasi) else "Z/%d" % b.order)
        n = len(self.cols)
        self.rows, self.row_tags = [], []
        for g, P in S.gens:
            v = [Fraction(g.coords[i]) for i in self.cols]
            if any(v):
                self.rows.append(v)
                self.row_tags.append("Q" if p in P else "Zp")
        qidx = {i: j for j, i in enumerate(self.cols)}
        qcols = quasi_indices(A, p)
        for _, d in ((q, d) for q, d in S.qc if q == p):
            v = [Fraction(0)] * n
            for i, x in zip(qcols, d):
                v[qidx[i]] = Fraction(x)
            self.rows.append(v)
            self.row_tags.append("Q")
        for j, (i, t) in enumerate(zip(self.cols, self.tags)):
            if t == "Q/Zp" or t.startswith("Z/"):
                v = [Fraction(0)] * n
                v[j] = Fraction(1 if t == "Q/Zp" else inst[i].order)
                self.rows.append(v)
                self.row_tags.append("Zp")

    def shape(self):
        """(a, b, c): ranks of Z_(p), Q and Q/Z_(p) in the localized quotient."""
        n = len(self.cols)
        divisible_cols = [[1 if k == j else 0 for k in range(n)]
                          for j, t in enumerate(self.tags) if t in ("Q", "Q/Zp")]
        q_rows = [r for r, t in zip(self.rows, self.row_tags) if t == "Q"]
        dim_u = linalg.rank(self.rows)
        dim_wx = len(divisible_cols)
        dim_sum = linalg.dim_sum(divisible_cols, self.rows)
        dim_wn = linalg.rank(q_rows)
        b = dim_sum - dim_u
        c = dim_wx + dim_u - dim_sum - dim_wn
        a = n - dim_u - b
        return a, b, c


@dataclass(frozen=True)
class QuotientInvariants:
    r: int
    per_prime: dict
    _S: SubgroupDesc

    def tau(self, p):
        return self.per_prime.get(p, (0, 0))[0]

    def kappa(self, p):
        return self.per_prime.get(p, (0, 0))[1]

    def ell(self, p):
        return self.tau(p) + self.kappa(p)

    def gamma(self, V):
        return gamma_quotient(self._S, V)

    def a(self, V):
        return self.r - self.gamma(V)


def gamma_quotient(S, V):
    """gamma_V(A/S), computed two ways and compared."""
    V = set(V)
    A = S.ambient
    rows = free_rows(S)
    blocks = [b for b in A.instances() if isinstance(b, Free)]
    keep = [i for i, b in enumerate(blocks) if not V.intersection(b.primes)]
    projected = [[r[i] for i in keep] for r in rows]
    first = len(keep) - linalg.rank(projected)
    blocked = unit_rows(A, lambda b: bool(V.intersection(b.primes)))
    second = len(blocks) - linalg.dim_sum(rows, blocked)
    assert first == second, "gamma_V(A/S) routes disagree"
    return first


@lru_cache(maxsize=4096)
def quotient_invariants(S):
    A = S.ambient
    r = group_rank(A) - rank_S(S)
    loc = local_counts(A)
    per = {}
    for p in relevant_primes(S):
        a, b, c = LocalData(S, p).shape()
        assert a + b == r
        per[p] = (c, b)
        # torsion-part additivity bound
        t_A = loc.get(p, (0, 0, 0))[1]
        assert tau_S(S, p) + c >= t_A, "tau_p(S) + tau_p(A/S) < tau_p(A) at p=%d" % p
        if r == group_rank(A):
            assert tau_S(S, p) + c == t_A
    return QuotientInvariants(r, per, S)


def ell_gap(S, p):
    """ell_p(A) - ell_p(S) - ell_p(A/S), recorded for documentation."""
    q = quotient_invariants(S)
    return local_counts(S.ambient).get(p, (0, 0, 0))[0] - ell_S(S, p) - q.ell(p)


# ---------------------------------------------------------- rank functions

def _parts(S):
    A = S.ambient
    cr = set(critical_primes(A))
    q = quotient_invariants(S)
    ps = relevant_primes(S)
    ell_cr = sum(ell_S(S, p) for p in ps if p in cr)
    ell_ncr = sum(ell_S(S, p) for p in ps if p not in cr)
    kap_cr = sum(q.kappa(p) for p in ps if p in cr)
    kap_ncr = sum(q.kappa(p) for p in ps if p not in cr)
    return cr, q, ell_cr, ell_ncr, kap_cr, kap_ncr


def weight(S):
    q = quotient_invariants(S)
    ps = relevant_primes(S)
    return q.r + sum(ell_S(S, p) for p in ps) + sum(q.kappa(p) for p in ps)


def level(S):
    cr, q, ell_cr, _, kap_cr, _ = _parts(S)
    return q.a(cr) + ell_cr + kap_cr


def leveled_weight(S):
    cr, q, _, ell_ncr, _, kap_ncr = _parts(S)
    return q.gamma(cr) + ell_ncr + kap_ncr


@dataclass(frozen=True)
class RankReport:
    w: int
    lam: int
    d: int
    isolated: bool
    scattered: bool
    extCB: int

    def to_json(self):
        return {"w": self.w, "lambda": self.lam, "d": self.d, "isolated": self.isolated,
                "scattered": self.scattered, "extCB": self.extCB}


def is_finitely_generated(S):
    return not S.qc and all(not P or not any(S.free_part(g)) for g, P in S.gens)


def quotient_is_artinian(S):
    q = quotient_invariants(S)
    return q.r == 0 and all(q.kappa(p) == 0 for p in relevant_primes(S))


def rank_report(S):
    w, lam, d = weight(S), level(S), leveled_weight(S)
    assert w == lam + d, "w != lambda + d"
    cr, q, ell_cr, _, kap_cr, _ = _parts(S)
    scattered = lam == 0
    assert scattered == (kap_cr == 0 and ell_cr == 0), "scattered tests disagree"
    isolated = w == 0
    assert isolated == (is_finitely_generated(S) and quotient_is_artinian(S)), "isolated tests disagree"
    return RankReport(w, lam, d, isolated, scattered, d)


# --------------------------------------------------------------- relations

def is_strongly_critical(S, p):
    return ell_S(S, p) > 0 and quotient_invariants(S).tau(p) > 0


def is_idle(S):
    return not any(is_strongly_critical(S, p) for p in critical_primes(S.ambient))


def _same_ambient(S, T):
    if S.ambient != T.ambient:
        raise ValueError("subgroups live in different ambient groups")


def have_common_lattice(S, T):
    _same_ambient(S, T)
    return linalg.span_eq(free_rows(S), free_rows(T))


def are_parallel(S, T):
    if not have_common_lattice(S, T):
        return False
    ps = set(relevant_primes(S)) | set(relevant_primes(T))
    return all(ell_S(S, p) == ell_S(T, p) for p in ps)


def are_commensurable(S, T):
    if not have_common_lattice(S, T):
        return False
    ps = set(relevant_primes(S)) | set(relevant_primes(T))
    for p in ps:
        if not linalg.span_eq(qc_rows(S, p), qc_rows(T, p)):
            return False
        if not linalg.span_eq(divisible_rows(S, p), divisible_rows(T, p)):
            return False
    return True


def converges_to(H, S):
    """Commensurable convergence from H to S."""
    _same_ambient(H, S)
    fS = free_rows(S)
    if not linalg.span_le(fS, free_rows(H)):
        return False
    for p in set(relevant_primes(H)) | set(relevant_primes(S)):
        if not linalg.span_le(qc_rows(H, p), qc_rows(S, p)):
            return False
        hp = divisible_rows(H, p)
        if hp:
            meet = _meet_basis(hp, fS)
            if not linalg.span_le(meet, divisible_rows(S, p)):
                return False
    return True


def _meet_basis(rows_a, rows_b):
    """A basis of span(rows_a) meet span(rows_b)."""
    ba, _ = linalg.rref(rows_a)
    bb, _ = linalg.rref(rows_b)
    if not ba or not bb:
        return []
    # x = sum s_i a_i = sum t_j b_j; kernel of [A; -B]^T
    m = [list(r) for r in ba] + [[-x for x in r] for r in bb]
    kernel = _left_kernel(m)
    out = []
    for k in kernel:
        out.append([sum(k[i] * ba[i][c] for i in range(len(ba))) for c in range(len(ba[0]))])
    return out


def _left_kernel(m):
    """Basis of {k : k * m = 0} over Q."""
    rows = len(m)
    aug = [list(m[i]) + [1 if j == i else 0 for j in range(rows)] for i in range(rows)]
    ncol = len(m[0])
    # eliminate on the first ncol columns only
    work = [list(map(Fraction, r)) for r in aug]
    piv_row = 0
    for c in range(ncol):
        sel = None
        for i in range(piv_row, rows):
            if work[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        work[piv_row], work[sel] = work[sel], work[piv_row]
        for i in range(rows):
            if i != piv_row and work[i][c] != 0:
                f = work[i][c] / work[piv_row][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[piv_row])]
        piv_row += 1
    return [r[ncol:] for r in work[piv_row:]]


# -------------------------------------------------------------- membership

class Membership:
    """Exact membership test for a subgroup.

    x lies in S iff its image vanishes in (A/S) tensor Z_(l) for every prime
    l. For the finitely many primes that occur in A or S this is a test in
    the l-local presentation: x must lie in the Z_(l)-span of the 'Zp' rows
    plus the Q-span of the 'Q' rows. At every other prime only the free
    coordinates survive and all rows are 'Zp' rows, so those primes are
    handled together by one Z[1/E]-lattice test on the free parts.
    """

    def __init__(self, S):
        self.S = S
        self.E = relevant_primes(S)
        self.global_test = _LatticeTest(free_rows(S), self.E)
        self.local_tests = []
        for p in self.E:
            loc = LocalData(S, p)
            krows = [r for r, t in zip(loc.rows, loc.row_tags) if t == "Q"]
            basis, piv = linalg.rref(krows)
            zrows = [linalg.reduce_vector(basis, piv, r)
                     for r, t in zip(loc.rows, loc.row_tags) if t != "Q"]
            self.local_tests.append((loc.cols, basis, piv, _LatticeTest(zrows, (), p)))

    def __contains__(self, x):
        if not self.global_test.contains([Fraction(c) for c in self.S.free_part(x)]):
            return False
        for cols, basis, piv, test in self.local_tests:
            v = [Fraction(x.coords[i]) for i in cols]
            if not test.contains(linalg.reduce_vector(basis, piv, v)):
                return False
        return True


class _LatticeTest:
    """Is v in (Z-span of rows) tensor R, where R = Z[1/E] (local_prime None) or Z_(p)?"""

    def __init__(self, rows, E, local_prime=None):
        self.basis = linalg.lattice_basis(rows)
        self.E = set(E)
        self.local_prime = local_prime
        self.piv = []
        self.inv = None
        if self.basis:
            _, piv = linalg.rref(self.basis)
            self.piv = piv
            k = len(self.basis)
            sq = [[self.basis[i][c] for c in piv] for i in range(k)]
            self.inv = _inverse(sq)

    def contains(self, v):
        if not self.basis:
            return not any(v)
        k = len(self.basis)
        vp = [v[c] for c in self.piv]
        coef = [sum(vp[j] * self.inv[j][i] for j in range(k)) for i in range(k)]
        for col in range(len(v)):
            if sum(coef[i] * self.basis[i][col] for i in range(k)) != v[col]:
                return False
        for c in coef:
            if c.denominator == 1:
                continue
            if self.local_prime is not None:
                if c.denominator % self.local_prime == 0:
                    return False
            elif not linalg.denominator_primes_ok(c, self.E):
                return False
        return True


def _inverse(m):
    n = len(m)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        f = aug[c][c]
        aug[c] = [x / f for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                g = aug[i][c]
                aug[i] = [a - g * b for a, b in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def contains(S, x):
    if not isinstance(x, Element):
        x = Element(S.ambient, [Fraction(c) for c in x])
    return x in Membership(S)


# -------------------------------------------------------------- witnesses

def _free_element(A, vec):
    """Element with the given free coordinates (integers) and zero torsion."""
    coords = []
    it = iter(vec)
    for b in A.instances():
        coords.append(next(it) if isinstance(b, Free) else 0)
    return Element(A, coords)


def _integral(v):
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def _rank_one_extension(S, x):
    """S plus a rank-one piece in direction x, gaining p-divisibility exactly where forced.

    For each prime p with x in F_S + E_p (F_S the rational span of the free
    parts of S, E_p the p-divisible free coordinates) a generator Z[1/p]*y_p
    with y_p in E_p and y_p congruent to x modulo F_S is added; otherwise Z*x.
    """
    A = S.ambient
    fS = free_rows(S)
    new = []
    for p in relevant_primes(S):
        Ep = unit_rows(A, lambda b, p=p: p in b.primes)
        if not Ep or not linalg.in_span(fS + Ep, x):
            continue
        y = _component(fS, Ep, x)
        new.append((_free_element(A, _integral(y)), frozenset([p])))
    if not new:
        new.append((_free_element(A, _integral(x)), frozenset()))
    return validate(SubgroupDesc(A, S.gens + tuple(new), S.qc))


def _component(f_rows, e_rows, x):
    """Write x = f + e with f in span(f_rows), e in span(e_rows); return e."""
    chosen, from_e = [], []
    for r, is_e in [(r, False) for r in f_rows] + [(r, True) for r in e_rows]:
        if linalg.rank(chosen + [r]) > len(chosen):
            chosen.append(r)
            from_e.append(is_e)
    c = linalg.coordinates(chosen, x)
    e = [Fraction(0)] * len(x)
    for coef, r, is_e in zip(c, chosen, from_e):
        if is_e:
            e = [a + coef * b for a, b in zip(e, r)]
    return e


def _drop_divisible_direction(S, p):
    """Remove one dimension of p-divisibility from S (quasi-cyclic line first)."""
    lines = qc_rows(S, p)
    if lines:
        keep = []
        for v in lines:
            if linalg.rank(keep + [v]) > len(keep):
                keep.append(v)
        keep = keep[:-1]
        qc = tuple(e for e in S.qc if e[0] != p) + tuple((p, v) for v in keep)
        return validate(SubgroupDesc(S.ambient, S.gens, qc))
    prow = [(i, S.free_part(g)) for i, (g, P) in enumerate(S.gens) if p in P]
    basis = []
    for _, r in prow:
        if linalg.rank(basis + [r]) > len(basis):
            basis.append(r)
    target = basis[:-1]
    gens = []
    for (g, P) in S.gens:
        if p in P and not linalg.in_span(target, S.free_part(g)):
            P = P - {p}
        gens.append((g, P))
    return validate(SubgroupDesc(S.ambient, tuple(gens), S.qc))


def descend_weight(S):
    A = S.ambient
    cr, q, _, ell_ncr, kap_cr, _ = _parts(S)
    if kap_cr != 0:
        raise PreconditionFailed("descendWeight needs kappa_cr(A/S) = 0")
    if q.r + ell_ncr < 1:
        raise PreconditionFailed("descendWeight needs r(A/S) + ell_ncr(S) >= 1")
    if q.r >= 1:
        fS = free_rows(S)
        x = next(e for e in unit_rows(A, lambda b: True) if not linalg.in_span(fS, e))
        H = _rank_one_extension(S, x)
    else:
        p = next(p for p in relevant_primes(S) if p not in cr and ell_S(S, p) > 0)
        H = _drop_divisible_direction(S, p)
    assert weight(H) == weight(S) - 1
    assert sum(ell_S(H, p) for p in cr) == sum(ell_S(S, p) for p in cr)
    assert converges_to(H, S)
    return H


def descend_level(S):
    A = S.ambient
    cr, q, ell_cr, _, _, _ = _parts(S)
    lam = level(S)
    if lam < 1:
        raise PreconditionFailed("descendLevel needs lambda(S) >= 1")
    if q.a(cr) >= 1:
        fS = free_rows(S)
        x = next(e for e in unit_rows(A, lambda b: bool(cr.intersection(b.primes)))
                 if not linalg.in_span(fS, e))
        H = _rank_one_extension(S, x)
    else:
        p = next(p for p in sorted(cr) if ell_S(S, p) > 0)
        H = _drop_divisible_direction(S, p)
    assert level(H) == lam - 1
    assert leveled_weight(H) == leveled_weight(S)
    assert converges_to(H, S)
    return H


# ----------------------------------------------------- converging sequence

def sequence_multiplier(k):
    return factorial(k)


def converging_sequence(H, S, k):
    """k-th term of a sequence commensurable to H converging to S.

    Term = F_k + k!*H, where F_k is the finitely generated part of S with
    denominators truncated at the k-th power. The factorial makes the
    multiplier eventually divisible by any fixed index, so a fixed element
    outside S eventually leaves the terms.
    """
    if not converges_to(H, S):
        raise NotInClosure("S is not in the closure of the commensurability class of H")
    if k < 1:
        raise ValueError("sequence index starts at 1")
    if H == S:
        return H
    A = S.ambient
    gens = []
    for g, P in S.gens:
        if P:
            n = 1
            for p in P:
                n *= p
            gens.append((scalar_multiply(A, Fraction(1, n ** k), g), frozenset()))
        else:
            gens.append((g, frozenset()))
    n = len(A.instances())
    for p, v in S.qc:
        coords = [Fraction(0)] * n
        for i, x in zip(quasi_indices(A, p), v):
            coords[i] = Fraction(x, p ** k)
        gens.append((Element(A, coords), frozenset()))
    m = sequence_multiplier(k)
    for g, P in H.gens:
        gens.append((scalar_multiply(A, m, g), P))
    return validate(SubgroupDesc(A, tuple(gens), H.qc))


# ------------------------------------------------------------------- JSON

def _coord_text(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def to_json(S):
    from .groupdsl import to_text
    return {
        "ambient": to_text(S.ambient),
        "gens": [{"coords": [_coord_text(c) for c in g.coords], "inv": sorted(P)}
                 for g, P in S.gens],
        "qc": [{"p": p, "dir": list(v)} for p, v in S.qc],
    }


def from_json(obj, ambient=None):
    """Read a subgroup; the ambient in the file is used unless one is given."""
    if ambient is None:
        ambient = obj.get("ambient")
        if ambient is None:
            raise ValueError("subgroup file has no ambient group")
    if isinstance(ambient, str):
        ambient = parse(ambient)
    try:
        gens = [([Fraction(str(c)) for c in g["coords"]], g.get("inv", [])) for g in obj.get("gens", [])]
        qc = [(q["p"], q["dir"]) for q in obj.get("qc", [])]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ValueError("malformed subgroup file: %s" % e)
    return subgroup(ambient, gens, qc)
