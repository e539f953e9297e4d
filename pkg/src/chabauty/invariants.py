"""Group-level invariants of a description.

Notation used throughout the package:

    r        torsion-free rank
    tau_p    number of quasi-cyclic p-blocks (divisible p-rank of the torsion)
    kappa_p  number of localized free blocks in which p is inverted
    ell_p    tau_p + kappa_p, the largest k with a surjection onto C_{p^inf}^k
    h        r + sum of ell_p (height)
    cr       critical primes, those with ell_p >= 2
    gamma_V  rank of Hom(A, Z_V), Z_V the rationals with no denominator prime in V
    a_V      r - gamma_V
    sigma    gamma_cr + ell_ncr
    nA       number of subgroups of the finite part T_A / Div(A)

gamma_V follows the convention that V is the set of primes whose
denominators are forbidden in the target.
"""
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NonMinimax
from .groupdsl import Cyclic, Free, OMEGA, Quasi

# oracle cross-check of nA runs when the p-part is this small
CROSSCHECK_ORDER = 2 ** 12
CROSSCHECK_BUDGET = 200_000


@dataclass(frozen=True)
class InvariantProfile:
    r: object
    per_prime: dict = field(default_factory=dict)
    h: object = None
    cr: tuple = ()
    sigma: object = None
    nA: object = None
    is_minimax: bool = True
    is_critical: bool = False

    def ell(self, p):
        return self.per_prime.get(p, (0, 0, 0))[0]

    def to_json(self):
        return {
            "r": "inf" if self.r is None else self.r,
            "per_prime": None if self.per_prime is None else {
                str(p): {"ell": e, "tau": t, "kappa": k}
                for p, (e, t, k) in sorted(self.per_prime.items())},
            "h": "inf" if self.h is None else self.h,
            "cr": list(self.cr),
            "sigma": self.sigma,
            "nA": self.nA,
            "is_minimax": self.is_minimax,
            "is_critical": self.is_critical,
            "gamma_convention": "gamma_V = rank Hom(A, Z_V), V = primes not invertible in Z_V",
        }


def _need_minimax(G, what):
    if not G.is_minimax:
        raise NonMinimax("%s is only defined for minimax groups" % what)


def rank(G):
    """Torsion-free rank; None when infinite."""
    n = 0
    for b, m in G.blocks:
        if isinstance(b, Free):
            if m == OMEGA:
                return None
            n += m
    if "free" in G.families:
        return None
    return n


def local_counts(G):
    """{p: (ell_p, tau_p, kappa_p)} over the primes in the description."""
    if G.families:
        raise NonMinimax("per-prime invariants of a prime family have infinite support")
    tau, kappa = {}, {}
    for b, m in G.blocks:
        if isinstance(b, Quasi):
            tau[b.p] = _sum(tau.get(b.p, 0), m)
        elif isinstance(b, Free):
            for p in b.primes:
                kappa[p] = _sum(kappa.get(p, 0), m)
    out = {}
    for p in sorted(set(tau) | set(kappa)):
        t, k = tau.get(p, 0), kappa.get(p, 0)
        out[p] = (_sum(t, k), t, k)
    return out


def _sum(a, b):
    return OMEGA if OMEGA in (a, b) else a + b


def ell(G, p):
    _need_minimax(G, "ell_p")
    return local_counts(G).get(p, (0, 0, 0))[0]


def tau(G, p):
    _need_minimax(G, "tau_p")
    return local_counts(G).get(p, (0, 0, 0))[1]


def kappa(G, p):
    _need_minimax(G, "kappa_p")
    return local_counts(G).get(p, (0, 0, 0))[2]


def height(G):
    _need_minimax(G, "height")
    return rank(G) + sum(e for e, _, _ in local_counts(G).values())


def critical_primes(G):
    _need_minimax(G, "the critical set")
    return tuple(p for p, (e, _, _) in local_counts(G).items() if e >= 2)


def gamma_V(G, V):
    _need_minimax(G, "gamma_V")
    V = set(V)
    return sum(m for b, m in G.blocks if isinstance(b, Free) and not V.intersection(b.primes))


def a_V(G, V):
    return rank(G) - gamma_V(G, V)


def sigma(G):
    _need_minimax(G, "sigma")
    cr = set(critical_primes(G))
    loc = local_counts(G)
    first = gamma_V(G, cr) + sum(e for p, (e, _, _) in loc.items() if p not in cr)
    second = height(G) - (a_V(G, cr) + sum(e for p, (e, _, _) in loc.items() if p in cr))
    assert first == second, "two forms of sigma disagree: %d vs %d" % (first, second)
    return first


# ------------------------------------------------------- subgroup counting

@lru_cache(maxsize=None)
def gaussian_binomial(n, k, q):
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def conjugate(lam):
    lam = [x for x in lam if x > 0]
    if not lam:
        return []
    return [sum(1 for x in lam if x > i) for i in range(max(lam))]


def _sub_conjugates(lc):
    """All conjugate partitions mu' with mu'_i <= lc_i, nonincreasing."""
    out = []
    cur = []

    def rec(i, cap):
        if i == len(lc):
            out.append(tuple(cur))
            return
        for v in range(min(cap, lc[i]), -1, -1):
            cur.append(v)
            rec(i + 1, v)
            cur.pop()

    rec(0, lc[0] if lc else 0)
    return out


def subgroups_of_type(lam, mu, p):
    """Number of subgroups of type mu in the abelian p-group of type lam."""
    lc = conjugate(lam)
    mc = list(conjugate(mu)) + [0] * (len(lc) - len(conjugate(mu)))
    if len(mc) > len(lc):
        return 0
    total = 1
    for i in range(len(lc)):
        nxt = mc[i + 1] if i + 1 < len(lc) else 0
        if mc[i] > lc[i] or nxt > mc[i]:
            return 0
        total *= p ** (nxt * (lc[i] - mc[i]))
        total *= gaussian_binomial(lc[i] - nxt, mc[i] - nxt, p)
    return total


@lru_cache(maxsize=None)
def count_subgroups_pgroup(lam, p):
    """Total subgroup count of the abelian p-group with type lam (subtype sum)."""
    lam = tuple(sorted((x for x in lam if x > 0), reverse=True))
    if not lam:
        return 1
    lc = conjugate(lam)
    total = 0
    for mc in _sub_conjugates(lc):
        mu = conjugate(mc)
        total += subgroups_of_type(lam, mu, p)
    return total


def p_parts(G):
    """{p: partition} of the finite cyclic blocks."""
    parts = {}
    for b, m in G.blocks:
        if isinstance(b, Cyclic):
            parts.setdefault(b.p, []).extend([b.k] * m)
    return {p: tuple(sorted(ks, reverse=True)) for p, ks in parts.items()}


def nA(G, crosscheck=True):
    _need_minimax(G, "n(A)")
    total = 1
    for p, lam in sorted(p_parts(G).items()):
        c = count_subgroups_pgroup(lam, p)
        order = p ** sum(lam)
        if crosscheck and order <= CROSSCHECK_ORDER and c <= CROSSCHECK_BUDGET:
            from .oracle import count_subgroups_exhaustive
            e = count_subgroups_exhaustive(lam, p)
            assert e == c, "subgroup count mismatch for type %s at p=%d: %d vs %d" % (lam, p, c, e)
        total *= c
    return total


def profile(G):
    r = rank(G)
    if not G.is_minimax:
        per = None if G.families else local_counts(G)
        return InvariantProfile(r=r, per_prime=per, h=None, cr=(), sigma=None, nA=None,
                                is_minimax=False, is_critical=False)
    loc = local_counts(G)
    cr = critical_primes(G)
    return InvariantProfile(r=r, per_prime=loc, h=height(G), cr=cr, sigma=sigma(G),
                            nA=nA(G), is_minimax=True, is_critical=bool(cr))
