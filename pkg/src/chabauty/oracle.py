"""Brute-force ground truth.

Finite groups are enumerated outright, finitely generated groups through
their finite quotients, and the Chabauty topology is approximated by
membership fingerprints on growing windows of elements.
"""
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np
from numba import njit

from . import linalg
from .errors import SizeBound
from .groupdsl import OMEGA, Cyclic, Element, Free, GroupDesc, Quasi, cyclic, parse, to_text
from .subgroup_calc import Membership, SubgroupDesc, validate

DEFAULT_MAX_ORDER = 4096
DEFAULT_MAX_SUBGROUPS = 200_000
DEFAULT_MAX_INDEX = 64
DEFAULT_MAX_WINDOW = 100_000
DEFAULT_WINDOWS = (1, 2, 4, 8, 16)


# ------------------------------------------------ exhaustive p-group count

@njit(cache=True)
def _count_lattices(P, p):
    """Count lattices L with diag(P) <= L <= Z^n, one Hermite form at a time.

    Rows are filled from the top; row k has diagonal d dividing P[k] and
    entries H[k, j] (j < k) in [0, H[j, j]). The form is admissible when the
    relation P[k] e_k lies in L, tracked through the coefficients X[k, :]
    of P[k] e_k in the rows chosen so far.
    """
    n = P.shape[0]
    H = np.zeros((n, n), np.int64)
    X = np.zeros((n, n), np.int64)
    m = n * (n + 1) // 2
    ks = np.zeros(m, np.int64)
    js = np.zeros(m, np.int64)
    t = 0
    for k in range(n):
        ks[t] = k
        js[t] = k
        t += 1
        for j in range(k - 1, -1, -1):
            ks[t] = k
            js[t] = j
            t += 1
    nxt = np.zeros(m + 1, np.int64)
    total = 0
    L = 0
    while L >= 0:
        if L == m:
            total += 1
            L -= 1
            continue
        k = ks[L]
        j = js[L]
        if j == k:
            # diagonal p^e for the next untried exponent e
            e = nxt[L]
            d = 1
            for _ in range(e):
                d *= p
            if d > P[k]:
                L -= 1
                continue
            nxt[L] = e + 1
            H[k, k] = d
            X[k, k] = P[k] // d
            L += 1
            nxt[L] = 0
            continue
        hjj = H[j, j]
        s = 0
        for i in range(j + 1, k):
            s += X[k, i] * H[i, j]
        xk = X[k, k]
        if L == m - 1:
            # innermost choice: test each candidate entry in place
            for v in range(hjj):
                if (s + xk * v) % hjj == 0:
                    total += 1
            L -= 1
            continue
        v = nxt[L]
        found = -1
        while v < hjj:
            if (s + xk * v) % hjj == 0:
                found = v
                break
            v += 1
        if found < 0:
            L -= 1
            continue
        nxt[L] = found + 1
        H[k, j] = found
        X[k, j] = -((s + xk * found) // hjj)
        L += 1
        nxt[L] = 0
    return total


def count_subgroups_exhaustive(lam, p):
    """Number of subgroups of the sum of Z/p^k over k in lam, by exhaustive enumeration."""
    lam = [k for k in lam if k > 0]
    if not lam:
        return 1
    return int(_count_lattices(np.array([p ** k for k in lam], np.int64), p))


# ------------------------------------------------------- finite enumeration

@dataclass
class FiniteGroupTable:
    group: GroupDesc
    orders: tuple
    elements: list
    subgroups: list = field(default_factory=list)
    generators: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.orders)
        strides = [1] * n
        for i in range(n - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        self.strides = np.array(strides, np.int64)
        self.mod = np.array(self.orders, np.int64)
        self.digits = np.array(self.elements, np.int64).reshape(len(self.elements), n)

    def index_of(self, coords):
        return int(sum(int(c) % o * s for c, o, s in zip(coords, self.orders, self.strides)))

    def add(self, i, j):
        return int(((self.digits[i] + self.digits[j]) % self.mod) @ self.strides)

    def shift(self, idx, j):
        """Indices of {x + element j : x in idx}."""
        return ((self.digits[idx] + self.digits[j]) % self.mod) @ self.strides

    def element_order(self, i):
        o = 1
        for c, m in zip(self.elements[i], self.orders):
            o = lcm(o, m // gcd(c, m))
        return o

    def cyclic(self, i):
        out = [0]
        cur = 0
        while True:
            cur = self.add(cur, i)
            if cur == 0:
                break
            out.append(cur)
        return np.array(sorted(out), np.int64)

    def join(self, sub, g):
        """Subgroup generated by sub and element g."""
        members = set(int(x) for x in sub)
        cosets = [np.asarray(sub, np.int64)]
        cur = g
        while cur not in members:
            shifted = self.shift(cosets[0], cur)
            members.update(int(x) for x in shifted)
            cosets.append(shifted)
            cur = self.add(cur, g)
        return np.array(sorted(members), np.int64)

    def count(self):
        return len(self.subgroups)


def _finite_orders(F):
    orders = []
    for b in F.instances():
        if not isinstance(b, Cyclic):
            raise ValueError("finite enumeration needs a finite group, got %s" % to_text(F))
        orders.append(b.order)
    return tuple(orders)


def finite_table(F, max_order=DEFAULT_MAX_ORDER):
    """Element table of a finite group, given as a description or a tuple of cyclic orders."""
    if isinstance(F, str):
        F = parse(F)
    if isinstance(F, GroupDesc):
        if not F.is_finite:
            raise ValueError("finite enumeration needs a finite group, got %s" % to_text(F))
        orders = _finite_orders(F)
    else:
        orders = tuple(F)
        F = reduce(lambda a, b: a + b, [cyclic(o) for o in orders], GroupDesc())
    size = 1
    for o in orders:
        size *= o
    if size > max_order:
        raise SizeBound("group order %d exceeds the bound %d" % (size, max_order))
    elements = list(itertools.product(*[range(o) for o in orders]))
    if not orders:
        elements = [()]
    return FiniteGroupTable(F, orders, elements)


def enumerate_subgroups_finite(F, max_order=DEFAULT_MAX_ORDER, max_subgroups=DEFAULT_MAX_SUBGROUPS):
    """All subgroups, by closing joins of cyclic subgroups to a fixpoint."""
    T = finite_table(F, max_order)
    N = len(T.elements)
    cyclic_gens = {}
    for i in range(N):
        c = T.cyclic(i)
        cyclic_gens.setdefault(c.tobytes(), i)
    gens = sorted(cyclic_gens.values())
    trivial = np.array([0], np.int64)
    seen = {trivial.tobytes(): 0}
    subs = [trivial]
    sub_gens = [()]
    sets = [{0}]
    q = 0
    while q < len(subs):
        H = subs[q]
        for g in gens:
            if g in sets[q]:
                continue
            J = T.join(H, g)
            key = J.tobytes()
            if key in seen:
                continue
            seen[key] = len(subs)
            subs.append(J)
            sub_gens.append(sub_gens[q] + (g,))
            sets.append(set(int(x) for x in J))
            if len(subs) > max_subgroups:
                raise SizeBound("more than %d subgroups" % max_subgroups)
        q += 1
    order = sorted(range(len(subs)), key=lambda i: (len(subs[i]), subs[i].tolist()))
    T.subgroups = [tuple(int(x) for x in subs[i]) for i in order]
    T.generators = [sub_gens[i] for i in order]
    _check_intersections(T)
    return T


def _check_intersections(T, samples=64, seed=0):
    rng = random.Random(seed)
    keys = set(T.subgroups)
    n = len(T.subgroups)
    for _ in range(min(samples, n * n)):
        a = T.subgroups[rng.randrange(n)]
        b = T.subgroups[rng.randrange(n)]
        meet = tuple(sorted(set(a) & set(b)))
        assert meet in keys, "subgroup list is not closed under intersection"


def count_cyclic_of_order(T, order):
    return sum(1 for s in T.subgroups if len(s) == order and any(T.element_order(i) == order for i in s))


# ------------------------------------------------ finitely generated groups

def _fg_layout(G):
    """(number of Z coordinates, torsion orders) in instance order."""
    r, orders = 0, []
    for b in G.instances():
        if isinstance(b, Free):
            if b.primes:
                raise ValueError("bounded-index enumeration needs a finitely generated group")
            r += 1
        elif isinstance(b, Cyclic):
            orders.append(b.order)
        else:
            raise ValueError("bounded-index enumeration needs a finitely generated group")
    return r, orders


def _relations(r, orders):
    n = r + len(orders)
    rows = []
    for j, o in enumerate(orders):
        v = [0] * n
        v[r + j] = o
        rows.append(v)
    return rows


def _lattice_key(rows):
    return tuple(tuple(x) for x in linalg.hnf(rows))


def _in_lattice(hnf_rows, v):
    """Integer membership in a lattice given by its echelon basis."""
    v = list(v)
    for row in hnf_rows:
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        f = v[c] // row[c]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def _hnf_route(r, orders, N):
    """Every Hermite form of a sublattice of Z^n of index <= N containing the relations."""
    n = r + len(orders)
    rels = _relations(r, orders)
    out = set()

    def diagonals(i, budget):
        if i == n:
            yield ()
            return
        for d in range(1, budget + 1):
            for rest in diagonals(i + 1, budget // d):
                yield (d,) + rest

    for diag in diagonals(0, N):
        # row i: diag[i] at column i, entries at columns j > i reduced mod diag[j]
        ranges = []
        for i in range(n):
            for j in range(i + 1, n):
                ranges.append((i, j, range(diag[j])))
        for choice in itertools.product(*[rg for _, _, rg in ranges]):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = diag[i]
            for (i, j, _), v in zip(ranges, choice):
                rows[i][j] = v
            if all(_in_lattice(rows, rel) for rel in rels):
                out.add(_lattice_key(rows + rels))
    return out


def _p_part(r, orders, p, e):
    """G / p^e G as a list of cyclic orders, with the torsion coordinates kept in place."""
    return [p ** e] * r + [gcd(o, p ** e) for o in orders]


def _quotient_route(r, orders, N):
    """Preimages of subgroups of G/MG (M = lcm(1..N)), prime by prime."""
    n = r + len(orders)
    M = reduce(lcm, range(1, N + 1), 1)
    primes = [p for p in range(2, N + 1) if all(p % q for q in range(2, p))]
    per_prime = []
    for p in primes:
        e = 0
        while p ** (e + 1) <= N:
            e += 1
        part = _p_part(r, orders, p, e)
        keep = [i for i, o in enumerate(part) if o > 1]
        T = enumerate_subgroups_finite(tuple(part[i] for i in keep))
        size = len(T.elements)
        opts = []
        for s, gs in zip(T.subgroups, T.generators):
            idx = size // len(s)
            if idx > N:
                continue
            lifts = []
            for g in gs:
                v = [0] * n
                for pos, c in zip(keep, T.elements[g]):
                    v[pos] = c
                lifts.append(v)
            opts.append((idx, lifts))
        pe = p ** e
        u = (M // pe) * pow(M // pe, -1, pe) if pe > 1 else 0
        per_prime.append((u, opts))
    base = _relations(r, orders) + [[M if i == j else 0 for j in range(n)] for i in range(n)]
    out = set()

    def combine(i, idx, rows):
        if i == len(per_prime):
            out.add(_lattice_key(base + rows))
            return
        u, opts = per_prime[i]
        for k, lifts in opts:
            if idx * k <= N:
                combine(i + 1, idx * k, rows + [[u * x for x in v] for v in lifts])

    combine(0, 1, [])
    return out


def _subgroup_from_lattice(G, key):
    rows = [list(r) for r in key]
    return validate(SubgroupDesc(G, tuple((Element(G, r), frozenset()) for r in rows), ()))


def lattice_index(r, orders, key):
    """Index in G = Z^n / relations of the subgroup whose preimage has basis key.

    The preimage contains the relations, so the index is just its determinant.
    """
    det = 1
    for i, row in enumerate(key):
        det *= row[i]
    return det


def enumerate_bounded_index(G, N, max_index=DEFAULT_MAX_INDEX, with_keys=False):
    """All subgroups of index <= N in a finitely generated group, by two routes."""
    if isinstance(G, str):
        G = parse(G)
    if N > max_index:
        raise SizeBound("index bound %d exceeds the configured bound %d" % (N, max_index))
    r, orders = _fg_layout(G)
    a = _hnf_route(r, orders, N)
    b = _quotient_route(r, orders, N)
    assert a == b, "bounded-index routes disagree: %d vs %d subgroups" % (len(a), len(b))
    keys = sorted(a, key=lambda k: (lattice_index(r, orders, k), k))
    subs = [_subgroup_from_lattice(G, k) for k in keys]
    if with_keys:
        return list(zip(subs, keys))
    return subs


# ------------------------------------------------------------ fingerprints

def _coordinate_ball(block, h):
    if isinstance(block, Free):
        if not block.primes:
            return [Fraction(a) for a in range(-h, h + 1)]
        dens = [b for b in range(1, h + 1) if _is_p_number(b, block.primes)]
        vals = {Fraction(a, b) for b in dens for a in range(-h, h + 1)}
        return sorted(vals)
    if isinstance(block, Cyclic):
        o = block.order
        return sorted({c % o for c in range(-h, h + 1)})
    vals = {Fraction(0)}
    q = block.p
    while q <= h:
        vals.update(Fraction(a, q) for a in range(q))
        q *= block.p
    return sorted(vals)


def _is_p_number(b, primes):
    for p in primes:
        while b % p == 0:
            b //= p
    return b == 1


def window(G, height, max_size=DEFAULT_MAX_WINDOW):
    """Elements whose canonical coordinates all have height <= height."""
    if isinstance(G, str):
        G = parse(G)
    balls = [_coordinate_ball(b, height) for b in G.instances()]
    size = 1
    for b in balls:
        size *= len(b)
    if size > max_size:
        raise SizeBound("window of height %d has %d elements (bound %d)" % (height, size, max_size))
    return [Element(G, c) for c in itertools.product(*balls)]


@dataclass(frozen=True)
class Fingerprint:
    window: tuple
    bits: tuple

    def restrict(self, sub_window):
        pos = {x: i for i, x in enumerate(self.window)}
        return Fingerprint(tuple(sub_window), tuple(self.bits[pos[x]] for x in sub_window))


def fingerprint(S, win):
    """Membership vector of S on a window; S is a SubgroupDesc or a predicate."""
    test = Membership(S).__contains__ if isinstance(S, SubgroupDesc) else S
    return Fingerprint(tuple(win), tuple(bool(test(x)) for x in win))


def _lattice_echelon(S):
    """Echelon basis of the lattice of S plus torsion relations, for f.g. ambients."""
    r, orders = _fg_layout(S.ambient)
    rows = [[int(c) for c in g.coords] for g, _ in S.gens] + _relations(r, orders)
    return linalg.hnf(rows)


def _lattice_bits(echelon, arr):
    """Vectorized membership of the integer rows of arr in an echelon lattice."""
    v = arr.copy()
    ok = np.ones(len(v), bool)
    for row in echelon:
        c = next(i for i, x in enumerate(row) if x)
        ok &= v[:, c] % row[c] == 0
        f = v[:, c] // row[c]
        v -= np.outer(f, np.array(row, np.int64))
    ok &= ~v.any(axis=1)
    return ok


def stratify(bits_list):
    """Iterated isolation under fingerprint equality; None marks members never isolated."""
    ranks = [None] * len(bits_list)
    alive = list(range(len(bits_list)))
    level = 0
    while alive:
        seen = {}
        for i in alive:
            seen[bits_list[i]] = seen.get(bits_list[i], 0) + 1
        isolated = [i for i in alive if seen[bits_list[i]] == 1]
        if not isolated:
            break
        for i in isolated:
            ranks[i] = level
        alive = [i for i in alive if ranks[i] is None]
        level += 1
    return ranks


@dataclass
class CBProfile:
    heights: list
    ranks: list          # ranks[w][i]: empirical rank of member i at window w

    @property
    def final(self):
        return self.ranks[-1] if self.ranks else []

    def to_json(self):
        show = lambda r: "perfect" if r is None else r
        return {"windows": list(self.heights),
                "ranks": [[show(r) for r in row] for row in self.ranks]}


def chabauty_profile(family, windows=DEFAULT_WINDOWS, ambient=None, max_window=DEFAULT_MAX_WINDOW):
    """Empirical Cantor-Bendixson strata of a finite family, one row per window.

    windows is an increasing list of heights (or of explicit element lists).
    """
    if ambient is None and family:
        ambient = family[0].ambient
    fast = ambient.is_finitely_generated
    tests = [_lattice_echelon(S) if fast else Membership(S) for S in family]
    heights, rows = [], []
    for w in windows:
        win = window(ambient, w, max_window) if isinstance(w, int) else list(w)
        if fast:
            arr = np.array([[int(c) for c in x.coords] for x in win], np.int64).reshape(len(win), -1)
            bits = [_lattice_bits(t, arr).tobytes() for t in tests]
        else:
            bits = [tuple(x in t for x in win) for t in tests]
        heights.append(w if isinstance(w, int) else len(win))
        rows.append(stratify(bits))
    return CBProfile(heights, rows)


# --------------------------------------------------------- property harness

def fg_corpus(G, max_index=6, entry_bound=3, samples=20, seed=0):
    """Bounded-index subgroups, seeded cyclic subgroups and {0} of a f.g. group."""
    from .subgroup_calc import subgroup
    if isinstance(G, str):
        G = parse(G)
    fam = enumerate_bounded_index(G, max_index)
    n = len(G.instances())
    rng = random.Random(seed)
    keys = {_lattice_key(_lattice_echelon(S)) for S in fam}
    for _ in range(samples):
        v = [rng.randint(-entry_bound, entry_bound) for _ in range(n)]
        S = subgroup(G, [(v, ())])
        k = _lattice_key(_lattice_echelon(S))
        if k not in keys:
            keys.add(k)
            fam.append(S)
    zero = subgroup(G)
    if _lattice_key(_lattice_echelon(zero)) not in keys:
        fam.append(zero)
    return fam


def resolution_height(S, heights):
    """Smallest window height that pins S down, or None if no listed height does.

    The window must contain the generators and every finite cyclic
    coordinate in full; in quasi-cyclic coordinates it must also reach the
    next division point, which witnesses that a larger finite subgroup
    differs from S. A quasi-cyclic line is never pinned down.
    """
    if S.qc:
        return None
    inst = S.ambient.instances()
    need = 0
    for i, b in enumerate(inst):
        if isinstance(b, Cyclic):
            need = max(need, b.order // 2)
        elif isinstance(b, Quasi):
            den = max([Fraction(g.coords[i]).denominator for g, _ in S.gens] + [1])
            need = max(need, den * b.p)
    for g, _ in S.gens:
        for b, c in zip(inst, g.coords):
            c = Fraction(c)
            if isinstance(b, Cyclic):
                c = Fraction(min(int(c), b.order - int(c)))
            need = max(need, abs(c.numerator), c.denominator)
    for h in heights:
        if h >= need:
            return h
    return None


class _Property:
    def __init__(self, name):
        self.name, self.checked, self.witness = name, 0, None
        self.skipped = 0

    def check(self, ok, witness):
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = witness

    def to_json(self):
        out = {"name": self.name, "pass": self.witness is None, "checked": self.checked,
               "counterexample": self.witness}
        if self.skipped:
            out["skipped"] = self.skipped
        return out


def _subgroup_metrics(S):
    from .subgroup_calc import (level, leveled_weight, quotient_invariants, rank_S, relevant_primes,
                                tau_S, weight)
    q = quotient_invariants(S)
    ps = relevant_primes(S)
    return {"r_quot": q.r, "r_sub": rank_S(S), "w": weight(S), "lambda": level(S),
            "d": leveled_weight(S), "tau_sub": {p: tau_S(S, p) for p in ps},
            "tau_quot": {p: q.tau(p) for p in ps}}


def check_family(family, heights, props, ground_truth_isolated=None):
    """Run the neighbourhood, semicontinuity and additivity properties on a family."""
    from .subgroup_calc import are_commensurable, are_parallel, relevant_primes, to_json as sj
    from .invariants import local_counts
    A = family[0].ambient
    fast = A.is_finitely_generated
    wins = {h: window(A, h) for h in heights}
    if fast:
        arrs = {h: np.array([[int(c) for c in x.coords] for x in w], np.int64).reshape(len(w), -1)
                for h, w in wins.items()}
        tests = [_lattice_echelon(S) for S in family]
        fp = lambda i, h: _lattice_bits(tests[i], arrs[h]).tobytes()
    else:
        tests = [Membership(S) for S in family]
        fp = lambda i, h: tuple(x in tests[i] for x in wins[h])
    cache = {}

    def bits(i, h):
        if (i, h) not in cache:
            cache[(i, h)] = fp(i, h)
        return cache[(i, h)]

    metrics = [_subgroup_metrics(S) for S in family]
    loc = local_counts(A)

    for i, S in enumerate(family):
        m = metrics[i]
        for p in relevant_primes(S):
            t_A = loc.get(p, (0, 0, 0))[1]
            props["suradd"].check(m["tau_sub"][p] + m["tau_quot"][p] >= t_A and
                                  (m["r_sub"] > 0 or m["tau_sub"][p] + m["tau_quot"][p] == t_A),
                                  {"S": sj(S), "p": p})
        if ground_truth_isolated is not None:
            from .subgroup_calc import rank_report
            truth = ground_truth_isolated(S)
            if truth is None:
                props["isolated_iff_w0"].skipped += 1
            else:
                props["isolated_iff_w0"].check(rank_report(S).isolated == truth, {"S": sj(S)})
        h = resolution_height(S, heights)
        if h is None:
            if not S.qc:
                continue
            h = heights[-1]
        for j, T in enumerate(family):
            if j == i or bits(i, h) != bits(j, h):
                continue
            n = metrics[j]
            wit = {"S": sj(S), "S_near": sj(T), "window": h}
            props["neighbourhood_trichotomy"].check(
                n["w"] < m["w"] or (n["w"] == m["w"] and are_parallel(S, T) and not are_commensurable(S, T)),
                wit)
            props["usc_r_quotient"].check(n["r_quot"] <= m["r_quot"], wit)
            props["lsc_r_subgroup"].check(n["r_sub"] >= m["r_sub"], wit)
            for key in ("w", "lambda", "d"):
                props["usc_" + key].check(n[key] <= m[key], wit)
            for p in set(m["tau_sub"]) | set(n["tau_sub"]):
                props["usc_tau_subgroup"].check(n["tau_sub"].get(p, 0) <= m["tau_sub"].get(p, 0), wit)
                props["lsc_tau_quotient"].check(n["tau_quot"].get(p, 0) >= m["tau_quot"].get(p, 0), wit)
    return metrics


PROPERTY_NAMES = ("neighbourhood_trichotomy", "usc_r_quotient", "lsc_r_subgroup", "usc_w", "usc_lambda",
                  "usc_d", "usc_tau_subgroup", "lsc_tau_quotient", "suradd", "isolated_iff_w0",
                  "cb_at_most_w")


def property_harness(corpus="Z^2", seed=0, max_index=6, windows=DEFAULT_WINDOWS, entry_bound=3, samples=20):
    """Validate the formula modules on a seeded corpus; returns a JSON-ready report."""
    from .subgroup_calc import ell_gap, relevant_primes, subgroup, to_json as sj, weight
    props = {n: _Property(n) for n in PROPERTY_NAMES}
    report = {"schema": "1", "corpus": corpus, "seed": seed,
              "bounds": {"max_index": max_index, "windows": list(windows), "entry_bound": entry_bound,
                         "samples": samples}}
    extra = {}
    heights = list(windows)
    if corpus.startswith("cyclic-count:"):
        # (Z/p^m)^2 truncation of (C[p^inf])^2
        p, m = (int(x) for x in corpus.split(":")[1].split(","))
        T = enumerate_subgroups_finite((p ** m, p ** m))
        found = count_cyclic_of_order(T, p ** m)
        expected = (p + 1) * p ** (m - 1)
        props["cyclic_count"] = _Property("cyclic_count")
        props["cyclic_count"].check(found == expected, {"found": found, "expected": expected})
        extra["cyclic_subgroups_of_order_p^m"] = found
        extra["subgroups"] = T.count()
        family = []
    elif corpus.startswith("quasi:"):
        p, J = (int(x) for x in corpus.split(":")[1].split(","))
        A = parse("C[%d^inf]" % p)
        family = [subgroup(A, [((Fraction(1, p ** j),), ())]) for j in range(J + 1)]
        family.append(subgroup(A, qc=[(p, (1,))]))
        heights = [p ** j for j in range(1, J)]
    else:
        A = parse(corpus)
        family = fg_corpus(A, max_index, entry_bound, samples, seed)
        index_keys = {k for _, k in enumerate_bounded_index(A, max_index, with_keys=True)}
        n = len(A.instances())

        def truth(S):
            # in the bounded-index list: isolated; lattice of lower rank: infinite
            # index, not isolated; finite index above the bound: undecided
            key = _lattice_key(_lattice_echelon(S))
            if key in index_keys:
                return True
            if len(key) < n:
                return False
            return None
    if family:
        metrics = check_family(family, heights, props,
                               ground_truth_isolated=truth if not corpus.startswith("quasi:") else None)
        prof = chabauty_profile(family, heights)
        # "perfect" only contradicts r <= w once the window resolves every member
        resolved = all(resolution_height(S, heights) is not None for S in family)
        for S, r, mt in zip(family, prof.final, metrics):
            if resolution_height(S, heights) is None:
                continue
            if r is None and not resolved:
                props["cb_at_most_w"].skipped += 1
                continue
            props["cb_at_most_w"].check(r is not None and r <= mt["w"], {"S": sj(S), "empirical": r,
                                                                        "w": mt["w"]})
        extra["members"] = len(family)
        extra["attained"] = sum(1 for r, mt in zip(prof.final, metrics) if r == mt["w"])
        gaps = {}
        for S in family:
            for p in relevant_primes(S):
                g = ell_gap(S, p)
                gaps[str(g)] = gaps.get(str(g), 0) + 1
        extra["ell_gap_histogram"] = dict(sorted(gaps.items()))
        if corpus.startswith("quasi:"):
            ever = [any(row[i] is not None for row in prof.ranks) for i in range(len(family))]
            dense = all(ever[j] for j in range(len(family) - 1) if p ** (j + 1) <= heights[-1])
            props["quasi_truncation"] = _Property("quasi_truncation")
            props["quasi_truncation"].check(dense and not ever[-1],
                                            {"isolated_at_some_window": ever})
    report["properties"] = [pr.to_json() for pr in props.values() if pr.checked]
    report.update(extra)
    report["pass"] = all(pr["pass"] for pr in report["properties"])
    return report


# ------------------------------------------------------- seeded corpora

CORPUS_PRIMES = (2, 3, 5)


def random_group(rng, critical=None, max_blocks=4, primes=CORPUS_PRIMES, families=False):
    """A random description; critical=True/False forces (non-)criticality of minimax output."""
    from .invariants import critical_primes
    while True:
        blocks = []
        for _ in range(rng.randint(1, max_blocks)):
            kind = rng.choice(("free", "free", "cyclic", "quasi"))
            if kind == "free":
                P = tuple(sorted(set(rng.sample(primes, rng.randint(0, 2)))))
                blocks.append((Free(P), rng.randint(1, 2)))
            elif kind == "cyclic":
                blocks.append((Cyclic(rng.choice(primes), rng.randint(1, 2)), rng.randint(1, 2)))
            else:
                blocks.append((Quasi(rng.choice(primes)), rng.randint(1, 2)))
        if critical is True:
            blocks.append((Quasi(rng.choice(primes)), 2))
        fams = []
        if families:
            # make the group non-minimax: an omega-multiplicity block or an all-primes family
            if rng.random() < 0.5:
                b, _ = blocks[rng.randrange(len(blocks))]
                blocks.append((b, OMEGA))
            else:
                fams.append(rng.choice(("cyclic", "free", "quasi")))
            return GroupDesc(blocks, fams)
        G = GroupDesc(blocks)
        if critical is None or bool(critical_primes(G)) == critical:
            return G


def classification_corpus(seed=0, size=200):
    """Tagged descriptions: (G, tag) with tag in noncritical, critical, nonminimax, by construction."""
    rng = random.Random(seed)
    tags = ("noncritical", "critical", "nonminimax")
    out = []
    for i in range(size):
        tag = tags[i % 3]
        if tag == "nonminimax":
            G = random_group(rng, families=True)
        else:
            G = random_group(rng, critical=(tag == "critical"))
        out.append((G, tag))
    return out


def random_element_coords(A, rng, P=frozenset(), bound=3):
    """Coordinates of a random element that can carry the localization set P."""
    coords = []
    for b in A.instances():
        if isinstance(b, Free):
            if not set(P) <= set(b.primes) or rng.random() < 0.3:
                coords.append(Fraction(0))
                continue
            den = 1
            for p in b.primes:
                den *= p ** rng.randint(0, 1)
            coords.append(Fraction(rng.randint(-bound, bound), den))
        elif isinstance(b, Cyclic):
            coords.append(0 if b.p in P else rng.randrange(b.order))
        else:
            if b.p in P:
                coords.append(Fraction(0))
            else:
                q = b.p ** rng.randint(0, 2)
                coords.append(Fraction(rng.randrange(q), q))
    return coords


def random_subgroup(A, rng, max_gens=3):
    """A random valid subgroup of a minimax description."""
    from .subgroup_calc import quasi_indices, subgroup
    prim = A.primes()
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        P = frozenset(rng.sample(prim, rng.randint(0, min(2, len(prim))))) if prim else frozenset()
        gens.append((random_element_coords(A, rng, P), P))
    qc = []
    qps = sorted({b.p for b in A.instances() if isinstance(b, Quasi)})
    for p in qps:
        k = len(quasi_indices(A, p))
        for _ in range(rng.randint(0, 2)):
            qc.append((p, [rng.randint(-2, 2) for _ in range(k)]))
    return subgroup(A, gens, qc)
