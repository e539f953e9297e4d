"""Acceptance criteria, one test per criterion.

Each test prints a single line "criterion N: PASS|FAIL  detail". Run as a
script to get the twelve lines without pytest.
"""
import functools
import random
import sys
import time
from itertools import product

import numpy as np
import pytest
from sympy.utilities.iterables import partitions

from chabauty.classifier import cb_rank_of_space, classify, dusty, homeo_equal, scattered
from chabauty.errors import PreconditionFailed, SizeBound
from chabauty.groupdsl import OMEGA, parse
from chabauty.invariants import count_subgroups_pgroup, critical_primes, local_counts
from chabauty.oracle import (_lattice_bits, _lattice_echelon, _lattice_key, chabauty_profile,
                             classification_corpus, count_subgroups_exhaustive, enumerate_bounded_index,
                             fg_corpus, fingerprint, lattice_index, random_group, random_subgroup, window)
from chabauty.subgroup_calc import (are_commensurable, converges_to, converging_sequence, descend_level,
                                    descend_weight, ell_S, level, leveled_weight, quotient_invariants,
                                    rank_report, rank_S, relevant_primes, subgroup, tau_S, weight)


def _report(n, ok, detail, seconds):
    line = "criterion %d: %s  %s (%.2fs)" % (n, "PASS" if ok else "FAIL", detail, seconds)
    if _report.capsys is not None:
        with _report.capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


_report.capsys = None


def timed(fn):
    @functools.wraps(fn)
    def run():
        t = time.perf_counter()
        ok, detail = fn()
        return ok, detail, time.perf_counter() - t
    return run


# ------------------------------------------------------------------ corpora

def scattered_table():
    out = []
    for h in range(5):
        for n in range(1, 5):
            text = " + ".join(([("Z^%d" % h)] if h else []) + ["Z/%d" % 2 ** (n - 1)])
            out.append((parse(text), h, n))
    return out


def dusty_table():
    out = []
    for s in range(4):
        for e in (2, 3):
            text = "(C[2^inf])^%d" % e + (" + Z^%d" % s if s else "")
            out.append((parse(text), s))
    return out


@functools.lru_cache(None)
def classification_groups():
    return classification_corpus(seed=0, size=200)


@functools.lru_cache(None)
def pair_corpus(critical, size, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        A = random_group(rng, critical=critical)
        out.append(random_subgroup(A, rng))
    return out


# ----------------------------------------------------------------- criteria

@timed
def crit1():
    bad = []
    for G, h, n in scattered_table():
        if classify(G) != scattered(h, n) or cb_rank_of_space(G) != h + 1:
            bad.append((h, n))
    return not bad, "%d groups, mismatches %s" % (len(scattered_table()), bad)


@timed
def crit2():
    bad = [s for G, s in dusty_table() if classify(G) != dusty(s)]
    return not bad, "%d groups, mismatches %s" % (len(dusty_table()), bad)


@timed
def crit3():
    bad = []
    counts = {}
    for G, tag in classification_groups():
        kind = classify(G).kind
        counts[tag] = counts.get(tag, 0) + 1
        if (kind == "scattered") != (tag == "noncritical") or (kind == "cantor") != (tag == "nonminimax"):
            bad.append((str(G), tag, kind))
    return not bad, "corpus %s, mismatches %d" % (dict(sorted(counts.items())), len(bad))


def _partition_tuples(k):
    for part in partitions(k):
        yield tuple(sorted((a for a, m in part.items() for _ in range(m)), reverse=True))


@timed
def crit4():
    bad, n = [], 0
    for p, K in ((2, 10), (3, 6), (5, 4)):
        for k in range(1, K + 1):
            for lam in _partition_tuples(k):
                n += 1
                if count_subgroups_pgroup(lam, p) != count_subgroups_exhaustive(lam, p):
                    bad.append((p, lam))
    named = count_subgroups_pgroup((2, 1), 2) == 8 and count_subgroups_pgroup((1, 1), 2) == 5
    return not bad and named, "%d p-groups, mismatches %s, Z/4+Z/2 and (Z/2)^2 named: %s" % (n, bad, named)


def _strata_mismatches(family, windows):
    prof = chabauty_profile(family, windows)
    predicted = [weight(S) for S in family]
    wrong = [(i, r, w) for i, (r, w) in enumerate(zip(prof.final, predicted)) if r != w]
    return prof, predicted, wrong


@timed
def crit5():
    fam = [subgroup("Z", [((n,), ())]) for n in range(1, 51)] + [subgroup("Z")]
    prof, predicted, wrong = _strata_mismatches(fam, [1, 2, 4, 8, 16, 32, 64])
    shown = ["%s: empirical %s, w %d" % ("{0}" if i == 50 else "%dZ" % (i + 1), r, w) for i, r, w in wrong]
    return not wrong, "%d members at height 64, mismatches %s" % (len(fam), shown[:4])


def z2_family():
    G = parse("Z^2")
    fam = enumerate_bounded_index(G, 12, max_index=12)
    keys = {_lattice_key(_lattice_echelon(S)) for S in fam}
    for a, b in product(range(-5, 6), repeat=2):
        if (a, b) == (0, 0):
            continue
        S = subgroup(G, [((a, b), ())])
        k = _lattice_key(_lattice_echelon(S))
        if k not in keys:
            keys.add(k)
            fam.append(S)
    fam.append(subgroup(G))
    return fam


@timed
def crit6():
    fam = z2_family()
    prof, predicted, wrong = _strata_mismatches(fam, [1, 2, 4, 8, 16])
    by_w = {}
    for i, r, w in wrong:
        by_w.setdefault(w, set()).add(r)
    idx4 = sum(1 for S, k in enumerate_bounded_index(parse("Z^2"), 4, with_keys=True)
               if lattice_index(2, (), k) == 4)
    return not wrong and idx4 == 7, ("%d members, %d rank mismatches (predicted w -> empirical ranks %s), "
                                    "index-4 sublattices %d" % (len(fam), len(wrong), by_w, idx4))


@timed
def crit7():
    bad = 0
    corpus = pair_corpus(True, 500, 7)
    for S in corpus:
        A = S.ambient
        cr = critical_primes(A)
        Q = quotient_invariants(S)
        via_f = all(Q.kappa(p) == 0 and ell_S(S, p) == 0 for p in cr)
        R = rank_report(S)
        if (level(S) == 0) != via_f or R.scattered != via_f or R.extCB != leveled_weight(S):
            bad += 1
    return bad == 0, "%d critical instances, violations %d" % (len(corpus), bad)


@functools.lru_cache(None)
def full_corpus():
    out = list(pair_corpus(True, 500, 7)) + list(pair_corpus(False, 500, 8))
    for G in ("Z^2", "Z^2 + Z/4", "Z + Z/2"):
        out += fg_corpus(parse(G), max_index=6)
    return out


@timed
def crit8():
    bad, checks = 0, 0
    for S in full_corpus():
        loc = local_counts(S.ambient)
        Q = quotient_invariants(S)
        for p in set(relevant_primes(S)) | set(loc):
            t = loc.get(p, (0, 0, 0))[1]
            total = tau_S(S, p) + Q.tau(p)
            checks += 1
            if total < t or (rank_S(S) == 0 and total != t):
                bad += 1
    return bad == 0, "%d subgroups, %d prime checks, violations %d" % (len(full_corpus()), checks, bad)


@timed
def crit9():
    rng = random.Random(9)
    done = {"weight": 0, "level": 0}
    bad = 0
    while min(done.values()) < 100:
        A = random_group(rng)
        S = random_subgroup(A, rng)
        a = rank_report(S)
        if done["weight"] < 100:
            try:
                H = descend_weight(S)
                b = rank_report(H)
                done["weight"] += 1
                bad += not (b.w == a.w - 1 and b.lam == a.lam and converges_to(H, S))
            except PreconditionFailed:
                pass
        if done["level"] < 100:
            try:
                H = descend_level(S)
                b = rank_report(H)
                done["level"] += 1
                bad += not (b.lam == a.lam - 1 and b.d == a.d and converges_to(H, S))
            except PreconditionFailed:
                pass
    return bad == 0, "applicable descents %s, violations %d" % (done, bad)


@timed
def crit10():
    # an index <= 8 subgroup S contains [G:S] G, hence K = M Z^2 + 0 for every multiple M
    # of [G:S]; all indices of a pair are then counted in the finite group G/K = (Z/M)^2 + Z/4
    G = parse("Z^2 + Z/4")
    subs = enumerate_bounded_index(G, 8, max_index=8, with_keys=True)
    idx = [lattice_index(2, (4,), k) for _, k in subs]
    ech = [_lattice_echelon(S) for S, _ in subs]
    reps, bits = {}, {}

    def members(i, M):
        if M not in reps:
            reps[M] = np.array(list(product(range(M), range(M), range(4))), np.int64)
        if (i, M) not in bits:
            bits[(i, M)] = _lattice_bits(ech[i], reps[M])
        return bits[(i, M)]

    bad, index_bad = 0, 0
    for i in range(len(subs)):
        M = idx[i]
        size = int(members(i, M).sum())
        index_bad += 4 * M * M != idx[i] * size
    for i in range(len(subs)):
        for j in range(len(subs)):
            M = np.lcm(idx[i], idx[j])
            a, b = members(i, M), members(j, M)
            meet = int((a & b).sum())
            truth = meet > 0 and a.sum() % meet == 0 and b.sum() % meet == 0
            bad += are_commensurable(subs[i][0], subs[j][0]) != truth
    return bad == 0 and index_bad == 0, ("%d subgroups, %d pairs, disagreements %d, index mismatches %d"
                                         % (len(subs), len(subs) ** 2, bad, index_bad))


@timed
def crit11():
    rng = random.Random(11)
    pairs, bad, nontrivial = 0, 0, 0
    while pairs < 50:
        A = random_group(rng, max_blocks=2)
        H, S = random_subgroup(A, rng), random_subgroup(A, rng)
        if not converges_to(H, S):
            continue
        wins = []
        for h in (1, 2, 3):
            try:
                wins.append(window(A, h, max_size=1500))
            except SizeBound:
                break
        if not wins:
            continue
        pairs += 1
        nontrivial += H != S
        terms = [converging_sequence(H, S, k) for k in range(1, 16)]
        ok = all(are_commensurable(T, H) for T in terms)
        for W in wins:
            target = fingerprint(S, W)
            ok = ok and all(fingerprint(T, W) == target for T in terms[-3:])
        bad += not ok
    return bad == 0, "%d pairs (%d with H != S), 15 terms, violations %d" % (pairs, nontrivial, bad)


@timed
def crit12():
    groups = [G for G, _, _ in scattered_table()] + [G for G, _ in dusty_table()] + [G for G, _ in classification_groups()]
    types = [classify(G) for G in groups]
    bad = 0
    for i, G in enumerate(groups):
        for j, H in enumerate(groups):
            bad += homeo_equal(G, H)[0] != (types[i] == types[j])
    return bad == 0, "%d groups, %d pairs, disagreements %d" % (len(groups), len(groups) ** 2, bad)


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11, crit12]
TIME_LIMITS = {1: 1.0, 2: 1.0, 4: 30.0, 5: 1.0, 6: 10.0}


@pytest.mark.parametrize("n", range(1, 13))
def test_criterion(n, capsys):
    _report.capsys = capsys
    ok, detail, seconds = CRITERIA[n - 1]()
    limit = TIME_LIMITS.get(n)
    if limit is not None and seconds > limit:
        ok, detail = False, detail + ", over the %.0fs budget" % limit
    _report(n, ok, detail, seconds)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail, seconds = fn()
        limit = TIME_LIMITS.get(n)
        if limit is not None and seconds > limit:
            ok, detail = False, detail + ", over the %.0fs budget" % limit
        results.append(_report(n, ok, detail, seconds))
    sys.exit(0 if all(results) else 1)
