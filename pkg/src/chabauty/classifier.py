"""Homeomorphism type of the space of subgroups.

Three shapes occur for countable abelian groups:

    cantor      the Cantor set K (groups that are not minimax)
    scattered   D^m x [n], D a convergent sequence with its limit (non-critical minimax)
    dusty       D^s x W, W the Cantor set plus a dense open countable discrete set
"""
from dataclasses import dataclass

from .groupdsl import parse
from .invariants import critical_primes, height, nA, sigma


@dataclass(frozen=True)
class SpaceType:
    kind: str
    m: int = None
    n: int = None
    sigma: int = None

    @property
    def cb_rank(self):
        if self.kind == "cantor":
            return "perfect"
        if self.kind == "scattered":
            return self.m + 1
        return self.sigma + 1

    @property
    def countable(self):
        return self.kind == "scattered"

    def text(self):
        if self.kind == "cantor":
            return "K"
        if self.kind == "scattered":
            return "D^%d x [%d]" % (self.m, self.n)
        return "D^%d x W" % self.sigma

    def to_json(self):
        out = {"type": self.kind}
        if self.kind == "scattered":
            out.update(m=self.m, n=self.n)
        elif self.kind == "dusty":
            out["sigma"] = self.sigma
        out.update(cb_rank=self.cb_rank, countable=self.countable)
        return out


def cantor():
    return SpaceType("cantor")


def scattered(m, n):
    if m < 0 or n < 1:
        raise ValueError("D^m x [n] needs m >= 0 and n >= 1")
    return SpaceType("scattered", m=m, n=n)


def dusty(s):
    if s < 0:
        raise ValueError("D^s x W needs s >= 0")
    return SpaceType("dusty", sigma=s)


def _group(G):
    return parse(G) if isinstance(G, str) else G


def classify(G):
    G = _group(G)
    if not G.is_minimax:
        return cantor()
    if critical_primes(G):
        return dusty(sigma(G))
    return scattered(height(G), nA(G))


def cb_rank_of_space(G):
    return classify(G).cb_rank


def homeo_equal(G1, G2):
    """(decision, clause): clause is 'i', 'ii', 'iii' when the spaces match, else None."""
    G1, G2 = _group(G1), _group(G2)
    decision, clause = False, None
    if not G1.is_minimax and not G2.is_minimax:
        decision, clause = True, "i"
    elif G1.is_minimax and G2.is_minimax:
        c1, c2 = bool(critical_primes(G1)), bool(critical_primes(G2))
        if not c1 and not c2 and height(G1) == height(G2) and nA(G1) == nA(G2):
            decision, clause = True, "ii"
        elif c1 and c2 and sigma(G1) == sigma(G2):
            decision, clause = True, "iii"
    assert decision == (classify(G1) == classify(G2)), "clause decision disagrees with the space types"
    return decision, clause
