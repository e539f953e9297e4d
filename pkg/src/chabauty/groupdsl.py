"""Group descriptions: blocks, normal form, text parser/printer, elements.

A description is a direct sum of elementary blocks with multiplicities,
plus optional families instantiated once at every prime:

    Free(P)      Z[1/n] with n the product of the primes in P (P empty is Z)
    Cyclic(p,k)  Z/p^k
    Quasi(p)     the quasi-cyclic group Z[1/p]/Z

Grammar (whitespace-insensitive):

    expr     := term ("+" term)*
    term     := atom ("^" mult)?
    atom     := "Z" | "Z[1/" nat "]" | "Z/" nat | "C[" nat "^inf]"
              | "(" expr ")" | "sum_p(" template ")" | "0"
    mult     := nat | "w"
    template := "Z/p" | "Z[1/p]" | "C[p^inf]"
"""
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint, isprime

from .errors import IllDefinedScalar, NonMinimax, ParseError

OMEGA = "w"


@dataclass(frozen=True)
class Free:
    primes: tuple = ()

    def sort_key(self):
        return (0, self.primes)

    def text(self):
        if not self.primes:
            return "Z"
        n = 1
        for p in self.primes:
            n *= p
        return "Z[1/%d]" % n


@dataclass(frozen=True)
class Cyclic:
    p: int
    k: int

    def sort_key(self):
        return (1, (self.p, self.k))

    @property
    def order(self):
        return self.p ** self.k

    def text(self):
        return "Z/%d" % self.order


@dataclass(frozen=True)
class Quasi:
    p: int

    def sort_key(self):
        return (2, (self.p,))

    def text(self):
        return "C[%d^inf]" % self.p


# per-prime templates of sum_p(...) families
FAMILY_TEXT = {"cyclic": "Z/p", "free": "Z[1/p]", "quasi": "C[p^inf]"}


def _add_mult(a, b):
    if a == OMEGA or b == OMEGA:
        return OMEGA
    return a + b


def _scale_mult(a, k):
    if k == 0:
        return 0
    if a == OMEGA or k == OMEGA:
        return OMEGA
    return a * k


class GroupDesc:
    """Normalized, immutable group description."""

    __slots__ = ("blocks", "families", "_instances")

    def __init__(self, blocks=(), families=()):
        merged = {}
        for block, m in blocks:
            if m == 0:
                continue
            merged[block] = _add_mult(merged.get(block, 0), m)
        order = sorted(merged, key=lambda b: b.sort_key())
        object.__setattr__(self, "blocks", tuple((b, merged[b]) for b in order))
        object.__setattr__(self, "families", tuple(sorted(families)))
        object.__setattr__(self, "_instances", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupDesc is immutable")

    def __eq__(self, other):
        return (isinstance(other, GroupDesc) and self.blocks == other.blocks
                and self.families == other.families)

    def __hash__(self):
        return hash((self.blocks, self.families))

    def __repr__(self):
        return "GroupDesc(%r)" % to_text(self)

    def __add__(self, other):
        return GroupDesc(self.blocks + other.blocks, self.families + other.families)

    @property
    def is_minimax(self):
        return not self.families and all(m != OMEGA for _, m in self.blocks)

    @property
    def is_finite(self):
        return self.is_minimax and all(isinstance(b, Cyclic) for b, _ in self.blocks)

    @property
    def is_finitely_generated(self):
        return self.is_minimax and all(
            isinstance(b, Cyclic) or (isinstance(b, Free) and not b.primes)
            for b, _ in self.blocks)

    def instances(self):
        """Block instances in canonical order (one entry per copy)."""
        if self._instances is None:
            if not self.is_minimax:
                raise NonMinimax("element layout needs a minimax description")
            out = []
            for b, m in self.blocks:
                out.extend([b] * m)
            object.__setattr__(self, "_instances", tuple(out))
        return self._instances

    def primes(self):
        """Primes occurring anywhere in the blocks."""
        ps = set()
        for b, _ in self.blocks:
            if isinstance(b, Free):
                ps.update(b.primes)
            else:
                ps.add(b.p)
        return sorted(ps)

    def order(self):
        n = 1
        for b, m in self.blocks:
            if not isinstance(b, Cyclic) or m == OMEGA:
                return None
            n *= b.order ** m
        return n


def trivial():
    return GroupDesc()


def free(*primes, mult=1):
    return GroupDesc([(Free(tuple(sorted(set(primes)))), mult)])


def cyclic(n, mult=1):
    """Z/n split into prime-power blocks."""
    if n <= 0:
        raise ValueError("Z/n needs n >= 1")
    return GroupDesc([(Cyclic(p, k), mult) for p, k in factorint(n).items()])


def quasi(p, mult=1):
    if not isprime(p):
        raise ValueError("quasi-cyclic base must be prime")
    return GroupDesc([(Quasi(p), mult)])


# ---------------------------------------------------------------- printer

def to_text(G):
    parts = []
    for b, m in G.blocks:
        s = b.text()
        if m == OMEGA:
            s += "^w"
        elif m != 1:
            s += "^%d" % m
        parts.append(s)
    for fam in G.families:
        parts.append("sum_p(%s)" % FAMILY_TEXT[fam])
    return " + ".join(parts) if parts else "0"


# ----------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text):
        self.chars = [(c, i) for i, c in enumerate(text) if not c.isspace()]
        self.src = "".join(c for c, _ in self.chars)
        self.i = 0
        self.end = len(text)

    def pos(self):
        if self.i < len(self.chars):
            return self.chars[self.i][1]
        return self.end

    def fail(self, msg):
        raise ParseError(msg, self.pos())

    def peek(self, s):
        return self.src.startswith(s, self.i)

    def eat(self, s):
        if self.peek(s):
            self.i += len(s)
            return True
        return False

    def expect(self, s):
        if not self.eat(s):
            self.fail("expected %r" % s)

    def nat(self):
        j = self.i
        while j < len(self.src) and self.src[j].isdigit():
            j += 1
        if j == self.i:
            self.fail("expected a natural number")
        v = int(self.src[self.i:j])
        self.i = j
        return v

    def parse(self):
        if not self.src:
            return GroupDesc()
        g = self.expr()
        if self.i != len(self.src):
            self.fail("unexpected character %r" % self.src[self.i])
        return g

    def expr(self):
        g = self.term()
        while self.eat("+"):
            g = g + self.term()
        return g

    def term(self):
        g = self.atom()
        if self.eat("^"):
            at = self.pos()
            if self.eat("w"):
                if g.families:
                    raise ParseError("a prime family cannot carry multiplicity w", at)
                return GroupDesc([(b, _scale_mult(m, OMEGA)) for b, m in g.blocks])
            k = self.nat()
            return GroupDesc([(b, _scale_mult(m, k)) for b, m in g.blocks],
                             g.families * k)
        return g

    def atom(self):
        at = self.pos()
        if self.eat("sum_p("):
            for kind, text in FAMILY_TEXT.items():
                if self.eat(text):
                    self.expect(")")
                    return GroupDesc(families=[kind])
            self.fail("unknown prime-family template")
        if self.eat("("):
            g = self.expr()
            self.expect(")")
            return g
        if self.eat("Z[1/"):
            n = self.nat()
            self.expect("]")
            if n == 0:
                raise ParseError("Z[1/0] is not a group", at)
            return free(*factorint(n).keys())
        if self.eat("Z/"):
            n = self.nat()
            if n == 0:
                raise ParseError("Z/0 is rejected; write Z", at)
            return cyclic(n)
        if self.eat("Z"):
            return free()
        if self.eat("C["):
            q = self.nat()
            self.expect("^inf]")
            if not isprime(q):
                raise ParseError("C[q^inf] needs a prime base, got %d" % q, at)
            return quasi(q)
        if self.eat("0"):
            return GroupDesc()
        self.fail("expected a group atom")


def parse(text):
    return _Parser(text).parse()


# --------------------------------------------------------------- elements

def _qc_value(x, p):
    """Reduce a rational mod 1 and check it has p-power denominator."""
    x = Fraction(x) % 1
    d = x.denominator
    while d % p == 0:
        d //= p
    if d != 1:
        raise ValueError("quasi-cyclic coordinate must have a %d-power denominator" % p)
    return x


def _free_ok(x, primes):
    d = x.denominator
    for p in primes:
        while d % p == 0:
            d //= p
    return d == 1


def check_coord(block, x):
    """Return the canonical form of coordinate x for block, or raise ValueError."""
    if isinstance(block, Free):
        x = Fraction(x)
        if not _free_ok(x, block.primes):
            raise ValueError("%s is not in %s" % (x, block.text()))
        return x
    if isinstance(block, Cyclic):
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("Z/p^k coordinate must be an integer residue")
        return int(x) % block.order
    return _qc_value(x, block.p)


class Element:
    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        inst = group.instances()
        if len(coords) != len(inst):
            raise ValueError("expected %d coordinates, got %d" % (len(inst), len(coords)))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", tuple(check_coord(b, x) for b, x in zip(inst, coords)))

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def __eq__(self, other):
        return isinstance(other, Element) and self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Element(%s)" % ", ".join(str(c) for c in self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)


def zero(G):
    return Element(G, [0] * len(G.instances()))


def add(G, x, y):
    return Element(G, [a + b for a, b in zip(x.coords, y.coords)])


def negate(G, x):
    return Element(G, [-a for a in x.coords])


def scalar_multiply(G, q, x):
    """q*x for rational q; raises IllDefinedScalar if some coordinate is ambiguous."""
    q = Fraction(q)
    a, b = q.numerator, q.denominator
    out = []
    for i, (block, c) in enumerate(zip(G.instances(), x.coords)):
        if c == 0:
            out.append(0)
            continue
        if isinstance(block, Free):
            v = q * c
            if not _free_ok(v, block.primes):
                raise IllDefinedScalar("%s * %s leaves %s in coordinate %d"
                                       % (q, c, block.text(), i), i)
            out.append(v)
        elif isinstance(block, Cyclic):
            if b % block.p == 0:
                raise IllDefinedScalar("denominator of %s is not invertible mod %d in coordinate %d"
                                       % (q, block.order, i), i)
            out.append(a * c * pow(b, -1, block.order))
        else:
            if b % block.p == 0:
                raise IllDefinedScalar("%s * %s is multivalued in coordinate %d"
                                       % (q, c, i), i)
            m = c.denominator
            out.append(Fraction(a * c.numerator * pow(b, -1, m) % m, m))
    return Element(G, out)
