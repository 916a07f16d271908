"""Group classes: symbolic expressions, membership, residuals and radicals.

A class expression is an atom (abelian, nilpotent, pi-groups, ...) or a
product built from atoms:

* ``X * F`` is the formation product: groups whose F-residual lies in X.
* ``H . X`` is the Fitting product: groups G with G / G_H in X.

Closure properties come from a static table (``flags``) rather than from
inference; residual and radical computations re-check their own result so
that a wrong table entry shows up as an exception instead of a silent error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from normlab._bits import bool_to_mask, mask_of
from normlab.group import (
    FiniteGroup,
    GroupError,
    Subgroup,
    memoized,
    p_part,
    prime_divisors,
)
from normlab.lattice import frattini_subgroup, normal_subgroups
from normlab.reports import FAIL, PASS, SKIP, PropositionReport


class ClassError(GroupError):
    pass


class UnsupportedClass(ClassError):
    pass


class FormationWitnessFailure(ClassError):
    pass


class FittingWitnessFailure(ClassError):
    pass


class ClassParseError(ClassError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def is_prime(n: int) -> bool:
    return n >= 2 and prime_divisors(n) == (n,)


# -- prime sets ---------------------------------------------------------------


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, or the complement of one (``cofinite``)."""

    primes: frozenset = frozenset()
    cofinite: bool = False

    def __post_init__(self):
        bad = [p for p in self.primes if not is_prime(int(p))]
        if bad:
            raise ValueError(f"not primes: {sorted(bad)}")
        object.__setattr__(self, "primes", frozenset(int(p) for p in self.primes))

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(frozenset(primes))

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def complement(self) -> "PrimeSet":
        return PrimeSet(self.primes, not self.cofinite)

    @property
    def is_all(self) -> bool:
        return self.cofinite and not self.primes

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    @property
    def size(self) -> int | None:
        """Number of primes, or None when infinite."""
        return None if self.cofinite else len(self.primes)

    def restrict(self, primes: Iterable[int]) -> tuple[int, ...]:
        return tuple(p for p in primes if p in self)

    def issubset(self, other: "PrimeSet") -> bool:
        if not self.cofinite:
            return all(p in other for p in self.primes)
        return other.cofinite and other.primes <= self.primes

    def union(self, other: "PrimeSet") -> "PrimeSet":
        if not self.cofinite and not other.cofinite:
            return PrimeSet(self.primes | other.primes)
        if self.cofinite and other.cofinite:
            return PrimeSet(self.primes & other.primes, True)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return PrimeSet(cof.primes - fin.primes, True)

    def is_number(self, n: int) -> bool:
        """True when every prime divisor of n lies in the set."""
        return all(p in self for p in prime_divisors(n))

    def __str__(self) -> str:
        if self.is_all:
            return "P"
        body = "{" + ",".join(str(p) for p in sorted(self.primes)) + "}"
        return body + ("'" if self.cofinite else "")

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        return _Parser(text).parse_primeset_only()


ALL_PRIMES = PrimeSet(frozenset(), True)
NO_PRIMES = PrimeSet(frozenset())


# -- expressions --------------------------------------------------------------


class ClassExpr:
    def __mul__(self, other: "ClassExpr") -> "FormationProduct":
        return FormationProduct(self, other)

    def diamond(self, other: "ClassExpr") -> "FittingProduct":
        return FittingProduct(self, other)

    @property
    def flags(self) -> "ClassFlags":
        return flags(self)

    def __str__(self) -> str:
        return render(self)


ATOM_NAMES = ("1", "G", "Gpi", "A", "N", "Nc", "U", "S", "Spi", "Npi", "Tsigma", "Cpi",
              "Nr", "Ldec", "Aexp")
_PRIMESET_ATOMS = {"Gpi", "Spi", "Npi", "Cpi"}
_INT_ATOMS = {"Nc": 1, "Nr": 1, "Aexp": 1}


@dataclass(frozen=True)
class Atom(ClassExpr):
    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in ATOM_NAMES:
            raise UnsupportedClass(f"unknown class atom {self.name!r}")
        n, ps = self.name, self.params
        if n in _PRIMESET_ATOMS:
            if len(ps) != 1 or not isinstance(ps[0], PrimeSet):
                raise ValueError(f"{n} takes one prime set")
        elif n in _INT_ATOMS:
            if len(ps) != 1 or not isinstance(ps[0], int) or ps[0] < _INT_ATOMS[n]:
                raise ValueError(f"{n} takes one integer >= {_INT_ATOMS[n]}")
        elif n == "Ldec":
            if len(ps) != 1 or not is_prime(ps[0]):
                raise ValueError("Ldec takes one prime")
        elif n == "Tsigma":
            if not ps or len(set(ps)) != len(ps) or not all(is_prime(p) for p in ps):
                raise ValueError("Tsigma takes an ordering of distinct primes")
        elif ps:
            raise ValueError(f"{n} takes no parameters")

    __str__ = ClassExpr.__str__


@dataclass(frozen=True)
class FormationProduct(ClassExpr):
    """X * F: groups whose F-residual belongs to X."""

    X: ClassExpr
    F: ClassExpr

    __str__ = ClassExpr.__str__


@dataclass(frozen=True)
class FittingProduct(ClassExpr):
    """H . X: groups whose quotient by the H-radical belongs to X."""

    H: ClassExpr
    X: ClassExpr

    __str__ = ClassExpr.__str__


def render(C: ClassExpr) -> str:
    if isinstance(C, Atom):
        if not C.params:
            return C.name
        if C.name == "Tsigma":
            return "Tsigma(" + "<".join(str(p) for p in C.params) + ")"
        return f"{C.name}({C.params[0]})"
    if isinstance(C, FormationProduct):
        left = render(C.X) if isinstance(C.X, Atom) else f"({render(C.X)})"
        right = render(C.F) if not isinstance(C.F, FittingProduct) else f"({render(C.F)})"
        return f"{left} * {right}"
    left = render(C.H) if isinstance(C.H, Atom) else f"({render(C.H)})"
    return f"{left} . {render(C.X)}"


ONE = Atom("1")
ALL = Atom("G")
ABELIAN = Atom("A")
NILPOTENT = Atom("N")
SUPERSOLVABLE = Atom("U")
SOLVABLE = Atom("S")


def Gpi(pi) -> Atom:
    return Atom("Gpi", (_ps(pi),))


def Npi(pi) -> Atom:
    return Atom("Npi", (_ps(pi),))


def Spi(pi) -> Atom:
    return Atom("Spi", (_ps(pi),))


def Cpi(pi) -> Atom:
    return Atom("Cpi", (_ps(pi),))


def Nc(c: int) -> Atom:
    return Atom("Nc", (c,))


def Nr(r: int) -> Atom:
    return Atom("Nr", (r,))


def Ldec(p: int) -> Atom:
    return Atom("Ldec", (p,))


def Aexp(m: int) -> Atom:
    return Atom("Aexp", (m,))


def Tsigma(*order: int) -> Atom:
    return Atom("Tsigma", tuple(order))


def _ps(pi) -> PrimeSet:
    if isinstance(pi, PrimeSet):
        return pi
    if isinstance(pi, int):
        return PrimeSet.of(pi)
    return PrimeSet(frozenset(pi))


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<sym>[(){},'*.<]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ClassParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ClassParseError(f"expected {value or kind}, found end of input", len(self.text))
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            raise ClassParseError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    def parse(self) -> ClassExpr:
        if not self.tokens:
            raise ClassParseError("empty class expression", 0)
        expr = self.fitting()
        if self.peek() is not None:
            raise ClassParseError(f"unexpected {self.peek()[1]!r}", self.pos())
        return expr

    def fitting(self) -> ClassExpr:
        left = self.formation()
        if self.at("."):
            self.take(".")
            return FittingProduct(left, self.fitting())
        return left

    def formation(self) -> ClassExpr:
        left = self.primary()
        if self.at("*"):
            self.take("*")
            return FormationProduct(left, self.formation())
        return left

    def primary(self) -> ClassExpr:
        if self.at("("):
            self.take("(")
            e = self.fitting()
            self.take(")")
            return e
        start = self.pos()
        tok = self.peek()
        if tok is None:
            raise ClassParseError("expected a class atom", start)
        if tok[0] == "int" and tok[1] == "1":
            self.i += 1
            return ONE
        name = self.take(kind="name")[1]
        if name not in ATOM_NAMES:
            raise ClassParseError(f"unknown class atom {name!r}", start)
        try:
            if name in _PRIMESET_ATOMS:
                self.take("(")
                ps = self.primeset()
                self.take(")")
                return Atom(name, (ps,))
            if name in _INT_ATOMS or name == "Ldec":
                self.take("(")
                start = self.pos()
                v = int(self.take(kind="int")[1])
                self.take(")")
                return Atom(name, (v,))
            if name == "Tsigma":
                self.take("(")
                order = [int(self.take(kind="int")[1])]
                while self.at("<") or self.at(","):
                    self.i += 1
                    order.append(int(self.take(kind="int")[1]))
                self.take(")")
                return Atom(name, tuple(order))
            return Atom(name)
        except ValueError as exc:
            if isinstance(exc, ClassParseError):
                raise
            raise ClassParseError(str(exc), start) from None

    def primeset(self) -> PrimeSet:
        start = self.pos()
        try:
            if self.at("P"):
                self.take("P")
                ps = ALL_PRIMES
            elif self.at("{"):
                self.take("{")
                primes = []
                if not self.at("}"):
                    primes.append(int(self.take(kind="int")[1]))
                    while self.at(","):
                        self.take(",")
                        primes.append(int(self.take(kind="int")[1]))
                self.take("}")
                ps = PrimeSet(frozenset(primes))
            else:
                primes = [int(self.take(kind="int")[1])]
                while self.at(","):
                    self.take(",")
                    primes.append(int(self.take(kind="int")[1]))
                ps = PrimeSet(frozenset(primes))
        except ValueError as exc:
            if isinstance(exc, ClassParseError):
                raise
            raise ClassParseError(str(exc), start) from None
        if self.at("'"):
            self.take("'")
            ps = ps.complement()
        return ps

    def parse_primeset_only(self) -> PrimeSet:
        if not self.tokens:
            raise ClassParseError("empty prime set", 0)
        ps = self.primeset()
        if self.peek() is not None:
            raise ClassParseError(f"unexpected {self.peek()[1]!r}", self.pos())
        return ps


def parse_class(text: str) -> ClassExpr:
    """Parse the textual grammar, e.g. ``"Gpi({3}) * Npi({3})"`` or ``"N . U"``."""
    return _Parser(text).parse()


# -- closure flags --------------------------------------------------------------


@dataclass(frozen=True)
class ClassFlags:
    formation: bool
    fitting: bool
    saturated: bool
    s_closed: bool
    sn_closed: bool
    q_closed: bool
    e_closed: bool


def _f(formation, fitting, saturated, s, sn, q, e) -> ClassFlags:
    return ClassFlags(formation, fitting, saturated, s, sn, q, e)


# Standard closure facts (Doerk-Hawkes style); see the decisions ledger for choices.
_ATOM_FLAGS = {
    "1": _f(True, True, True, True, True, True, True),
    "G": _f(True, True, True, True, True, True, True),
    "Gpi": _f(True, True, True, True, True, True, True),
    "A": _f(True, False, False, True, True, True, False),
    "N": _f(True, True, True, True, True, True, False),
    "Nc": _f(True, False, False, True, True, True, False),
    "U": _f(True, False, True, True, True, True, False),
    "S": _f(True, True, True, True, True, True, True),
    "Spi": _f(True, True, True, True, True, True, True),
    "Npi": _f(True, True, True, True, True, True, False),
    "Tsigma": _f(True, False, True, True, True, True, False),
    "Cpi": _f(True, True, True, True, True, True, False),
    "Nr": _f(True, True, True, True, True, True, False),
    "Ldec": _f(True, True, True, True, True, True, False),
    "Aexp": _f(True, False, False, True, True, True, False),
}


def flags(C: ClassExpr) -> ClassFlags:
    if isinstance(C, Atom):
        return _ATOM_FLAGS[C.name]
    if isinstance(C, FormationProduct):
        x, f = flags(C.X), flags(C.F)
        if C.X == ALL:
            return _ATOM_FLAGS["G"]
        formation = x.formation and f.formation
        return ClassFlags(
            formation=formation,
            fitting=False,
            saturated=formation and x.saturated,
            s_closed=formation and x.s_closed and f.s_closed,
            sn_closed=formation and x.sn_closed and f.sn_closed,
            q_closed=formation and x.q_closed,
            e_closed=False,
        )
    h, x = flags(C.H), flags(C.X)
    # H . X coincides with H * X when H is a Fitting formation
    formation = h.fitting and h.formation and x.formation
    return ClassFlags(
        formation=formation,
        fitting=h.fitting and x.fitting,
        saturated=formation and h.saturated,
        s_closed=formation and h.s_closed and x.s_closed,
        sn_closed=formation and h.sn_closed and x.sn_closed,
        q_closed=formation and h.q_closed,
        e_closed=False,
    )


# -- subclass predicates (used by the boundary-condition ledger) -----------------


def class_primes(C: ClassExpr) -> PrimeSet:
    """pi(C): primes dividing the order of some member."""
    if isinstance(C, Atom):
        if C.name == "1":
            return NO_PRIMES
        if C.name == "Gpi":
            return C.params[0]
        if C.name == "Aexp":
            return PrimeSet(frozenset(prime_divisors(C.params[0])))
        return ALL_PRIMES
    if isinstance(C, FormationProduct):
        return class_primes(C.X).union(class_primes(C.F))
    return class_primes(C.H).union(class_primes(C.X))


def within_nilpotent(C: ClassExpr) -> bool:
    if isinstance(C, Atom):
        if C.name in ("1", "A", "N", "Nc", "Aexp"):
            return True
        if C.name == "Gpi":
            return (C.params[0].size or 0) <= 1 and not C.params[0].cofinite
        if C.name == "Npi":
            return C.params[0].is_all
    return False


def within_supersolvable(C: ClassExpr) -> bool:
    return within_nilpotent(C) or C == SUPERSOLVABLE


def within_odd(C: ClassExpr) -> bool:
    """C is contained in the class of groups of odd order."""
    if isinstance(C, Atom):
        if C.name == "1":
            return True
        if C.name == "Gpi":
            return 2 not in C.params[0]
        if C.name == "Aexp":
            return C.params[0] % 2 == 1
        return False
    if isinstance(C, FormationProduct):
        return within_odd(C.X) and within_odd(C.F)
    return within_odd(C.H) and within_odd(C.X)


def _gpi_solvable(ps: PrimeSet) -> bool:
    # {p,q}-groups are solvable (Burnside); odd-order groups too (Feit-Thompson)
    return not ps.cofinite and (2 not in ps or len(ps.primes) <= 2)


def within_solvable(C: ClassExpr) -> bool:
    if isinstance(C, Atom):
        n = C.name
        if n in ("1", "A", "N", "Nc", "U", "S", "Aexp", "Tsigma", "Nr"):
            return True
        if n == "Gpi":
            return _gpi_solvable(C.params[0])
        if n == "Npi":
            # the residual is a pi'-group; with 2 in pi it has odd order
            return 2 in C.params[0] or _gpi_solvable(C.params[0].complement())
        if n == "Spi":
            return C.params[0].is_all
        return False
    if isinstance(C, FormationProduct):
        return within_solvable(C.X) and within_solvable(C.F)
    return within_solvable(C.H) and within_solvable(C.X)


def sylow_tower_type(C: ClassExpr) -> str | None:
    """A description of some ordering sigma with C inside T_sigma, else None."""
    if within_nilpotent(C):
        return "any"
    if C == SUPERSOLVABLE:
        return "descending"
    if isinstance(C, Atom) and C.name == "Tsigma":
        return "<".join(str(p) for p in C.params)
    return None


def within_2_closed(C: ClassExpr) -> bool:
    """C is contained in the class of groups with a normal Sylow 2-subgroup."""
    if within_nilpotent(C):
        return True
    if isinstance(C, Atom):
        if C.name == "Gpi":
            ps = C.params[0]
            return 2 not in ps or (not ps.cofinite and ps.primes == {2})
        if C.name == "Cpi":
            return C.params[0] == PrimeSet.of(2)
        if C.name == "Ldec":
            return C.params[0] == 2
        if C.name == "Tsigma":
            return C.params[0] == 2
    return False


def within_2_nilpotent(C: ClassExpr) -> bool:
    """C is contained in the class of groups with a normal 2-complement."""
    if within_nilpotent(C):
        return True
    if isinstance(C, Atom):
        if C.name == "Npi":
            return 2 in C.params[0]
        if C.name == "Gpi":
            ps = C.params[0]
            return 2 not in ps or (not ps.cofinite and ps.primes == {2})
        if C.name == "Ldec":
            return C.params[0] == 2
    return False


def is_shemetkov(C: ClassExpr) -> bool:
    """Declared: every S-critical group is minimal non-nilpotent or of prime order."""
    return isinstance(C, Atom) and C.name in ("1", "G", "Gpi", "N", "Npi")


def contains_gpi(C: ClassExpr, sigma: PrimeSet) -> bool:
    """Decides whether every sigma-group lies in C (conservative: False when unsure)."""
    if sigma.is_empty:
        return True
    if isinstance(C, Atom):
        n = C.name
        if n == "G":
            return True
        if n == "Gpi":
            return sigma.issubset(C.params[0])
        if n == "S":
            return _gpi_solvable(sigma)
        if n == "Spi":
            return sigma.issubset(C.params[0].complement()) or _gpi_solvable(sigma)
        if n in ("N", "U", "Nr"):
            return sigma.size == 1
        if n == "Npi":
            return sigma.issubset(C.params[0].complement()) or sigma.size == 1
        return False
    if isinstance(C, FormationProduct):
        return contains_gpi(C.F, sigma) or contains_gpi(C.X, sigma)
    return contains_gpi(C.H, sigma) or contains_gpi(C.X, sigma)


def canonical_local(C: ClassExpr, p: int):
    """Canonical local definition value F(p) where registered.

    Returns a ClassExpr, ``False`` when no p-chief factor can be central, or
    None when no local definition is registered for C.
    """
    if isinstance(C, Atom):
        n = C.name
        if n == "N":
            return Gpi({p})
        if n == "U":
            return FormationProduct(Gpi({p}), Aexp(p - 1)) if p > 2 else Gpi({p})
        if n in ("S", "G"):
            return C
        if n == "Gpi":
            return C if p in C.params[0] else False
        if n == "Npi":
            return Gpi({p}) if p in C.params[0] else C
        if n == "Nr":
            r = C.params[0]
            return Gpi({p}) if r == 1 else FormationProduct(Gpi({p}), Nr(r - 1))
        return None
    if isinstance(C, FormationProduct) and isinstance(C.X, Atom):
        if C.X.name == "N":
            return FormationProduct(Gpi({p}), C.F)
        if C.X.name == "Npi":
            return FormationProduct(Gpi({p}), C.F) if p in C.X.params[0] else C
    return None


# -- membership -----------------------------------------------------------------


def _sub(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    return G.subgroup_as_group(H)[0]


def _lift(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """Map a subgroup K of the group-of-H back into G."""
    emb = G.subgroup_as_group(H)[1]
    return Subgroup(G, mask_of(emb[list(K.members)]))


@memoized
def chief_factor_orders(G: FiniteGroup) -> tuple[int, ...]:
    """Orders of a chief series, bottom up (least-key choice at each step)."""
    norms = normal_subgroups(G)
    out = []
    N = G.trivial
    while not N.is_whole:
        above = [M for M in norms if N < M]
        minimal = [M for M in above if not any(K < M for K in above)]
        M = minimal[0]
        out.append(M.order // N.order)
        N = M
    return tuple(out)


@memoized
def o_pi_mask(G: FiniteGroup, ps: PrimeSet) -> Subgroup:
    mask = 1
    for N in normal_subgroups(G):
        if ps.is_number(N.order):
            mask |= N.mask
    return G.closure(mask) if mask.bit_count() > 1 else G.trivial


def o_pi(G: FiniteGroup, pi) -> Subgroup:
    """O_pi(G): the largest normal pi-subgroup."""
    return o_pi_mask(G, _ps(pi))


def is_solvable(G: FiniteGroup) -> bool:
    return G.derived_series()[-1].is_trivial


def is_nilpotent(G: FiniteGroup) -> bool:
    return G.lower_central_series()[-1].is_trivial


def nilpotency_class(G: FiniteGroup) -> int | None:
    lcs = G.lower_central_series()
    return len(lcs) - 1 if lcs[-1].is_trivial else None


@memoized
def fitting_length_or_none(G: FiniteGroup) -> int | None:
    length = 0
    cur = G
    while cur.order > 1:
        F = radical(cur, NILPOTENT)
        if F.is_trivial:
            return None
        cur = cur.quotient(F)[0]
        length += 1
    return length


def _prime_power(n: int) -> int | None:
    ps = prime_divisors(n)
    return ps[0] if len(ps) == 1 else None


def _is_pi_solvable(G: FiniteGroup, ps: PrimeSet) -> bool:
    for k in chief_factor_orders(G):
        p = _prime_power(k)
        if p is not None and p in ps:
            continue
        if ps.complement().is_number(k):
            continue
        return False
    return True


def _sigma_key(order: tuple[int, ...]):
    def key(p: int):
        return (order.index(p), 0) if p in order else (len(order), p)

    return key


def _atom_member(G: FiniteGroup, C: Atom) -> bool:
    n = C.name
    if n == "1":
        return G.order == 1
    if n == "G":
        return True
    if n == "Gpi":
        return C.params[0].is_number(G.order)
    if n == "A":
        return G.is_abelian
    if n == "N":
        return is_nilpotent(G)
    if n == "Nc":
        c = nilpotency_class(G)
        return c is not None and c <= C.params[0]
    if n == "U":
        return all(_prime_power(k) == k for k in chief_factor_orders(G) if k > 1)
    if n == "S":
        return is_solvable(G)
    if n == "Spi":
        return _is_pi_solvable(G, C.params[0])
    if n == "Npi":
        return C.params[0].complement().is_number(residual(G, NILPOTENT).order)
    if n == "Tsigma":
        primes = sorted(G.primes, key=_sigma_key(C.params))
        for i in range(len(primes)):
            head = PrimeSet(frozenset(primes[: i + 1]))
            if o_pi(G, head).order != p_part(G.order, head.primes):
                return False
        return True
    if n == "Cpi":
        ps = C.params[0]
        target = p_part(G.order, ps.restrict(G.primes))
        return o_pi(G, ps).order == target
    if n == "Nr":
        r = fitting_length_or_none(G)
        return r is not None and r <= C.params[0]
    if n == "Ldec":
        p = C.params[0]
        return (o_pi(G, {p}).order == p_part(G.order, (p,))
                and o_pi(G, PrimeSet.of(p).complement()).order * p_part(G.order, (p,)) == G.order)
    if n == "Aexp":
        return G.is_abelian and all(C.params[0] % int(o) == 0 for o in G.element_orders)
    raise UnsupportedClass(n)


@memoized
def is_member(G: FiniteGroup, C: ClassExpr) -> bool:
    """Decide G in C."""
    if isinstance(C, Atom):
        return _atom_member(G, C)
    if isinstance(C, FormationProduct):
        R = residual(G, C.F)
        return is_member(_sub(G, R), C.X)
    if isinstance(C, FittingProduct):
        R = radical(G, C.H)
        return is_member(G.quotient(R)[0], C.X)
    raise UnsupportedClass(repr(C))


def is_subgroup_member(G: FiniteGroup, H: Subgroup, C: ClassExpr) -> bool:
    return is_member(_sub(G, H), C)


# -- residuals and radicals ------------------------------------------------------


def _elements_mask(G: FiniteGroup, pred) -> int:
    orders = G.element_orders
    ok = np.array([pred(int(o)) for o in orders], dtype=bool)
    return bool_to_mask(ok)


def _closed_form_residual(G: FiniteGroup, F: ClassExpr) -> Subgroup | None:
    if isinstance(F, Atom):
        n = F.name
        if n == "1":
            return G.whole
        if n == "G":
            return G.trivial
        if n == "A":
            return G.derived_subgroup()
        if n == "N":
            return G.lower_central_series()[-1]
        if n == "S":
            return G.derived_series()[-1]
        if n == "Gpi":
            other = F.params[0].complement()
            return G.closure(_elements_mask(G, other.is_number))
        if n == "Aexp":
            m = F.params[0]
            powers = {G.power(g, m) for g in range(G.order)}
            return G.join(G.derived_subgroup(), G.closure(powers))
        if n == "Npi":
            return residual_of(G, residual(G, NILPOTENT), Gpi(F.params[0].complement()))
        return None
    if isinstance(F, FormationProduct) and flags(F.X).formation:
        # G^(X*F) = (G^F)^X whenever X is a formation
        return residual_of(G, residual(G, F.F), F.X)
    if isinstance(F, FittingProduct) and flags(F).formation:
        return residual_of(G, residual(G, F.X), F.H)
    return None


@memoized
def residual(G: FiniteGroup, F: ClassExpr) -> Subgroup:
    """G^F: the smallest normal subgroup with quotient in F."""
    if not flags(F).formation:
        raise UnsupportedClass(f"{F} is not declared a formation")
    R = _closed_form_residual(G, F)
    if R is None:
        mask = G.all_mask
        for N in normal_subgroups(G):
            if mask & N.mask == mask:
                continue
            if is_member(G.quotient(N)[0], F):
                mask &= N.mask
        R = Subgroup(G, mask)
    if not is_member(G.quotient(R)[0], F):
        raise FormationWitnessFailure(
            f"{G.name}: quotient by the {F}-residual candidate (order {R.order}) is not in {F}")
    return R


def residual_scan(G: FiniteGroup, F: ClassExpr) -> Subgroup:
    """Residual by the generic normal-subgroup intersection (oracle for closed forms)."""
    mask = G.all_mask
    for N in normal_subgroups(G):
        if is_member(G.quotient(N)[0], F):
            mask &= N.mask
    return Subgroup(G, mask)


@memoized
def residual_of(G: FiniteGroup, H: Subgroup, F: ClassExpr) -> Subgroup:
    """The F-residual of the subgroup H, as a subgroup of G."""
    if H.is_whole:
        return residual(G, F)
    K = _sub(G, H)
    return _lift(G, H, residual(K, F))


@memoized
def radical(G: FiniteGroup, H: ClassExpr) -> Subgroup:
    """G_H: the join of all normal H-subgroups, checked to lie in H."""
    if not flags(H).fitting:
        raise UnsupportedClass(f"{H} is not declared a Fitting class")
    if H == ONE:
        return G.trivial
    if H == ALL:
        return G.whole
    if isinstance(H, Atom) and H.name == "Gpi":
        R = o_pi(G, H.params[0])
    else:
        mask = 1
        for N in normal_subgroups(G):
            if N.mask & mask == N.mask:
                continue
            if is_member(_sub(G, N), H):
                mask |= N.mask
        R = G.closure(mask)
    if not is_member(_sub(G, R), H):
        raise FittingWitnessFailure(f"{G.name}: join of normal {H}-subgroups is not in {H}")
    return R


@memoized
def radical_of(G: FiniteGroup, K: Subgroup, H: ClassExpr) -> Subgroup:
    if K.is_whole:
        return radical(G, H)
    return _lift(G, K, radical(_sub(G, K), H))


def saturation_spot_check(G: FiniteGroup, F: ClassExpr, audit: bool = False) -> PropositionReport:
    """Instance check of (G / Phi(G) in F) implies (G in F)."""
    params = {"F": str(F)}
    if not flags(F).saturated and not audit:
        return PropositionReport("saturation", G.name, G.id, params, SKIP,
                                 reason="hypothesis: F saturated")
    phi = frattini_subgroup(G)
    top = is_member(G.quotient(phi)[0], F)
    whole = is_member(G, F)
    detail = {"frattini_order": phi.order, "quotient_in_F": top, "group_in_F": whole}
    if top and not whole:
        return PropositionReport("saturation", G.name, G.id, params, FAIL,
                                 witness=detail, detail=detail)
    return PropositionReport("saturation", G.name, G.id, params, PASS, detail=detail,
                             basis="audit" if audit and not flags(F).saturated else "instance")
