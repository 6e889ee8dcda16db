"""Exact ordinals below w^w and their tree combinatorics.

An ordinal is kept in Cantor normal form as a tuple of (exponent, coefficient)
terms, highest exponent first.  On top of the arithmetic this module provides
the last-term readings cb_rank/l_count, the component index cnf_index, the
step relation star_less with its immediate version star_children, the cone
t_set/t_level, the pruned level sets f_set, and the (index, level) node-class
partition.  Infinite sets are returned as BoundedEnumeration views: an exact
membership predicate plus an increasing prefix enumerator.
"""

from __future__ import annotations

from itertools import islice
from typing import Callable, Iterator, NamedTuple, Optional


class OrdinalError(ValueError):
    pass


class OrdinalParseError(OrdinalError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Ordinal:
    """Immutable ordinal < w^w as a canonical term list."""

    __slots__ = ("terms",)

    def __init__(self, terms: tuple[tuple[int, int], ...] = ()):
        last = None
        for exp, coeff in terms:
            if exp < 0 or coeff < 1:
                raise OrdinalError(f"bad term (w^{exp})*{coeff}")
            if last is not None and exp >= last:
                raise OrdinalError("exponents must strictly decrease")
            last = exp
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("ordinals are non-negative")
        return Ordinal(((0, n),)) if n else Ordinal()

    @staticmethod
    def omega_power(exp: int, coeff: int = 1) -> "Ordinal":
        """w^exp * coeff (coeff 0 gives 0)."""
        if coeff == 0:
            return Ordinal()
        return Ordinal(((exp, coeff),))

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def as_int(self) -> int:
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def cb_rank(self) -> int:
        """Exponent of the last term; 0 for the ordinal 0."""
        return self.terms[-1][0] if self.terms else 0

    def l_count(self) -> int:
        """Coefficient of the last term; 1 for the ordinal 0."""
        return self.terms[-1][1] if self.terms else 1

    def leading_exp(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    def decrement_last(self) -> "Ordinal":
        """Remove one unit of the last term: delta with delta + w^cb_rank = self."""
        if not self.terms:
            raise OrdinalError("0 has no last term")
        exp, coeff = self.terms[-1]
        if coeff > 1:
            return Ordinal(self.terms[:-1] + ((exp, coeff - 1),))
        return Ordinal(self.terms[:-1])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if not isinstance(other, Ordinal):
            return NotImplemented
        if not other.terms:
            return self
        e = other.terms[0][0]
        kept = [t for t in self.terms if t[0] > e]
        merged = list(other.terms)
        for exp, coeff in self.terms:
            if exp == e:
                merged[0] = (e, coeff + merged[0][1])
        return Ordinal(tuple(kept) + tuple(merged))

    def left_difference(self, prefix: "Ordinal") -> "Ordinal":
        """The unique xi with prefix + xi = self, when such xi exists."""
        if prefix > self:
            raise OrdinalError(f"{prefix} exceeds {self}")
        a, b = self.terms, prefix.terms
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        if i == len(b):
            return Ordinal(a[i:])
        # first differing term: self >= prefix leaves only two shapes
        exp_a, coeff_a = a[i]
        exp_b, coeff_b = b[i]
        if exp_a > exp_b:
            return Ordinal(a[i:])
        assert exp_a == exp_b and coeff_a > coeff_b
        return Ordinal(((exp_a, coeff_a - coeff_b),) + a[i + 1:])

    def successor(self) -> "Ordinal":
        return self + Ordinal.from_int(1)

    # -- comparison --------------------------------------------------------

    def _key(self):
        return self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.terms:
            if exp == 0:
                parts.append(str(coeff))
            else:
                base = "w" if exp == 1 else f"w^{exp}"
                parts.append(base if coeff == 1 else f"{base}*{coeff}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal.omega_power(1)


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1 as a <, =, > b (term lists compare lexicographically)."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return 1 if ea > eb else -1
        if ca != cb:
            return 1 if ca > cb else -1
    if len(a.terms) != len(b.terms):
        return 1 if len(a.terms) > len(b.terms) else -1
    return 0


# -- parsing ---------------------------------------------------------------


def parse(text: str) -> Ordinal:
    """Parse `term ('+' term)*` with term `w ('^' nat)? ('*' nat)? | nat`.

    Terms are summed left to right with ordinal addition, so non-canonical
    input like "w+w^2" collapses to its canonical form.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_nat() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise OrdinalParseError("expected a number", start)
        return int(text[start:pos])

    def read_term() -> Ordinal:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise OrdinalParseError("expected a term", pos)
        if text[pos] == "w":
            pos += 1
            exp = 1
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                exp = read_nat()
            coeff = 1
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
                coeff = read_nat()
            if coeff == 0:
                return ZERO
            return Ordinal.omega_power(exp, coeff)
        if text[pos].isdigit():
            return Ordinal.from_int(read_nat())
        raise OrdinalParseError(f"unexpected character {text[pos]!r}", pos)

    total = read_term()
    skip_ws()
    while pos < n:
        if text[pos] != "+":
            raise OrdinalParseError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
        total = total + read_term()
        skip_ws()
    return total


# -- bounded views of infinite sets ---------------------------------------


class BoundedEnumeration:
    """A set of ordinals seen through an exact predicate and finite prefixes.

    enumerate(m) returns the first m members in increasing order (fewer if the
    set is smaller); the generator is restarted on each call, so views are
    reusable and immutable.
    """

    def __init__(self, contains: Callable[[Ordinal], bool],
                 generator: Callable[[], Iterator[Ordinal]]):
        self._contains = contains
        self._generator = generator

    def contains(self, x: Ordinal) -> bool:
        return self._contains(x)

    def __contains__(self, x: Ordinal) -> bool:
        return self._contains(x)

    def enumerate(self, m: int) -> list[Ordinal]:
        return list(islice(self._generator(), m))

    def __iter__(self) -> Iterator[Ordinal]:
        return self._generator()

    @staticmethod
    def of(*members: Ordinal) -> "BoundedEnumeration":
        fixed = sorted(set(members))
        return BoundedEnumeration(lambda x: x in set(fixed), lambda: iter(fixed))

    @staticmethod
    def empty() -> "BoundedEnumeration":
        return BoundedEnumeration(lambda x: False, lambda: iter(()))


# -- the step relation and its tree ---------------------------------------


def star_less(b: Ordinal, a: Ordinal) -> bool:
    """True iff a = b + w^theta for some theta > cb_rank(b)."""
    if a <= b:
        return False
    for theta in range(b.cb_rank() + 1, a.leading_exp() + 1):
        if b + Ordinal.omega_power(theta) == a:
            return True
    return False


def star_parent(b: Ordinal) -> Ordinal:
    """The unique immediate successor of b in the step order."""
    return b + Ordinal.omega_power(b.cb_rank() + 1)


def star_children(a: Ordinal) -> BoundedEnumeration:
    """All b with star_parent(b) = a, in increasing order.

    Nonempty only when cb_rank(a) = d >= 1: writing a = delta + w^d, the
    children are delta + w^(d-1)*k for k >= 1, together with 0 when a = w.
    """
    d = a.cb_rank()
    if a.is_zero() or d == 0:
        return BoundedEnumeration.empty()
    delta = a.decrement_last()
    include_zero = a == OMEGA

    def contains(x: Ordinal) -> bool:
        return star_parent(x) == a

    def gen() -> Iterator[Ordinal]:
        if include_zero:
            yield ZERO
        k = 1
        while True:
            yield delta + Ordinal.omega_power(d - 1, k)
            k += 1

    return BoundedEnumeration(contains, gen)


def t_set(a: Ordinal) -> BoundedEnumeration:
    """T(a): everything below a in the step order, plus a itself.

    Equals the interval (delta, a] for a = delta + w^c, with 0 joining in
    when delta = 0 and c >= 1.
    """
    if a.is_zero():
        return BoundedEnumeration.of(ZERO)
    c = a.cb_rank()
    delta = a.decrement_last()

    def contains(x: Ordinal) -> bool:
        return x == a or star_less(x, a)

    def gen() -> Iterator[Ordinal]:
        if delta.is_zero() and c >= 1:
            yield ZERO
        if c == 0:
            yield a
            return
        k = 1
        while True:
            yield delta + Ordinal.from_int(k)
            k += 1

    return BoundedEnumeration(contains, gen)


def t_level(a: Ordinal, k: int) -> BoundedEnumeration:
    """Members of t_set(a) whose cb_rank is k."""
    base = t_set(a)
    c = a.cb_rank()

    def contains(x: Ordinal) -> bool:
        return x.cb_rank() == k and base.contains(x)

    if k > c:
        return BoundedEnumeration.empty()
    if k == c:
        return BoundedEnumeration.of(a)
    delta = a.decrement_last()

    def gen() -> Iterator[Ordinal]:
        if delta.is_zero() and k == 0:
            yield ZERO
        j = 1
        while True:
            yield delta + Ordinal.omega_power(k, j)
            j += 1

    return BoundedEnumeration(contains, gen)


# -- pruned level sets -----------------------------------------------------


def _pure_f_contains(x: Ordinal, c: int, r: int, m: int) -> bool:
    """Membership of x in the level-m set of w^c with coefficient threshold r."""
    if x.cb_rank() != m or x > Ordinal.omega_power(c):
        return False
    cur = x
    for _level in range(m, c):
        if cur.l_count() <= r:
            return False
        cur = star_parent(cur)
    return cur == Ordinal.omega_power(c)


def _pure_f_gen(c: int, r: int, m: int) -> Iterator[Ordinal]:
    """Increasing members of the level-m set of w^c, threshold r."""
    if m == c:
        yield Ordinal.omega_power(c)
        return
    for parent in _pure_f_gen(c, r, m + 1):
        d = parent.cb_rank()
        delta = parent.decrement_last()
        if parent == OMEGA and r == 0:
            yield ZERO
        k = r + 1
        while True:
            yield delta + Ordinal.omega_power(d - 1, k)
            k += 1


def f_set(theta: Ordinal, r: int, m: int) -> BoundedEnumeration:
    """Level-m tail set of theta with coefficient threshold r.

    Level c = cb_rank(theta) is {theta}; each level below keeps the children
    whose last coefficient exceeds r.  For theta = delta + w^c the members are
    the w^c-shape members carried over by the order isomorphism
    [0, w^c] -> (delta, theta], which shifts the finitely many finite members
    up by one past delta.
    """
    c = theta.cb_rank()
    if m > c:
        raise OrdinalError(f"level {m} exceeds cb_rank({theta}) = {c}")
    if c == 0:
        return BoundedEnumeration.of(theta)
    delta = theta.decrement_last()

    if delta.is_zero():
        pull, push = (lambda x: x), (lambda x: x)
    else:
        def pull(x: Ordinal) -> Ordinal:
            if x.is_finite():
                return delta + Ordinal.from_int(x.as_int() + 1)
            return delta + x

        def push(y: Ordinal) -> Optional[Ordinal]:
            try:
                xi = y.left_difference(delta)
            except OrdinalError:
                return None
            if xi.is_zero():
                return None
            if xi.is_finite():
                return Ordinal.from_int(xi.as_int() - 1)
            return xi

    def contains(y: Ordinal) -> bool:
        x = push(y)
        return x is not None and _pure_f_contains(x, c, r, m)

    def gen() -> Iterator[Ordinal]:
        for x in _pure_f_gen(c, r, m):
            yield pull(x)

    return BoundedEnumeration(contains, gen)


# -- components and node classes ------------------------------------------


class NodeClassId(NamedTuple):
    """The class of ordinals sharing a component index and a cb_rank level."""

    index: int
    level: int


def expansion(gamma: Ordinal) -> list[int]:
    """Exponents of gamma written with all coefficients 1, leading first."""
    exps: list[int] = []
    for exp, coeff in gamma.terms:
        exps.extend([exp] * coeff)
    return exps


def partial_sum(gamma: Ordinal, k: int) -> Ordinal:
    """Sum of the first k coefficient-1 terms of gamma (k = 0 gives 0)."""
    exps = expansion(gamma)
    if k < 0 or k > len(exps):
        raise OrdinalError(f"index {k} out of range for {gamma}")
    total = ZERO
    for e in exps[:k]:
        total = total + Ordinal.omega_power(e)
    return total


def cnf_index(gamma: Ordinal, alpha: Ordinal) -> int:
    """Least k with alpha at most the k-th coefficient-1 partial sum of gamma.

    alpha = 0 is assigned index 1.
    """
    if gamma.is_zero():
        raise OrdinalError("no components for 0")
    if alpha > gamma:
        raise OrdinalError(f"{alpha} exceeds {gamma}")
    if alpha.is_zero():
        return 1
    total = ZERO
    for k, e in enumerate(expansion(gamma), start=1):
        total = total + Ordinal.omega_power(e)
        if alpha <= total:
            return k
    raise AssertionError("unreachable: alpha <= gamma")


def classify(gamma: Ordinal, alpha: Ordinal) -> NodeClassId:
    if alpha >= gamma:
        raise OrdinalError(f"{alpha} not below {gamma}")
    return NodeClassId(cnf_index(gamma, alpha), alpha.cb_rank())


def class_exponents(gamma: Ordinal) -> list[int]:
    return expansion(gamma)


def is_valid_class(gamma: Ordinal, cid: NodeClassId) -> bool:
    """True iff the class is nonempty as a subset of [0, gamma)."""
    exps = expansion(gamma)
    n = len(exps)
    i, j = cid.index, cid.level
    if not (1 <= i <= n) or not (0 <= j <= exps[i - 1]):
        return False
    if i == n and j == exps[n - 1]:
        # the only candidate member is gamma itself, which is excluded --
        # except for gamma = 1 where 0 still belongs to class (1, 0)
        return i == 1 and j == 0 and gamma == ONE
    return True


def valid_classes(gamma: Ordinal) -> list[NodeClassId]:
    out = []
    for i, e in enumerate(expansion(gamma), start=1):
        for j in range(e + 1):
            cid = NodeClassId(i, j)
            if is_valid_class(gamma, cid):
                out.append(cid)
    return out


def class_size(gamma: Ordinal, cid: NodeClassId) -> Optional[int]:
    """Exact size of a class, with None meaning infinite."""
    if not is_valid_class(gamma, cid):
        raise OrdinalError(f"invalid class {cid} for {gamma}")
    exps = expansion(gamma)
    i, j = cid.index, cid.level
    if j < exps[i - 1]:
        return None
    # j equals the component exponent: the single top point, plus 0 for (1,0)
    bonus = 1 if (i == 1 and j == 0) else 0
    if i == len(exps) and j == exps[i - 1]:
        return bonus  # top point is gamma itself, excluded
    return 1 + bonus


def class_top(gamma: Ordinal, index: int) -> Ordinal:
    """The largest point of component `index`: the index-th partial sum."""
    return partial_sum(gamma, index)


def node_class(gamma: Ordinal, cid: NodeClassId) -> BoundedEnumeration:
    """The members of a class, increasing; exact membership via classify."""
    if not is_valid_class(gamma, cid):
        raise OrdinalError(f"invalid class {cid} for {gamma}")
    exps = expansion(gamma)
    i, j = cid.index, cid.level
    base = partial_sum(gamma, i - 1)
    top_exp = exps[i - 1]

    def contains(x: Ordinal) -> bool:
        return x < gamma and classify(gamma, x) == cid

    def gen() -> Iterator[Ordinal]:
        if i == 1 and j == 0:
            yield ZERO
        if j == top_exp:
            top = base + Ordinal.omega_power(top_exp)
            if top < gamma:
                yield top
            return
        k = 1
        while True:
            yield base + Ordinal.omega_power(j, k)
            k += 1

    return BoundedEnumeration(contains, gen)


def class_member(gamma: Ordinal, cid: NodeClassId, rank: int = 0) -> Ordinal:
    """The rank-th member of the class in increasing order."""
    members = node_class(gamma, cid).enumerate(rank + 1)
    if len(members) <= rank:
        raise OrdinalError(f"class {cid} of {gamma} has fewer than {rank + 1} members")
    return members[rank]


def class_members_above(gamma: Ordinal, cid: NodeClassId,
                        bound: Ordinal) -> BoundedEnumeration:
    """Members of the class strictly above `bound`, in increasing order."""
    full = node_class(gamma, cid)
    exps = expansion(gamma)
    i, j = cid.index, cid.level
    base = partial_sum(gamma, i - 1)
    top_exp = exps[i - 1]

    def contains(x: Ordinal) -> bool:
        return x > bound and full.contains(x)

    if bound < base or (j == top_exp):
        def gen():
            for x in full._generator():
                if x > bound:
                    yield x
        return BoundedEnumeration(contains, gen)
    if bound >= base + Ordinal.omega_power(top_exp):
        return BoundedEnumeration.empty()
    # bound sits inside the component: round it up to the next w^j block
    xi = bound.left_difference(base)
    prefix = Ordinal(tuple(t for t in xi.terms if t[0] > j))
    at_j = next((co for e, co in xi.terms if e == j), 0)

    def gen():
        k = at_j + 1
        while True:
            yield base + prefix + Ordinal.omega_power(j, k)
            k += 1

    return BoundedEnumeration(contains, gen)


def class_members_toward(gamma: Ordinal, p: Ordinal,
                         level: int) -> BoundedEnumeration:
    """A level-`level` sequence in p's component, increasing with sup p.

    Requires level < cb_rank(p) and p below gamma.  The view is one canonical
    approach sequence (every tail of it still has sup p), not the whole class.
    """
    c = p.cb_rank()
    if not (0 <= level < c):
        raise OrdinalError(f"no level-{level} approach to {p}")
    if p >= gamma:
        raise OrdinalError(f"{p} not below {gamma}")
    zeta = p.decrement_last()
    bump = Ordinal.omega_power(level) if level < c - 1 else ZERO

    def contains(x: Ordinal) -> bool:
        if not zeta < x < p:
            return False
        rest = x.left_difference(zeta)
        if level == c - 1:
            return len(rest.terms) == 1 and rest.terms[0][0] == c - 1
        return (len(rest.terms) == 2 and rest.terms[0][0] == c - 1
                and rest.terms[1] == (level, 1))

    def gen():
        t = 1
        while True:
            yield zeta + Ordinal.omega_power(c - 1, t) + bump
            t += 1

    return BoundedEnumeration(contains, gen)
