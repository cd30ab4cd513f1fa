"""Prime fields, monomial orders and multivariate polynomials.

Monomials are exponent tuples. Every monomial order also knows how to pack an
exponent tuple into a single Python int (its *key*) such that

* comparing keys compares monomials,
* adding keys multiplies monomials,

which is what the Groebner engine works with. Exponents are limited to
``MAX_EXPONENT`` so that packed fields never carry into each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from sympy import isprime

from .errors import ExponentOverflowError, RingMismatchError

Monomial = Tuple[int, ...]

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_DEG_BITS = 40

DEFAULT_CHARACTERISTIC = 32003


@dataclass(frozen=True)
class PrimeField:
    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise ValueError(f"characteristic must be a prime, got {p!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value: int) -> int:
        return value % self.characteristic

    def inv(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return pow(a, -1, self.characteristic)

    def balanced(self, a: int) -> int:
        """Representative of ``a`` in (-p/2, p/2]."""
        a %= self.characteristic
        return a - self.characteristic if a > self.characteristic // 2 else a


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"elim"``. For ``"elim"`` the
    first ``block`` variables are compared first (degrevlex on that
    sub-vector), then the remaining ones (degrevlex again).

    ``weights`` replaces the all-ones degree vector inside the degrevlex
    blocks. Rings stay standard graded; weighted orders are only used
    internally, to keep auxiliary constructions homogeneous.
    """

    kind: str = "degrevlex"
    block: int = 0
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 0:
            raise ValueError("elimination block size must be >= 0")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
            if any(w < 1 for w in self.weights):
                raise ValueError("order weights must be positive")

    def __str__(self):
        s = self.kind if self.kind != "elim" else f"elim({self.block})"
        if self.weights is not None:
            s += f"[w={','.join(map(str, self.weights))}]"
        return s

    def encoder(self, nvars: int) -> "OrderEncoder":
        return _encoder(self, nvars)

    def key(self, u: Monomial) -> int:
        return _encoder(self, len(u)).encode(u)

    def compare(self, u: Monomial, v: Monomial) -> int:
        if len(u) != len(v):
            raise ValueError("monomials of different arity")
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(block: int, weights=None) -> MonomialOrder:
    return MonomialOrder("elim", block, weights)


class OrderEncoder:
    """Packs exponent tuples into ints for one (order, number of variables)."""

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.nvars = n = nvars
        w = order.weights if order.weights is not None else (1,) * n
        if len(w) != n:
            raise ValueError(f"order has {len(w)} weights for {n} variables")
        self.weights = w
        if order.kind == "degrevlex":
            blocks = [("drl", tuple(range(n)))]
        elif order.kind == "lex":
            blocks = [("lex", tuple(range(n)))]
        else:
            k = min(order.block, n)
            blocks = [("drl", tuple(range(k))), ("drl", tuple(range(k, n)))]
            blocks = [b for b in blocks if b[1]] or [("drl", ())]
        self.blocks = []
        for kind, vs in blocks:
            m = len(vs)
            width = FIELD_BITS * m + (_DEG_BITS if kind == "drl" else 0)
            self.blocks.append((kind, vs, tuple(w[v] for v in vs), width))
        self.all_drl = all(b[0] == "drl" for b in self.blocks)
        self.guard = sum(1 << (FIELD_BITS * j + FIELD_BITS - 1) for j in range(n))

    def encode(self, u: Sequence[int]) -> int:
        key = 0
        for kind, vs, ws, width in self.blocks:
            if kind == "drl":
                e = 0
                d = 0
                for i, (v, wv) in enumerate(zip(vs, ws)):
                    x = u[v]
                    if x > MAX_EXPONENT or x < 0:
                        raise ExponentOverflowError(f"exponent {x} out of range [0, {MAX_EXPONENT}]")
                    e |= x << (FIELD_BITS * i)
                    d += wv * x
                bk = (d << (FIELD_BITS * len(vs))) - e
            else:
                bk = 0
                for v in vs:
                    x = u[v]
                    if x > MAX_EXPONENT or x < 0:
                        raise ExponentOverflowError(f"exponent {x} out of range [0, {MAX_EXPONENT}]")
                    bk = (bk << FIELD_BITS) | x
            key = (key << width) | bk
        return key

    def decode(self, key: int) -> Monomial:
        out = [0] * self.nvars
        fmask = (1 << FIELD_BITS) - 1
        for kind, vs, _, width in reversed(self.blocks):
            bk = key & ((1 << width) - 1)
            key >>= width
            m = len(vs)
            if kind == "drl":
                e = (-bk) & ((1 << (FIELD_BITS * m)) - 1)
                for i, v in enumerate(vs):
                    out[v] = (e >> (FIELD_BITS * i)) & fmask
            else:
                for i, v in enumerate(reversed(vs)):
                    out[v] = (bk >> (FIELD_BITS * i)) & fmask
        return tuple(out)

    def pack(self, u: Sequence[int]) -> int:
        """Natural-order packing used for divisibility tests."""
        d = 0
        for j, x in enumerate(u):
            d |= x << (FIELD_BITS * j)
        return d

    def divmask(self, key: int) -> int:
        """Packed exponents (natural variable order) of the monomial ``key``."""
        if not self.all_drl:
            return self.pack(self.decode(key))
        d = 0
        shift = 0
        for _, vs, _, width in reversed(self.blocks):
            ebits = FIELD_BITS * len(vs)
            d |= ((-(key & ((1 << width) - 1))) & ((1 << ebits) - 1)) << shift
            key >>= width
            shift += ebits
        # blocks are contiguous ranges in natural order, last block most significant
        return _reorder_drl(self, d)

    def divides(self, da: int, db: int) -> bool:
        g = self.guard
        return ((db | g) - da) & g == g

    def degree(self, u: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, u))


def _reorder_drl(enc: OrderEncoder, d: int) -> int:
    # divmask assembles blocks starting from the least significant one; with
    # contiguous blocks [0..k) then [k..n) the least significant block must be
    # the first one, so swap when there are two blocks.
    if len(enc.blocks) == 1:
        return d
    (_, vs1, _, _), (_, vs2, _, _) = enc.blocks
    b2 = FIELD_BITS * len(vs2)
    low = d & ((1 << b2) - 1)
    high = d >> b2
    return high | (low << (FIELD_BITS * len(vs1)))


@lru_cache(maxsize=256)
def _encoder(order: MonomialOrder, nvars: int) -> OrderEncoder:
    return OrderEncoder(order, nvars)


@dataclass(frozen=True)
class PolyRing:
    """A standard graded polynomial ring over a prime field."""

    variables: Tuple[str, ...]
    field: PrimeField = field(default_factory=PrimeField)
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if self.order.weights is not None and len(self.order.weights) != len(self.variables):
            raise ValueError("order weights do not match the number of variables")

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def encoder(self) -> OrderEncoder:
        return _encoder(self.order, self.nvars)

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; p={self.p}; {self.order})"

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, self.field, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    @property
    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        _check_exponents(exps)
        c = coeff % self.p
        return Polynomial(self, {exps: c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            if value.ring.variables == self.variables and value.ring.p == self.p:
                return Polynomial(self, value._terms)
            raise RingMismatchError("cannot coerce polynomial between different rings")
        if isinstance(value, int):
            return self.constant(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a polynomial")


def _check_exponents(exps: Iterable[int]):
    for x in exps:
        if x > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent {x} exceeds {MAX_EXPONENT}")


class Polynomial:
    """An immutable polynomial: a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int]):
        self.ring = ring
        self._terms: Dict[Monomial, int] = terms if isinstance(terms, dict) else dict(terms)
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[Tuple[Sequence[int], int]]) -> "Polynomial":
        p = ring.p
        acc: Dict[Monomial, int] = {}
        for e, c in terms:
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError("exponent vector has wrong length")
            acc[e] = (acc.get(e, 0) + c) % p
        _check_exponents(x for e in acc for x in e)
        return cls(ring, {e: c for e, c in acc.items() if c})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def sorted_terms(self):
        """Terms in decreasing order for the ring's monomial order."""
        if self._sorted is None:
            enc = self.ring.encoder
            self._sorted = sorted(self._terms.items(), key=lambda t: enc.encode(t[0]), reverse=True)
        return self._sorted

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.sorted_terms()[0][0]

    @property
    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self.sorted_terms()[0][1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables or other.ring.p != self.ring.p:
                raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: Dict[Monomial, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        out = {e: c for e, c in out.items() if c}
        _check_exponents(x for e in out for x in e)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (a * c) % p for e, a in self._terms.items()})

    def mul_monomial(self, exps: Sequence[int], c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        out = {tuple(a + b for a, b in zip(e, exps)): (a * c) % p for e, a in self._terms.items()}
        _check_exponents(x for e in out for x in e)
        return Polynomial(self.ring, out)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient))

    def derivative(self, var) -> "Polynomial":
        """Formal partial derivative with respect to a variable name or index."""
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise KeyError(f"unknown variable index {var!r}")
        p = self.ring.p
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            v = (c * k) % p
            if v:
                out[e[:i] + (k - 1,) + e[i + 1:]] = v
        return Polynomial(self.ring, out)

    def divide_exact(self, g: "Polynomial") -> "Polynomial":
        """Quotient of ``self`` by ``g``; raises ``ValueError`` if ``g`` does not divide."""
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        p = ring.p
        enc = ring.encoder
        glm, glc = g.sorted_terms()[0]
        ginv = ring.field.inv(glc)
        gterms = g.sorted_terms()
        rem = dict(self._terms)
        quot: Dict[Monomial, int] = {}
        while rem:
            lm = max(rem, key=enc.encode)
            c = rem[lm]
            shift = tuple(a - b for a, b in zip(lm, glm))
            if any(s < 0 for s in shift):
                raise ValueError("polynomial is not divisible")
            q = (c * ginv) % p
            quot[shift] = q
            for e, a in gterms:
                m = tuple(x + y for x, y in zip(e, shift))
                v = (rem.get(m, 0) - q * a) % p
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return Polynomial(ring, quot)

    def compose(self, images: Sequence["Polynomial"], target: PolyRing) -> "Polynomial":
        """Substitute ``images[i]`` for the i-th variable; result lives in ``target``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        powers = [dict() for _ in images]
        result: Dict[Monomial, int] = {}
        p = target.p
        one = target.one()
        for e, c in self._terms.items():
            term = one.scale(c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = images[i] ** k
                    term = term * cache[k]
            for m, a in term._terms.items():
                v = (result.get(m, 0) + a) % p
                if v:
                    result[m] = v
                else:
                    result.pop(m, None)
        return Polynomial(target, result)

    def rename(self, target: PolyRing, index_map: Sequence[int]) -> "Polynomial":
        """Move into ``target`` sending variable i to variable ``index_map[i]``."""
        n = target.nvars
        out = {}
        for e, c in self._terms.items():
            f = [0] * n
            for i, x in enumerate(e):
                if x:
                    f[index_map[i]] += x
            out[tuple(f)] = c
        return Polynomial(target, out)

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ring.variables == other.ring.variables and self.ring.p == other.ring.p
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, self.ring.p, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        from .parse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"
