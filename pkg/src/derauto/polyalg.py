"""Sparse multivariate polynomials over Q and exact linear algebra.

Polynomials are immutable maps from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Variables are 1-indexed in the
public API (``x1 .. xn``), matching the textual syntax used by the CLI.
"""
from __future__ import annotations

from bisect import insort
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from operator import add
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]
Scalar = (int, Fraction)


def grlex_key(alpha: Monomial) -> tuple:
    """Sort key for graded lexicographic order (ascending degree, x1 first)."""
    return (sum(alpha), tuple(-a for a in alpha))


def monomials_up_to(n: int, d: int) -> List[Monomial]:
    """All exponent vectors in ``n`` variables of total degree <= ``d``, grlex."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def monomials_of_degree(n: int, k: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(n), k):
        alpha = [0] * n
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return out


class Polynomial:
    """Element of Q[x1, ..., xn] stored sparsely.

    Construction filters zero coefficients and coerces coefficients to
    ``Fraction``; arithmetic never stores zeros, so structural equality is
    mathematical equality.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, object]] = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: Dict[Monomial, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent vector {alpha} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(n, 1)

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls._raw(n, {tuple(alpha): Fraction(1)})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c=1) -> "Polynomial":
        return cls(len(alpha), {tuple(alpha): c})

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(a) for a in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, alpha: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def truncate(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {a: c for a, c in self.terms.items() if sum(a) <= d})

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {a: c for a, c in self.terms.items() if sum(a) == k})

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, Scalar):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for a, c in other.terms.items():
            s = terms.get(a, 0) + c
            if s:
                terms[a] = s
            else:
                terms.pop(a, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {a: v * c for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, Scalar):
            return self.terms == Polynomial.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __call__(self, *images: "Polynomial") -> "Polynomial":
        return substitute(self, images)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"


def _mul(p: Polynomial, q: Polynomial, trunc: Optional[int] = None) -> Polynomial:
    terms: Dict[Monomial, Fraction] = {}
    get = terms.get
    for a, c in p.terms.items():
        for b, e in q.terms.items():
            m = tuple(map(add, a, b))
            if trunc is not None and sum(m) > trunc:
                continue
            terms[m] = get(m, 0) + c * e
    return Polynomial._raw(p.nvars, {m: c for m, c in terms.items() if c})


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def mul_truncated(p: Polynomial, q: Polynomial, d: int) -> Polynomial:
    """Product with all terms of total degree > d discarded."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    return _mul(p, q, d)


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    """d/dx_i of ``p`` (``i`` is 1-based)."""
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range 1..{p.nvars}")
    k = i - 1
    terms = {}
    for a, c in p.terms.items():
        e = a[k]
        if e:
            terms[a[:k] + (e - 1,) + a[k + 1:]] = c * e
    return Polynomial._raw(p.nvars, terms)


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate ``p(images[0], ..., images[n-1])``."""
    images = list(images)
    if len(images) != p.nvars:
        raise ValueError(f"arity mismatch: {len(images)} images for {p.nvars} variables")
    if not images:
        raise ValueError("no images")
    m = images[0].nvars
    if any(q.nvars != m for q in images):
        raise ValueError("images live in different numbers of variables")
    powers: List[List[Polynomial]] = [[Polynomial.one(m)] for _ in images]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    acc: Dict[Monomial, Fraction] = {}
    for alpha, c in p.terms.items():
        term = None
        for i, e in enumerate(alpha):
            if e:
                f = power(i, e)
                term = f if term is None else term * f
        if term is None:
            term = Polynomial.one(m)
        for b, v in term.terms.items():
            acc[b] = acc.get(b, 0) + c * v
    return Polynomial._raw(m, {b: v for b, v in acc.items() if v})


# ---------------------------------------------------------------------------
# rendering

def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(alpha: Monomial) -> str:
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_term(alpha: Monomial, c: Fraction) -> Tuple[str, str]:
    """Return (sign, body) for one term; body omits a unit coefficient."""
    sign = "-" if c < 0 else "+"
    c = abs(c)
    mono = format_monomial(alpha)
    if not mono:
        return sign, format_scalar(c)
    if c == 1:
        return sign, mono
    return sign, f"{format_scalar(c)}*{mono}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (alpha, c) in enumerate(p.sorted_terms()):
        sign, body = format_term(alpha, c)
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# exact linear algebra
#
# Vectors are sparse dicts from comparable keys to rationals.  Elimination is
# fraction-free: every row is scaled to coprime integers and combined by
# cross-multiplication, then divided by its content.

SparseVec = Dict[Hashable, Fraction]


def _integer_row(vec: Mapping) -> Dict:
    vals = [Fraction(v) for v in vec.values() if v]
    if not vals:
        return {}
    den = lcm(*(v.denominator for v in vals))
    row = {k: int(Fraction(v) * den) for k, v in vec.items() if v}
    return _primitive(row)


def _primitive(row: Dict) -> Dict:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    piv = row[min(row)]
    if piv < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace.

    Each stored row is a primitive integer vector whose smallest key is its
    pivot; no other stored row with a smaller pivot contains that key.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: Dict[Hashable, Dict] = {}
        self._pivots: List = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> Dict:
        """Integer multiple of the residual of ``vec`` modulo the span."""
        r = _integer_row(vec)
        if not r:
            return r
        for p in self._pivots:
            a = r.get(p)
            if not a:
                continue
            prow = self.rows[p]
            b = prow[p]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {k: v * ma for k, v in r.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - mb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new)
            if not r:
                return r
        return r

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        self.rows[p] = r
        insort(self._pivots, p)
        return True

    def __contains__(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> Dict[Hashable, Dict]:
        """Fully reduced (RREF up to row scaling) copy of the stored rows."""
        rows = {p: dict(r) for p, r in self.rows.items()}
        for p in reversed(self._pivots):
            prow = rows[p]
            b = prow[p]
            for q in self._pivots:
                if q >= p:
                    break
                row = rows[q]
                a = row.get(p)
                if not a:
                    continue
                g = gcd(a, b)
                ma, mb = b // g, a // g
                new = {k: v * ma for k, v in row.items()}
                for k, v in prow.items():
                    s = new.get(k, 0) - mb * v
                    if s:
                        new[k] = s
                    else:
                        new.pop(k, None)
                rows[q] = _primitive(new)
        return rows


def rank(rows: Iterable[Mapping]) -> int:
    return Echelon(rows).rank


def _as_sparse_rows(M) -> Tuple[List[Dict[int, Fraction]], int]:
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    return [{j: Fraction(v) for j, v in enumerate(r) if v} for r in rows], ncols


def _null_from_echelon(ech: Echelon, cols: Sequence[Hashable]) -> List[Dict[Hashable, Fraction]]:
    rows = ech.reduced_rows()
    basis = []
    for f in cols:
        if f in rows:
            continue
        v = {f: Fraction(1)}
        for p, row in rows.items():
            a = row.get(f)
            if a:
                v[p] = Fraction(-a, row[p])
        first = v[min(v)]
        basis.append({k: c / first for k, c in v.items()})
    return basis


def nullspace(M, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Exact basis of ``{v : M v = 0}``.

    ``M`` is a dense rational matrix (sequence of rows).  Pass ``ncols`` when
    ``M`` has no rows.  Each basis vector has first nonzero entry 1, and the
    basis is indexed by the free columns in increasing order.
    """
    rows, nc = _as_sparse_rows(M)
    if ncols is not None:
        if rows and nc != ncols:
            raise ValueError("ncols disagrees with matrix width")
        nc = ncols
    ech = Echelon(rows)
    out = []
    for v in _null_from_echelon(ech, range(nc)):
        out.append([v.get(j, Fraction(0)) for j in range(nc)])
    return out


def sparse_nullspace(columns: Sequence[Mapping]) -> List[Dict[int, Fraction]]:
    """Kernel of the linear map whose j-th column is the sparse vector ``columns[j]``.

    Returns sparse coefficient vectors over column indices.
    """
    by_row: Dict[Hashable, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                by_row.setdefault(k, {})[j] = v
    ech = Echelon(by_row.values())
    return _null_from_echelon(ech, range(len(columns)))


def solve_columns(columns: Sequence[Mapping], target: Mapping) -> Optional[List[Fraction]]:
    """Some ``c`` with ``sum(c[j] * columns[j]) == target``, or None."""
    n = len(columns)
    by_row: Dict[Hashable, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                by_row.setdefault(k, {})[j] = v
    for k, v in target.items():
        if v:
            by_row.setdefault(k, {})[n] = -Fraction(v)
    # order columns so the target column is eliminated last
    ech = Echelon(by_row.values())
    rows = ech.reduced_rows()
    if n in rows:
        return None
    sol = [Fraction(0)] * n
    for p, row in rows.items():
        a = row.get(n)
        if a:
            sol[p] = Fraction(-a, row[p])
    return sol


def matvec(M, v) -> List[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M]


def poly_vector(p: Polynomial) -> Dict[Monomial, Fraction]:
    return dict(p.terms)


def vector_poly(n: int, v: Mapping[Monomial, Fraction]) -> Polynomial:
    return Polynomial(n, v)
