"""Pluggable commutative coefficient rings for invariant values.

Variants: exact integers and rationals, tolerance-tagged reals, multivariate
polynomials over the other scalars, formal rank-r tensors of reals with a
Q-reduction normal form, and componentwise products.  Tensors model R (x) R
only up to the documented rationality-detection policy: a slot that the
continued-fraction detector recognizes as rational is moved across the
tensor sign into the coefficient, and terms with matching irrational slot
signatures are merged.  "Nonzero after normalization" is therefore evidence
subject to that policy, not a proof about the true tensor product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

DEFAULT_TOL = 1e-9
TENSOR_TOL = 1e-12
TENSOR_MAX_DEN = 10**4

Monomial = tuple[tuple[str, int], ...]


def detect_rational(x: float, max_den: int = TENSOR_MAX_DEN, tol: float = TENSOR_TOL) -> Optional[Fraction]:
    """Best rational with denominator <= max_den within tol, via the
    continued-fraction convergents; deterministic."""
    if max_den < 1:
        raise ValueError("max_den must be at least 1")
    cand = Fraction(x).limit_denominator(max_den)
    if abs(x - cand) <= tol:
        return cand
    return None


class RingValue:
    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))


@dataclass(frozen=True)
class Int(RingValue):
    n: int


@dataclass(frozen=True)
class Rat(RingValue):
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class Real(RingValue):
    x: float
    tol: float = TENSOR_TOL


@dataclass(frozen=True)
class Poly(RingValue):
    """Sparse polynomial; coefficients are scalar or tensor ring values."""

    terms: tuple[tuple[Monomial, RingValue], ...]

    @staticmethod
    def from_dict(d: dict) -> "Poly":
        items = tuple(sorted((m, c) for m, c in d.items() if not is_zero(c)))
        return Poly(items)

    def coefficient(self, mono: Monomial) -> RingValue:
        for m, c in self.terms:
            if m == mono:
                return c
        return Int(0)

    def as_dict(self) -> dict:
        return dict(self.terms)


@dataclass(frozen=True)
class Tensor(RingValue):
    """Formal sum of rank-r elementary tensors with rational coefficients.

    Slots are floats, or the exact integer 1 for slots already absorbed
    into the coefficient by Q-bilinearity.
    """

    rank: int
    terms: tuple[tuple[Fraction, tuple], ...]

    @staticmethod
    def from_terms(rank: int, terms) -> "Tensor":
        return normalize_tensor(Tensor(rank, tuple((Fraction(c), tuple(s)) for c, s in terms)))


@dataclass(frozen=True)
class Prod(RingValue):
    a: RingValue
    b: RingValue


def variable(name: str) -> Poly:
    return Poly(((((name, 1),), Int(1)),))


def monomial(*pairs) -> Monomial:
    return tuple(sorted((n, e) for n, e in pairs if e))


def rv(x) -> RingValue:
    if isinstance(x, RingValue):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a ring value")
    if isinstance(x, int):
        return Int(x)
    if isinstance(x, Fraction):
        return Rat(x)
    if isinstance(x, float):
        return Real(x)
    raise TypeError(f"cannot coerce {x!r} to a ring value")


def _scalar_rank(v: RingValue) -> int:
    return {Int: 0, Rat: 1, Real: 2}[type(v)]


def _tensor_from_scalar(v: RingValue, rank: int) -> Tensor:
    if isinstance(v, Int):
        v = Rat(Fraction(v.n))
    if isinstance(v, Rat):
        return Tensor(rank, ((v.q, (1,) * rank),)) if v.q != 0 else Tensor(rank, ())
    if isinstance(v, Real):
        q = detect_rational(v.x)
        if q is not None:
            return Tensor(rank, ((q, (1,) * rank),)) if q != 0 else Tensor(rank, ())
        raise TypeError("cannot embed an irrational real into a tensor ring canonically")
    raise TypeError(f"cannot embed {v!r} into a tensor ring")


def _coerce(a: RingValue, b: RingValue):
    """Bring two values into a common variant."""
    if type(a) is type(b):
        if isinstance(a, Tensor) and a.rank != b.rank:
            raise TypeError("tensor ranks differ")
        return a, b
    if isinstance(a, Prod) or isinstance(b, Prod):
        raise TypeError("product values only combine with product values")
    if isinstance(a, Poly) or isinstance(b, Poly):
        pa = a if isinstance(a, Poly) else Poly((((), a),)) if not is_zero(a) else Poly(())
        pb = b if isinstance(b, Poly) else Poly((((), b),)) if not is_zero(b) else Poly(())
        return pa, pb
    if isinstance(a, Tensor) or isinstance(b, Tensor):
        t, s = (a, b) if isinstance(a, Tensor) else (b, a)
        st = _tensor_from_scalar(s, t.rank)
        return (t, st) if isinstance(a, Tensor) else (st, t)
    ra, rb = _scalar_rank(a), _scalar_rank(b)
    hi = max(ra, rb)
    return _lift_scalar(a, hi), _lift_scalar(b, hi)


def _lift_scalar(v: RingValue, level: int) -> RingValue:
    if level == 0:
        return v
    if level == 1:
        if isinstance(v, Int):
            return Rat(Fraction(v.n))
        return v
    if isinstance(v, Int):
        return Real(float(v.n), 0.0)
    if isinstance(v, Rat):
        return Real(float(v.q), 0.0)
    return v


def add(a, b) -> RingValue:
    a, b = _coerce(rv(a), rv(b))
    if isinstance(a, Int):
        return Int(a.n + b.n)
    if isinstance(a, Rat):
        return Rat(a.q + b.q)
    if isinstance(a, Real):
        return Real(a.x + b.x, max(a.tol, b.tol))
    if isinstance(a, Poly):
        d = dict(a.terms)
        for m, c in b.terms:
            d[m] = add(d.get(m, Int(0)), c)
        return Poly.from_dict(d)
    if isinstance(a, Tensor):
        return normalize_tensor(Tensor(a.rank, a.terms + b.terms))
    if isinstance(a, Prod):
        return Prod(add(a.a, b.a), add(a.b, b.b))
    raise TypeError


def neg(a) -> RingValue:
    a = rv(a)
    if isinstance(a, Int):
        return Int(-a.n)
    if isinstance(a, Rat):
        return Rat(-a.q)
    if isinstance(a, Real):
        return Real(-a.x, a.tol)
    if isinstance(a, Poly):
        return Poly(tuple((m, neg(c)) for m, c in a.terms))
    if isinstance(a, Tensor):
        return Tensor(a.rank, tuple((-c, s) for c, s in a.terms))
    if isinstance(a, Prod):
        return Prod(neg(a.a), neg(a.b))
    raise TypeError


def mul(a, b) -> RingValue:
    a, b = _coerce(rv(a), rv(b))
    if isinstance(a, Int):
        return Int(a.n * b.n)
    if isinstance(a, Rat):
        return Rat(a.q * b.q)
    if isinstance(a, Real):
        return Real(a.x * b.x, max(a.tol, b.tol))
    if isinstance(a, Poly):
        d: dict = {}
        for ma, ca in a.terms:
            for mb, cb in b.terms:
                m = _mono_mul(ma, mb)
                c = mul(ca, cb)
                d[m] = add(d.get(m, Int(0)), c)
        return Poly.from_dict(d)
    if isinstance(a, Tensor):
        terms = []
        for ca, sa in a.terms:
            for cb, sb in b.terms:
                terms.append((ca * cb, tuple(_slot_mul(x, y) for x, y in zip(sa, sb))))
        return normalize_tensor(Tensor(a.rank, tuple(terms)))
    if isinstance(a, Prod):
        return Prod(mul(a.a, b.a), mul(a.b, b.b))
    raise TypeError


def _slot_mul(x, y):
    if x == 1:
        return y
    if y == 1:
        return x
    return x * y


def _mono_mul(ma: Monomial, mb: Monomial) -> Monomial:
    d: dict = {}
    for n, e in ma + mb:
        d[n] = d.get(n, 0) + e
    return tuple(sorted((n, e) for n, e in d.items() if e))


def is_zero(a, tol: float = 0.0) -> bool:
    a = rv(a)
    if isinstance(a, Int):
        return a.n == 0
    if isinstance(a, Rat):
        return a.q == 0
    if isinstance(a, Real):
        return abs(a.x) <= max(tol, 0.0)
    if isinstance(a, Poly):
        return all(is_zero(c, tol) for _, c in a.terms)
    if isinstance(a, Tensor):
        t = normalize_tensor(a)
        return all(abs(float(c)) * _sig_mag(sig) <= tol for c, sig in t.terms)
    if isinstance(a, Prod):
        return is_zero(a.a, tol) and is_zero(a.b, tol)
    raise TypeError


def _sig_mag(sig) -> float:
    out = 1.0
    for s in sig:
        out *= abs(float(s))
    return out


def eq_within(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Equality: exact for Int/Rat/Poly-over-Rat, toleranced otherwise."""
    a, b = rv(a), rv(b)
    try:
        ca, cb = _coerce(a, b)
    except TypeError:
        return False
    if isinstance(ca, Int):
        return ca.n == cb.n
    if isinstance(ca, Rat):
        return ca.q == cb.q
    if isinstance(ca, Real):
        return abs(ca.x - cb.x) <= max(tol, ca.tol, cb.tol)
    if isinstance(ca, Poly):
        monos = {m for m, _ in ca.terms} | {m for m, _ in cb.terms}
        return all(eq_within(ca.coefficient(m), cb.coefficient(m), tol) for m in monos)
    if isinstance(ca, Tensor):
        return tensor_eq(ca, cb, tol)
    if isinstance(ca, Prod):
        return eq_within(ca.a, cb.a, tol) and eq_within(ca.b, cb.b, tol)
    raise TypeError


def normalize_tensor(t: Tensor, max_den: int = TENSOR_MAX_DEN, tol: float = TENSOR_TOL) -> Tensor:
    """Q-reduction normal form under the stated detection policy."""
    moved = []
    for c, slots in t.terms:
        c = Fraction(c)
        out = []
        for s in slots:
            if s == 1:
                out.append(1)
                continue
            q = detect_rational(float(s), max_den, tol)
            if q is not None:
                c *= q
                out.append(1)
            elif s < 0:
                c = -c  # signs are rational scalars: move them across the sign
                out.append(-float(s))
            else:
                out.append(float(s))
        if c != 0:
            moved.append((c, tuple(out)))
    # Terms supported in a single slot are scalar multiples of images of
    # real numbers under r -> 1 (x) ... r ... (x) 1, so they add within the
    # slot; the sum may become rational and fall into the all-ones bucket.
    bucket = Fraction(0)
    single: dict[int, float] = {}
    rest = []
    for c, slots in moved:
        pattern = tuple(i for i, s in enumerate(slots) if s != 1)
        if not pattern:
            bucket += c
        elif len(pattern) == 1:
            i = pattern[0]
            single[i] = single.get(i, 0.0) + float(c) * float(slots[i])
        else:
            rest.append((c, slots))
    terms: list[tuple[Fraction, tuple]] = []
    for i, val in sorted(single.items()):
        q = detect_rational(val, max_den, tol)
        if q is not None:
            bucket += q
            continue
        coeff = Fraction(1)
        if val < 0:
            coeff, val = Fraction(-1), -val
        slots = tuple(val if j == i else 1 for j in range(t.rank))
        terms.append((coeff, slots))
    # merge remaining terms whose slot signatures agree within tol
    merged: list[list] = []
    for c, slots in sorted(rest, key=lambda p: tuple(float(s) for s in p[1])):
        for entry in merged:
            if _sig_close(entry[1], slots, tol):
                entry[0] += c
                break
        else:
            merged.append([c, slots])
    if bucket != 0:
        terms.insert(0, (bucket, (1,) * t.rank))
    terms.extend((c, s) for c, s in merged if c != 0)
    return Tensor(t.rank, tuple(terms))


def _sig_close(a, b, tol) -> bool:
    for x, y in zip(a, b):
        if (x == 1) != (y == 1):
            return False
        if x != 1 and abs(float(x) - float(y)) > tol:
            return False
    return True


def tensor_eq(a: Tensor, b: Tensor, tol: float = TENSOR_TOL) -> bool:
    d = normalize_tensor(add(a, neg(b)))
    return not d.terms or all(abs(float(c)) * _sig_mag(s) <= tol for c, s in d.terms)


def tensor_rational_part(t: Tensor) -> Fraction:
    """Coefficient of the all-ones bucket after normalization."""
    t = normalize_tensor(t)
    for c, slots in t.terms:
        if all(s == 1 for s in slots):
            return c
    return Fraction(0)


def tensor_irrational_part(t: Tensor) -> Tensor:
    t = normalize_tensor(t)
    return Tensor(t.rank, tuple((c, s) for c, s in t.terms if not all(x == 1 for x in s)))


def collapse(t: Tensor) -> Real:
    """Multiply the slots of every term and sum: the product map to R."""
    total = 0.0
    for c, slots in t.terms:
        total += float(c) * _sig_mag_signed(slots)
    return Real(total)


def _sig_mag_signed(sig) -> float:
    out = 1.0
    for s in sig:
        out *= float(s)
    return out


def swap(t: Tensor, i: int = 0, j: int = 1) -> Tensor:
    def sw(slots):
        s = list(slots)
        s[i], s[j] = s[j], s[i]
        return tuple(s)

    return normalize_tensor(Tensor(t.rank, tuple((c, sw(s)) for c, s in t.terms)))


def tensor_insert_one(t: Tensor, pos: int) -> Tensor:
    """Ring map inserting a 1 slot (repeats an indeterminate upstairs)."""
    return Tensor(t.rank + 1, tuple((c, s[:pos] + (1,) + s[pos:]) for c, s in t.terms))


def tensor_contract(t: Tensor, pos: int) -> Tensor:
    """Ring map multiplying slots pos and pos+1 together."""
    out = []
    for c, s in t.terms:
        merged = _slot_mul(s[pos], s[pos + 1])
        out.append((c, s[:pos] + (merged,) + s[pos + 2 :]))
    return normalize_tensor(Tensor(t.rank - 1, tuple(out)))


def tensor_embed(v: RingValue, rank: int, pos: int) -> RingValue:
    """Apply the ring map a -> 1 (x) ... a ... (x) 1 with a in slot `pos`."""
    if isinstance(v, Poly):
        return Poly(tuple((m, tensor_embed(c, rank, pos)) for m, c in v.terms))
    if isinstance(v, Int):
        v = Rat(Fraction(v.n))
    if isinstance(v, Rat):
        if v.q == 0:
            return Tensor(rank, ())
        return Tensor(rank, ((v.q, (1,) * rank),))
    if isinstance(v, Real):
        slots = [1] * rank
        slots[pos] = v.x
        return normalize_tensor(Tensor(rank, ((Fraction(1), tuple(slots)),)))
    if isinstance(v, Tensor):
        # re-embed a lower-rank tensor by padding with 1 slots at pos
        out = []
        for c, s in v.terms:
            pad = (1,) * (rank - v.rank)
            out.append((c, s[:pos] + pad + s[pos:] if pos <= len(s) else s + pad))
        return normalize_tensor(Tensor(rank, tuple(out)))
    raise TypeError(f"cannot embed {v!r} into a rank-{rank} tensor ring")


def as_float(v: RingValue) -> float:
    v = rv(v)
    if isinstance(v, Int):
        return float(v.n)
    if isinstance(v, Rat):
        return float(v.q)
    if isinstance(v, Real):
        return v.x
    raise TypeError(f"{v!r} is not scalar")


def as_fraction(v: RingValue) -> Optional[Fraction]:
    v = rv(v)
    if isinstance(v, Int):
        return Fraction(v.n)
    if isinstance(v, Rat):
        return v.q
    return None


def substitute(v: RingValue, assignment: dict) -> RingValue:
    """Specialize some polynomial variables; unassigned ones stay symbolic."""
    if not isinstance(v, Poly):
        return v
    total: RingValue = Int(0)
    for mono, coeff in v.terms:
        term: RingValue = coeff
        left = []
        for name, exp in mono:
            if name in assignment:
                val = rv(assignment[name])
                for _ in range(exp):
                    term = mul(term, val)
            else:
                left.append((name, exp))
        if left:
            term = mul(Poly(((tuple(sorted(left)), Int(1)),)), term)
        total = add(total, term)
    return total
