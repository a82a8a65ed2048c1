"""Exact integer and quadratic-form arithmetic.

Kronecker symbols, Moebius, divisor power sums, fundamental discriminants
with their class data (reduced binary quadratic forms, Pell automorph or
unit count), and the hyperbolic geometry a form carries: a closed geodesic
for positive discriminant, a CM point for negative discriminant.

Everything is exact integer arithmetic except the geodesic parametrisation,
which is plain floating point.  Class/form searches are bounded by
|D| <= DISC_MAX.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .envelope import DISC_MAX
from .errors import NotFundamental


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Full Kronecker symbol (D/n), completely multiplicative in n.

    Agrees with the Legendre symbol for odd prime n coprime to D, and
    realizes the quadratic character chi_D of Q(sqrt(D)) when D is a
    fundamental discriminant.
    """
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        # (D/2) by D mod 8
        two = 1 if D % 8 in (1, 7) else -1
        while n % 2 == 0:
            n //= 2
            result *= two
    if n == 1:
        return result
    return result * jacobi(D % n, n)


def moebius(n: int) -> int:
    """Moebius function; 0 on any square factor."""
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def squarefree_decompose(d: int) -> tuple[int, int]:
    """Write d = d0 * d1**2 with d0 squarefree; returns (d0, d1)."""
    if d < 1:
        raise ValueError("squarefree_decompose needs d >= 1")
    d0, d1 = 1, 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            d1 *= p ** (e // 2)
            if e % 2:
                d0 *= p
        p += 1 if p == 2 else 2
    d0 *= d
    return d0, d1


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n >= 1, ascending."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def divisor_power_sum(n: int, nu: complex) -> complex:
    """sigma_nu(n) = sum of d**nu over the divisors of n (complex nu)."""
    if n < 1:
        raise ValueError("divisor_power_sum needs n >= 1")
    total = 0j
    for d in divisors(n):
        total += cmath.exp(nu * math.log(d)) if d > 1 else 1.0
    return total


def is_fundamental(D: int) -> bool:
    """True when D is a fundamental quadratic discriminant (D != 1)."""
    if D == 0 or D == 1:
        return False
    if D % 4 == 1:
        return squarefree_decompose(abs(D))[1] == 1
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_decompose(abs(m))[1] == 1
    return False


def fundamental_discriminant(d: int) -> int:
    """Fundamental discriminant of Q(sqrt(d)) for a non-square d != 0.

    Torus labels depend on d only modulo squares, so arbitrary d is
    reduced to the fundamental discriminant of its squarefree kernel.
    """
    if d == 0:
        raise NotFundamental("d = 0 labels no torus")
    d0 = squarefree_decompose(abs(d))[0] * (1 if d > 0 else -1)
    if d0 == 1:
        raise NotFundamental("square d labels the split torus, not supported")
    return d0 if d0 % 4 == 1 else 4 * d0


def fundamental_discriminants(bound: int) -> list[int]:
    """Fundamental discriminants with |D| <= bound, by |D| (positive first)."""
    out = [D for a in range(1, bound + 1) for D in (a, -a) if is_fundamental(D)]
    out.sort(key=lambda D: (abs(D), D < 0))
    return out


@dataclass(frozen=True)
class QuadChar:
    """Real quadratic character attached to a fundamental discriminant.

    Completely multiplicative, period |D|, vanishing on gcd(n, D) > 1;
    parity flag a = (1 - chi(-1)) / 2.
    """

    D: int
    conductor: int
    parity: int

    @classmethod
    def from_discriminant(cls, D: int) -> "QuadChar":
        if not is_fundamental(D):
            raise NotFundamental(f"{D} is not a fundamental discriminant")
        return cls(D=D, conductor=abs(D), parity=0 if D > 0 else 1)

    def __call__(self, n: int) -> int:
        return kronecker(self.D, n)


@dataclass(frozen=True)
class GeodesicParam:
    """Closed-geodesic data of an indefinite form (a,b,c), a > 0.

    Endpoints w1 < w2 are the real roots of a x^2 + b x + c; the geodesic
    is the semicircle over (w1, w2), traversed with unit hyperbolic speed
    and period 2 log(epsilon_D).
    """

    form: tuple[int, int, int]
    w1: float
    w2: float
    period_length: float


@dataclass(frozen=True)
class HeegnerPoint:
    """CM point z = (-b + i sqrt|D|) / (2a) of a definite form, a > 0."""

    form: tuple[int, int, int]
    z: complex


@dataclass(frozen=True)
class Discriminant:
    """A fundamental discriminant with its class data.

    reduced_forms holds one representative per form class (for D > 0 one
    per cycle of reduced forms, i.e. per narrow class).  For D > 0 the
    fundamental automorph (t, u) solves t^2 - D u^2 = 4 exactly and
    epsilon = (t + u sqrt D)/2 > 1; for D < 0, w is the unit count
    (6 for -3, 4 for -4, else 2).
    """

    D: int
    h: int
    reduced_forms: tuple[tuple[int, int, int], ...]
    t: int | None = None
    u: int | None = None
    w: int | None = None

    @property
    def sign(self) -> int:
        return 1 if self.D > 0 else -1

    @property
    def epsilon(self) -> float:
        if self.D < 0:
            raise ValueError("epsilon only defined for D > 0")
        return (self.t + self.u * math.sqrt(self.D)) / 2.0

    def geodesics(self) -> list[GeodesicParam]:
        if self.D < 0:
            raise ValueError("geodesics only defined for D > 0")
        length = 2.0 * math.log(self.epsilon)
        sq = math.sqrt(self.D)
        out = []
        for a, b, c in self.reduced_forms:
            out.append(
                GeodesicParam(
                    form=(a, b, c),
                    w1=(-b - sq) / (2 * a),
                    w2=(-b + sq) / (2 * a),
                    period_length=length,
                )
            )
        return out

    def heegner_points(self) -> list[HeegnerPoint]:
        if self.D > 0:
            raise ValueError("heegner_points only defined for D < 0")
        sq = math.sqrt(-self.D)
        return [
            HeegnerPoint(form=(a, b, c), z=complex(-b / (2 * a), sq / (2 * a)))
            for a, b, c in self.reduced_forms
        ]


def _reduced_forms_negative(D: int) -> list[tuple[int, int, int]]:
    # |b| <= a <= c, b == D mod 2, with b >= 0 when a == c or |b| == a.
    forms = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c or -b == a):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
    forms.sort()
    return forms


def _is_reduced_positive(a: int, b: int, c: int, D: int) -> bool:
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, in exact arithmetic.
    if b <= 0 or b * b >= D:
        return False
    ta = 2 * abs(a)
    if (ta + b) ** 2 <= D:
        return False
    if ta > b and (ta - b) ** 2 >= D:
        return False
    return True


def _reduced_forms_positive(D: int) -> list[tuple[int, int, int]]:
    sq = isqrt(D)
    forms = []
    for b in range(1, sq + 1):
        if (b - D) % 2:
            continue
        for aa in range(1, (sq + b) // 2 + 1):
            num = b * b - D
            for a in (aa, -aa):
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if not _is_reduced_positive(a, b, c, D):
                    continue
                if gcd(gcd(abs(a), b), abs(c)) != 1:
                    continue
                forms.append((a, b, c))
    return sorted(set(forms))


def _rho_step(form: tuple[int, int, int], D: int) -> tuple[tuple[int, int, int], int]:
    """One reduction step on a reduced indefinite form.

    Returns the successor (c, r, (r^2-D)/(4c)) with r = -b mod 2|c| in the
    window (sqrt D - 2|c|, sqrt D), and the column-action parameter
    m = (b + r)/(2c) of the transformation [[0,-1],[1,m]].
    """
    a, b, c = form
    ac = abs(c)
    sq = isqrt(D)
    t = (-b) % (2 * ac)
    lo = sq - 2 * ac + 1
    q = (lo - t + 2 * ac - 1) // (2 * ac)
    r = t + 2 * ac * q
    c2 = (r * r - D) // (4 * c)
    m = (b + r) // (2 * c)
    return (c, r, c2), m


def _cycles_and_automorph(D: int):
    """Partition reduced forms into rho-cycles; automorph from one full cycle.

    The product of the step matrices [[0,-1],[1,m_i]] around a cycle is the
    fundamental automorph of its starting form; its trace t and lower-left
    entry a*u recover the fundamental Pell solution t^2 - D u^2 = 4.
    """
    forms = _reduced_forms_positive(D)
    unseen = set(forms)
    cycles = []
    pell = None
    while unseen:
        start = min(unseen)
        cycle = []
        M = ((1, 0), (0, 1))
        f = start
        while True:
            cycle.append(f)
            unseen.discard(f)
            f2, m = _rho_step(f, D)
            (m00, m01), (m10, m11) = M
            # M <- M @ [[0,-1],[1,m]]
            M = ((m01, -m00 + m01 * m), (m11, -m10 + m11 * m))
            f = f2
            if f == start:
                break
        cycles.append(cycle)
        if pell is None:
            (m00, m01), (m10, m11) = M
            t = m00 + m11
            if t < 0:
                t, m10 = -t, -m10
            a0 = start[0]
            if m10 % a0:
                raise ArithmeticError("cycle product is not an automorph")
            u = abs(m10 // a0)
            if t * t - D * u * u != 4 or u == 0:
                raise ArithmeticError("cycle product fails the Pell equation")
            pell = (t, u)
    return cycles, pell


@lru_cache(maxsize=None)
def class_data(D: int) -> Discriminant:
    """Full class data of a fundamental discriminant.

    D < 0: reduced forms |b| <= a <= c with the usual tie rules, unit count w.
    D > 0: one representative per cycle of reduced forms (narrow classes),
    chosen as the smallest form with a > 0 in the cycle, plus the
    fundamental automorph (t, u).
    """
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    if abs(D) > DISC_MAX:
        raise NotFundamental(f"|D| > {DISC_MAX} exceeds the configured bound")
    if D < 0:
        forms = _reduced_forms_negative(D)
        w = 6 if D == -3 else 4 if D == -4 else 2
        return Discriminant(D=D, h=len(forms), reduced_forms=tuple(forms), w=w)
    cycles, (t, u) = _cycles_and_automorph(D)
    reps = tuple(sorted(min(f for f in cyc if f[0] > 0) for cyc in cycles))
    return Discriminant(D=D, h=len(cycles), reduced_forms=reps, t=t, u=u)


def geodesic_point(G: GeodesicParam, t: float) -> complex:
    """Unit-speed point z(t) on the geodesic semicircle of G.

    z(t) = midpoint + R tanh(t) + i R sech(t); |z'(t)| / Im z(t) = 1, and
    z(t) -> w2 as t -> +infinity.
    """
    m = (G.w1 + G.w2) / 2.0
    R = (G.w2 - G.w1) / 2.0
    return complex(m + R * math.tanh(t), R / math.cosh(t))


def automorph_matrix(disc: Discriminant, form: tuple[int, int, int]):
    """Integral automorph of `form` built from the Pell solution of disc.

    Maps z(t) to z(t + 2 log epsilon) on the geodesic (a > 0, t,u > 0).
    """
    if disc.D < 0:
        raise ValueError("automorphs of definite forms are finite; no matrix here")
    a, b, c = form
    t, u = disc.t, disc.u
    return ((t - b * u) // 2, -c * u), (a * u, (t + b * u) // 2)
