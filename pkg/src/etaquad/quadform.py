"""Positive-definite integral binary quadratic forms.

Reduction to the canonical representative, enumeration of the reduced
primitive classes of a negative discriminant, Dirichlet composition and
class inverses, and exhaustive enumeration of the representations of an
integer by a form, including the mod-4-normalized solutions that drive
the product-series identities.

Value semantics throughout: forms, class groups and representation sets
are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form a*x^2 + b*x*y + c*y^2, written [a, b, c]."""

    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant() < 0

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"[{self.a}, {self.b}, {self.c}]"


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant with its conductor and unit weight."""

    d: int
    conductor: int
    unit_weight: int


@dataclass(frozen=True)
class ClassGroup:
    """All reduced primitive forms of one negative discriminant."""

    disc: Discriminant
    classes: tuple[QuadForm, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def principal(self) -> QuadForm:
        d = self.disc.d
        k = d % 2
        return QuadForm(1, k, (k * k - d) // 4)


@dataclass(frozen=True)
class RepSet:
    """Complete solution list of n = a*x^2 + b*x*y + c*y^2."""

    form: QuadForm
    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.pairs)


def _require_positive_definite(form: QuadForm) -> None:
    if not form.is_positive_definite():
        raise ValueError(f"form {form} is not positive definite")


def discriminant_info(d: int) -> Discriminant:
    """Validate d and attach its conductor and unit weight.

    The conductor is the largest f with d/f^2 still a discriminant; the
    unit weight is 6 for d = -3, 4 for d = -4, and 2 below -4.
    """
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    conductor = 1
    f = 2
    while f * f <= -d:
        if d % (f * f) == 0 and (d // (f * f)) % 4 in (0, 1):
            conductor = f
        f += 1
    if d == -3:
        w = 6
    elif d == -4:
        w = 4
    else:
        w = 2
    return Discriminant(d, conductor, w)


def reduce(form: QuadForm) -> QuadForm:
    """The unique reduced form equivalent to the input.

    Reduced means |b| <= a <= c with b >= 0 whenever |b| = a or a = c;
    obtained by alternating translations (normalize b into (-a, a]) and
    the swap step until the conditions hold.
    """
    _require_positive_definite(form)
    a, b, c = form.a, form.b, form.c
    while True:
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c or (a == c and b < 0):
            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        else:
            break
    out = QuadForm(a, b, c)
    assert out.is_reduced() and out.discriminant() == form.discriminant()
    return out


def inverse(form: QuadForm) -> QuadForm:
    """Reduced representative of the inverse class, i.e. of [a, -b, c]."""
    _require_positive_definite(form)
    if not form.is_primitive():
        raise ValueError(f"form {form} is not primitive")
    return reduce(QuadForm(form.a, -form.b, form.c))


def class_group(d: int) -> ClassGroup:
    """Enumerate the reduced primitive forms of discriminant d.

    Direct triple enumeration: every (a, b, c) with |b| <= a <= c,
    b^2 - 4ac = d and gcd(a, b, c) = 1, where b >= 0 on the boundary.
    """
    info = discriminant_info(d)
    classes: list[QuadForm] = []
    b = abs(d) % 2
    while 3 * b * b <= -d:
        ac = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if gcd(gcd(a, b), c) == 1:
                    classes.append(QuadForm(a, b, c))
                    if 0 < b < a < c:
                        classes.append(QuadForm(a, -b, c))
            a += 1
        b += 2
    return ClassGroup(info, tuple(sorted(classes)))


def _coprime_value_transform(form: QuadForm, modulus: int) -> QuadForm:
    """Equivalent form whose leading coefficient is coprime to modulus.

    A primitive form represents integers coprime to any fixed modulus;
    search small coprime (x, y), then complete to a unimodular change of
    variables.
    """
    if gcd(form.a, modulus) == 1:
        return form
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if max(abs(x), abs(y)) != bound or gcd(x, y) != 1:
                    continue
                if gcd(form.evaluate(x, y), modulus) != 1:
                    continue
                # complete (x, y) to SL2(Z): x*w - y*u = 1
                g, s, t = _xgcd(x, y)
                assert g == 1
                u, w = -t, s
                a2 = form.evaluate(x, y)
                b2 = 2 * (form.a * x * u + form.c * y * w) + form.b * (x * w + y * u)
                c2 = form.evaluate(u, w)
                return QuadForm(a2, b2, c2)
        bound += 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Reduced representative of the product class (Dirichlet composition).

    Replace f2 by an equivalent form whose leading coefficient is
    coprime to that of f1, solve the congruence system for a common
    middle coefficient B (concordant pair), multiply, reduce.  No
    composition shortcuts: the class groups in play are tiny.
    """
    _require_positive_definite(f1)
    _require_positive_definite(f2)
    if f1.discriminant() != f2.discriminant():
        raise ValueError(
            f"cannot compose forms of discriminants {f1.discriminant()} and {f2.discriminant()}"
        )
    if not (f1.is_primitive() and f2.is_primitive()):
        raise ValueError("composition needs primitive forms")
    d = f1.discriminant()
    g2 = _coprime_value_transform(f2, f1.a)
    a1, b1 = f1.a, f1.b
    a2, b2 = g2.a, g2.b
    assert gcd(a1, a2) == 1
    # B = b1 (mod 2 a1), B = b2 (mod 2 a2); b1, b2 share the parity of d
    t = (b2 - b1) // 2 * _inv_mod(a1, a2) % a2
    big_a = a1 * a2
    big_b = (b1 + 2 * a1 * t) % (2 * big_a)
    num = big_b * big_b - d
    assert num % (4 * big_a) == 0
    return reduce(QuadForm(big_a, big_b, num // (4 * big_a)))


def _inv_mod(a: int, m: int) -> int:
    if m == 1:
        return 0
    g, s, _ = _xgcd(a % m, m)
    assert g == 1
    return s % m


def representations(form: QuadForm, n: int) -> RepSet:
    """Every integer pair (x, y) with form(x, y) = n.

    Positive definiteness bounds the search box by
    x^2 <= 4cn/|d| and y^2 <= 4an/|d|; x is scanned exhaustively and y
    recovered from the integer quadratic formula.
    """
    _require_positive_definite(form)
    if n < 1:
        raise ValueError(f"representations needs n >= 1, got {n}")
    a, b, c = form.a, form.b, form.c
    d = form.discriminant()
    pairs: list[tuple[int, int]] = []
    xmax = isqrt(4 * c * n // -d)
    for x in range(-xmax, xmax + 1):
        # c*y^2 + b*x*y + (a*x^2 - n) = 0 over y
        disc_y = d * x * x + 4 * c * n
        s = isqrt(disc_y)
        if s * s != disc_y:
            continue
        for root in {s, -s}:
            num = -b * x + root
            if num % (2 * c) == 0:
                pairs.append((x, num // (2 * c)))
    return RepSet(form, n, tuple(sorted(pairs)))


def normalized_reps(form: QuadForm, n: int) -> list[tuple[int, int]]:
    """Solutions of n = a*x^2 + c*y^2 with x = y = 1 (mod 4).

    Only defined for diagonal forms; this is the canonical solution
    subset whose x*y values sum to the product-series coefficients.
    """
    if form.b != 0:
        raise ValueError(f"normalized representations need a diagonal form, got {form}")
    return [(x, y) for x, y in representations(form, n).pairs if x % 4 == 1 and y % 4 == 1]


def find_rep(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Some nonnegative (x, y) with m = a*x^2 + b*y^2, or None.

    Deterministic: the solution with the smallest x (y is then fixed).
    """
    if a < 1 or b < 1 or m < 1:
        raise ValueError(f"find_rep needs positive arguments, got ({a}, {b}, {m})")
    x = 0
    while a * x * x <= m:
        rem = m - a * x * x
        if rem % b == 0:
            t = rem // b
            y = isqrt(t)
            if y * y == t:
                return (x, y)
        x += 1
    return None
