"""Shared test helpers: independent oracles and seeded random generators.

The word-rewriting oracle normalizes a generator word using only the two
presentation relations (adjacent swap with a sign, adjacent equal pair to a
scalar square), giving a sign/blade answer on a path fully independent of
the library's popcount-based product.  The division-algebra models (complex
pairs, split pairs, quaternion 4-tuples, 2x2 rational matrices) provide the
exact targets for the worked-example isomorphism checks.
"""

from __future__ import annotations

import random
from fractions import Fraction

from cliffalg import (
    BilinearForm,
    Multivector,
    Signature,
    geometric_product,
    quadratic_value,
    reflection_matrix,
)
from cliffalg import _linalg


def normalize_word(indices, sig: Signature):
    """(sign, ascending index tuple) of a generator word, by bubble rewriting.

    Uses only e_i e_j = -e_j e_i (i != j) and e_i e_i = square(e_i).
    """
    sign = Fraction(1)
    word = list(indices)
    changed = True
    while changed:
        changed = False
        k = 0
        while k + 1 < len(word):
            a, b = word[k], word[k + 1]
            if a == b:
                sign *= sig.generator_square(a)
                del word[k : k + 2]
                if sign == 0:
                    return Fraction(0), ()
                changed = True
                k = max(0, k - 1)
            elif a > b:
                word[k], word[k + 1] = b, a
                sign = -sign
                changed = True
                k += 1
            else:
                k += 1
    return sign, tuple(word)


def word_to_multivector(indices, sig: Signature) -> Multivector:
    out = Multivector.one(sig)
    for i in indices:
        out = geometric_product(out, Multivector.generator(sig, i))
    return out


def all_signatures(max_n: int, degenerate: bool = True):
    """Every (p, q, s) with 0 <= p+q+s <= max_n (s = 0 only when degenerate=False)."""
    out = []
    for n in range(max_n + 1):
        for p in range(n + 1):
            for q in range(n - p + 1):
                s = n - p - q
                if s and not degenerate:
                    continue
                out.append(Signature(p, q, s))
    return out


def rand_fraction(rng: random.Random, span: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_multivector(rng: random.Random, sig: Signature, density: float = 0.5) -> Multivector:
    coeffs = {}
    for mask in range(1 << sig.n):
        if rng.random() < density:
            coeffs[mask] = rand_fraction(rng)
    return Multivector(sig, coeffs)


def rand_vector(rng: random.Random, n: int) -> list:
    return [rand_fraction(rng, span=5, den=3) for _ in range(n)]


def rand_anisotropic_vector(rng: random.Random, form: BilinearForm) -> list:
    while True:
        v = rand_vector(rng, form.n)
        if quadratic_value(form, v) != 0:
            return v


def rand_isometry(rng: random.Random, form: BilinearForm, reflections: int):
    """Product of the given number of random reflection matrices."""
    m = _linalg.identity(form.n)
    for _ in range(reflections):
        w = rand_anisotropic_vector(rng, form)
        m = _linalg.mat_mul(m, reflection_matrix(form, w).rows())
    return m


# exact models for the worked-example isomorphisms


def complex_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def split_mul(a, b):
    return (a[0] * b[0], a[1] * b[1])


def quaternion_mul(a, b):
    """Hamilton product on (w, x, y, z) with i*j = k."""
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def pair_mul(mul):
    def product(a, b):
        return (mul(a[0], b[0]), mul(a[1], b[1]))

    return product


def mat2_mul(a, b):
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2)) for r in range(2)
    )


def scale_tuple(value, item):
    """Scale a nested tuple structure by a rational."""
    if isinstance(item, tuple):
        return tuple(scale_tuple(value, part) for part in item)
    return value * item
