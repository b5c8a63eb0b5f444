"""Gamma-vectors of palindromic h-vectors, three ways, plus the binomial
identities behind the closed formula.

All arithmetic is exact (integers, Fractions for the linear solve); entries
of a gamma-vector are signed and cancellation-heavy, so no modular tricks.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .complexes import SimplicialComplex
from .errors import (
    EvenDimension,
    LengthMismatch,
    NotCM,
    NotPalindromic,
    OutOfRange,
)
from .fields import FieldSpec
from .homology import is_cohen_macaulay, reduced_homology


def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or n < k:
        return 0
    return comb(n, k)


def lucas_coeff(r: int, i: int) -> int:
    """C(r-i, i) + C(r-i-1, i-1), with the convention that (0,0) gives 2."""
    if i < 0 or 2 * i > r:
        raise OutOfRange(f"need 0 <= 2i <= r, got r={r}, i={i}")
    if r == 0 and i == 0:
        return 2
    return _binom(r - i, i) + _binom(r - i - 1, i - 1)


def lucas_table(r_max: int) -> dict:
    return {
        (r, i): lucas_coeff(r, i) for r in range(r_max + 1) for i in range(r // 2 + 1)
    }


def _check_palindromic(h) -> tuple:
    h = tuple(int(x) for x in h)
    s = len(h) - 1
    if s < 0 or any(h[i] != h[s - i] for i in range(len(h))):
        raise NotPalindromic(f"{h} is not palindromic")
    return h


def _gamma_recursion(h: tuple) -> tuple:
    s = len(h) - 1
    gamma = []
    for i in range(s // 2 + 1):
        val = h[i] - sum(_binom(s - 2 * j, i - j) * gamma[j] for j in range(i))
        gamma.append(val)
    return tuple(gamma)


def _gamma_linear_solve(h: tuple) -> tuple:
    """Solve the change-of-basis system over the rationals and check it is
    consistent on all s+1 coefficients, not just the first half."""
    s = len(h) - 1
    q = s // 2
    rows = []
    for k in range(s + 1):
        rows.append([Fraction(_binom(s - 2 * i, k - i)) for i in range(q + 1)]
                    + [Fraction(h[k])])
    # Gaussian elimination on the overdetermined system
    pivot_rows = []
    for col in range(q + 1):
        piv = None
        for row in rows:
            if row[col] != 0 and all(row[c] == 0 for c in range(col)):
                piv = row
                break
        assert piv is not None
        piv = [x / piv[col] for x in piv]
        pivot_rows.append(piv)
        rows = [
            [x - row[col] * p for x, p in zip(row, piv)] if row is not piv else row
            for row in rows
        ]
    for row in rows:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            raise NotPalindromic("inconsistent system: input is not palindromic")
    sol = [None] * (q + 1)
    for col in reversed(range(q + 1)):
        row = pivot_rows[col]
        val = row[-1] - sum(row[c] * sol[c] for c in range(col + 1, q + 1))
        sol[col] = val
    assert all(x.denominator == 1 for x in sol)
    return tuple(int(x) for x in sol)


def gamma_from_h(h) -> tuple:
    """Coordinates of a palindromic h-polynomial in the t^i (1+t)^(s-2i) basis.

    Computed by the triangular recursion and independently by an exact linear
    solve; the two must agree and the result must reproduce h.
    """
    h = _check_palindromic(h)
    rec = _gamma_recursion(h)
    solved = _gamma_linear_solve(h)
    assert rec == solved, (rec, solved)
    assert h_from_gamma(rec, len(h) - 1) == h
    return rec


def h_from_gamma(gamma, s: int) -> tuple:
    return tuple(
        sum(gamma[i] * _binom(s - 2 * i, k - i) for i in range(len(gamma)))
        for k in range(s + 1)
    )


def gamma_closed_formula(h_delta, d: int) -> tuple:
    """Gamma-vector of the Gorenstein ring straight from h of the complex.

    gamma_0 = 1 and gamma_i = (-1)^(i-1) * sum_{k=2i-1}^d l_{k-1,i-1} h_k.
    """
    h = tuple(int(x) for x in h_delta)
    if len(h) != d + 1:
        raise LengthMismatch(f"h-vector of length {len(h)} does not match d={d}")
    out = [1]
    for i in range(1, (d + 1) // 2 + 1):
        total = sum(lucas_coeff(k - 1, i - 1) * h[k] for k in range(2 * i - 1, d + 1))
        out.append(total if i % 2 == 1 else -total)
    return tuple(out)


def top_gamma_via_euler(delta: SimplicialComplex, field: FieldSpec) -> int:
    """Last gamma entry of the Gorenstein ring from the Euler characteristic.

    Needs d odd, d >= 3, and Cohen-Macaulayness over the field, under which
    the value also equals +-2 times the top homology dimension.
    """
    d = delta.dim() + 1
    if d < 3 or d % 2 == 0:
        raise EvenDimension(f"needs odd d >= 3, got d={d}")
    if not is_cohen_macaulay(delta, field):
        raise NotCM("the complex is not Cohen-Macaulay over this field")
    sign = -1 if (d - 1) // 2 % 2 else 1
    chi = delta.reduced_euler_characteristic()
    value = sign * 2 * chi
    top = reduced_homology(delta, field).get(d - 1, 0)
    assert value == sign * 2 * top
    return value


def verify_identities(r_max: int) -> dict:
    """Check the two closed-form identities exactly for all indices <= r_max.

    Identity one: 1 + t^r equals the alternating Lucas combination of the
    (1+t)-powers.  Identity two is its binomial-coefficient specialization.
    Returns a report whose violation lists are expected to be empty.
    """
    violations_i = []
    for r in range(r_max + 1):
        lhs = [0] * (r + 1)
        lhs[0] += 1
        lhs[r] += 1
        rhs = [0] * (r + 1)
        for i in range(r // 2 + 1):
            l = lucas_coeff(r, i)
            sign = -1 if i % 2 else 1
            for j in range(r - 2 * i + 1):
                rhs[i + j] += sign * l * _binom(r - 2 * i, j)
        if lhs != rhs:
            violations_i.append({"r": r, "lhs": lhs, "rhs": rhs})
    violations_ii = []
    for r in range(r_max + 1):
        for n in range(r_max + 1):
            for m in range(r_max + 1):
                lhs = _binom(n, m) + _binom(n, m - r)
                rhs = sum(
                    (-1 if i % 2 else 1)
                    * lucas_coeff(r, i)
                    * _binom(n + r - 2 * i, m - i)
                    for i in range(r // 2 + 1)
                )
                if lhs != rhs:
                    violations_ii.append({"n": n, "m": m, "r": r, "lhs": lhs, "rhs": rhs})
    return {
        "r_max": r_max,
        "identity_i_violations": violations_i,
        "identity_ii_violations": violations_ii,
        "ok": not violations_i and not violations_ii,
    }
