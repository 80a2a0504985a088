"""Closed-form invariants of an m-fold mesh algebra by extended type.

All classification data of the quotient algebra of extended type
(Delta, m, t) over a field of a given characteristic: the sign subgroup
H, the (weak) symmetry verdict, the vertex-action order u, the
Omega-period, and the stable / Frobenius Calabi-Yau dimensions.  Pure
integer arithmetic; congruence minimizations scan the smallest
non-negative (or positive, where the set demands it) solution directly.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .dynkin import DynkinSpec


class UnsupportedType(ValueError):
    """Raised for A1, which is semisimple and excluded throughout."""


def _check_type(spec: DynkinSpec, t: int):
    if spec.family == "A" and spec.rank == 1:
        raise UnsupportedType("A1 quotients are semisimple; not supported")


def o2(k: int) -> int:
    """2-adic valuation of a positive integer."""
    return (k & -k).bit_length() - 1


def _cong_min(a: int, b: int, mod: int, start: int = 0) -> int:
    """Smallest v >= start with a*v = b (mod mod)."""
    for v in range(start, start + mod + 1):
        if (a * v - b) % mod == 0:
            return v
    raise ArithmeticError(f"no solution of {a}*v = {b} (mod {mod})")


def _is_A_even(spec) -> bool:
    return spec.family == "A" and spec.rank % 2 == 0


def _nu_uses_rho(spec) -> bool:
    """True for the families with nu = rho tau^{1-n}: A_r, D_odd, E6."""
    if spec.family == "A":
        return True
    if spec.family == "D":
        return spec.rank % 2 == 1
    return spec.rank == 6


def H_subgroup(spec: DynkinSpec, m: int, t: int, char: int) -> str:
    """The subgroup of Z of exponents s with eta^s nu^{-s} inner: 'Z' or '2Z'."""
    if char == 2 or spec.family == "A":
        return "Z"
    return "Z" if (m + t) % 2 == 1 else "2Z"


def symmetry_class(spec: DynkinSpec, m: int, t: int, char: int) -> tuple[bool, bool]:
    """(weakly symmetric, symmetric)."""
    c = spec.coxeter
    if t == 3:
        return False, False
    if t == 1:
        wk = not _nu_uses_rho(spec) and (c // 2 - 1) % m == 0
        return wk, wk and (char == 2 or m % 2 == 0)
    if _is_A_even(spec):
        n = spec.rank // 2
        wk = (2 * n - 1) % (2 * m - 1) == 0
        return wk, wk
    half = c // 2 - 1
    if half % m != 0:
        return False, False
    quot = half // m
    if spec.family == "A":
        wk = quot % 2 == 1
    elif spec.family == "D" and spec.rank % 2 == 0:
        wk = quot % 2 == 0
    else:
        wk = True
    sym = wk and (char == 2 or (spec.family == "A") or m % 2 == 1)
    return wk, sym


def vertex_order_u(spec: DynkinSpec, m: int, t: int) -> int:
    """The order of nu_bar tau_bar^{-1} on vertex orbits."""
    c = spec.coxeter
    if t == 3:
        return m
    if t == 1:
        if _nu_uses_rho(spec):
            return 2 * m // gcd(m, c)
        return m // gcd(m, c // 2)
    if _is_A_even(spec):
        n = spec.rank // 2
        return (2 * m - 1) // gcd(2 * m - 1, 2 * n + 1)
    if _nu_uses_rho(spec):
        return 2 * m // gcd(2 * m, m + c // 2)
    return 2 * m // gcd(2 * m, c // 2)


def period(spec: DynkinSpec, m: int, t: int, char: int) -> int:
    """The Omega-period of the quotient of extended type (Delta, m, t)."""
    _check_type(spec, t)
    c = spec.coxeter
    if spec.family == "A" and spec.rank == 2:
        nq = 2 * m if t == 1 else 2 * m - 1
        if char == 2 or nq % 2 == 0:
            return nq
        return 2 * nq
    if char == 2:
        return 3 * vertex_order_u(spec, m, t)
    if t == 1:
        if _nu_uses_rho(spec):
            return 6 * m // gcd(m, c)
        d = gcd(m, c // 2)
        return 3 * m // d if m % 2 == 0 else 6 * m // d
    if t == 2:
        if _is_A_even(spec):
            n = spec.rank // 2
            return 6 * (2 * m - 1) // gcd(2 * m - 1, 2 * n + 1)
        if spec.family == "D" and spec.rank % 2 == 0:
            return 6 * m // gcd(2 * m, c // 2)
        d = gcd(2 * m, m + c // 2)
        return 6 * m // d if o2(m) != o2(c // 2) else 12 * m // d
    return 3 * m if m % 2 == 0 else 6 * m


def n_cy_min(spec: DynkinSpec, m: int, t: int):
    """min of the set of s > 0 whose syzygy twist power matches the Nakayama
    vertex action, or None when that set is empty."""
    _check_type(spec, t)
    if spec.family == "A" and spec.rank == 2:
        raise UnsupportedType("the Calabi-Yau exponent set excludes A2")
    c = spec.coxeter
    if t == 3:
        return None
    if t == 1:
        if _nu_uses_rho(spec):
            if gcd(m, c) != 1:
                return None
            return 2 * _cong_min(c, -1, m) + 1
        if gcd(m, c // 2) != 1:
            return None
        return _cong_min(c // 2, -1, m) + 1
    if _is_A_even(spec):
        n = spec.rank // 2
        if gcd(2 * m - 1, 2 * n + 1) != 1:
            return None
        return _cong_min(m + n, -1, 2 * m - 1) + 1
    if _nu_uses_rho(spec):
        if gcd(2 * m, m + c // 2) != 1:
            return None
        return _cong_min(m + c // 2, -1, 2 * m) + 1
    if gcd(m, c // 2) != 1:
        return None
    return _cong_min(c // 2, -1, 2 * m) + 1


def cy_dimensions(spec: DynkinSpec, m: int, t: int, char: int):
    """(stably_CY, CY_dim, CYF_dim); the dims are None when not stably CY."""
    _check_type(spec, t)
    c = spec.coxeter
    if spec.family == "A" and spec.rank == 2:
        if char == 2 or t == 1:
            return True, 0, 0
        return True, 0, 2 * m - 1
    if t == 3:
        return False, None, None
    if char == 2:
        s = n_cy_min(spec, m, t)
        if s is None:
            return False, None, None
        return True, 3 * s - 1, 3 * s - 1
    if t == 1:
        if _nu_uses_rho(spec):
            if gcd(m, c) != 1:
                return False, None, None
            u = _cong_min(c, -1, m)
            d = 6 * u + 2
        else:
            if gcd(m, c // 2) != 1:
                return False, None, None
            if m % 2 == 0:
                d = 3 * _cong_min(c // 2, -1, m) + 2
            else:
                d = 6 * _cong_min(c, -1, m) + 2
        return True, d, d
    if _is_A_even(spec):
        n = spec.rank // 2
        if gcd(2 * m - 1, 2 * n + 1) != 1:
            return False, None, None
        u = next(u for u in range(1, 2 * (2 * m - 1) + 2) if ((m + n) * (2 * u - 1) + 1) % (2 * m - 1) == 0)
        d = 6 * u - 1
        return True, d, d
    if spec.family == "D" and spec.rank % 2 == 0:
        if gcd(m, c // 2) != 1 or m % 2 == 0:
            return False, None, None
        d = 3 * _cong_min(c // 2, -1, 2 * m) + 2
        return True, d, d
    if gcd(2 * m, m + c // 2) != 1:
        return False, None, None
    d = 3 * _cong_min(m + c // 2, -1, 2 * m) + 2
    return True, d, d


@dataclass(frozen=True)
class InvariantReport:
    family: str
    rank: int
    m: int
    t: int
    characteristic: int
    coxeter: int
    loewy_length: int
    H_subgroup: str
    weakly_symmetric: bool
    symmetric: bool
    u: int
    period: int
    stably_calabi_yau: bool
    cy_dim: int | None
    cyf_dim: int | None
    n_cy_min: int | None

    def to_dict(self) -> dict:
        return asdict(self)


def invariant_report(spec: DynkinSpec, m: int, t: int, char: int) -> InvariantReport:
    _check_type(spec, t)
    wk, sym = symmetry_class(spec, m, t, char)
    stably, cy, cyf = cy_dimensions(spec, m, t, char)
    is_a2 = spec.family == "A" and spec.rank == 2
    return InvariantReport(
        family=spec.family,
        rank=spec.rank,
        m=m,
        t=t,
        characteristic=char,
        coxeter=spec.coxeter,
        loewy_length=spec.coxeter - 1,
        H_subgroup=H_subgroup(spec, m, t, char),
        weakly_symmetric=wk,
        symmetric=sym,
        u=vertex_order_u(spec, m, t),
        period=period(spec, m, t, char),
        stably_calabi_yau=stably,
        cy_dim=cy,
        cyf_dim=cyf,
        n_cy_min=None if is_a2 else n_cy_min(spec, m, t),
    )
