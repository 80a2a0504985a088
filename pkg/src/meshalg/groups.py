"""Weakly admissible automorphism groups G = <phi> of ZDelta.

The generator is phi = tau^m (t = 1) or rho tau^m (t = 2, 3), where t
records the order of rho, with the convention t = 2 for the
infinite-order rho of A_{2n}.  The extended type of the quotient algebra
is the triple (Delta, m, t).
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynkin import Arrow, DynkinSpec, translate


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    spec: DynkinSpec
    m: int
    t: int  # 1, 2 or 3

    def __post_init__(self):
        s = self.spec
        if self.m < 1:
            raise InvalidGroup(f"m must be positive, got {self.m}")
        if self.t == 1:
            return
        if self.t == 2:
            ok = (
                (s.family == "A" and s.rank >= 2)
                or (s.family == "D" and s.rank >= 5)
                or (s.family, s.rank) == ("E", 6)
            )
            if not ok:
                raise InvalidGroup(f"t=2 invalid for {s.family}{s.rank}")
            return
        if self.t == 3:
            if (s.family, s.rank) != ("D", 4):
                raise InvalidGroup(f"t=3 only for D4, got {s.family}{s.rank}")
            return
        raise InvalidGroup(f"t must be 1, 2 or 3, got {self.t}")

    @property
    def extended_type(self) -> tuple[str, int, int]:
        return (f"{self.spec.family}{self.spec.rank}", self.m, self.t)

    @property
    def uses_rho(self) -> bool:
        return self.t != 1

    @property
    def column_period(self) -> int:
        """P with tau^P in G (the translation part of the group)."""
        if self.t == 1:
            return self.m
        if self.t == 3:
            return 3 * self.m
        if self.spec.family == "A" and self.spec.rank % 2 == 0:
            return 2 * self.m - 1  # rho^2 = tau^{-1}
        return 2 * self.m

    @property
    def t_prime(self) -> int:
        """Number of generator applications per pure translation: g^t' = tau^P."""
        return {1: 1, 2: 2, 3: 3}[self.t]

    # -- the generator action ----------------------------------------------

    def g_vertex(self, v):
        v = translate(v, self.m)
        return self.spec.rho(v) if self.uses_rho else v

    def g_inv_vertex(self, v):
        if self.uses_rho:
            v = self.spec.rho_inv(v)
        return translate(v, -self.m)

    def g_pow_vertex(self, v, j: int):
        tp, P = self.t_prime, self.column_period
        s, j0 = divmod(j, tp)
        v = translate(v, P * s)
        for _ in range(j0):
            v = self.g_vertex(v)
        return v

    def g_arrow(self, a: Arrow) -> Arrow:
        b = Arrow(a.k - self.m, a.edge, a.kind)
        if not self.uses_rho:
            return b
        return self.spec.arrow_image(self.spec.rho, b)

    def g_pow_arrow(self, a: Arrow, j: int) -> Arrow:
        tp, P = self.t_prime, self.column_period
        s, j0 = divmod(j, tp)
        a = Arrow(a.k - P * s, a.edge, a.kind)
        for _ in range(j0):
            a = self.g_arrow(a)
        return a

    # -- orbits -------------------------------------------------------------

    def orbit_rep_vertex(self, v) -> tuple[tuple[int, int], int]:
        """Canonical representative of the G-orbit of v.

        Returns (rep, j) with g^j(v) = rep; rep has its column in
        [0, column_period) and is minimal in the (k, i) order among the
        normalized orbit members.
        """
        P, tp = self.column_period, self.t_prime
        best = None
        for j0 in range(tp):
            w = self.g_pow_vertex(v, j0)
            s = w[0] // P
            cand = (w[0] - P * s, w[1])
            j = j0 + tp * s
            if best is None or cand < best[0]:
                best = (cand, j)
        return best

    def orbit_rep_arrow(self, a: Arrow) -> tuple[Arrow, int]:
        P, tp = self.column_period, self.t_prime
        best = None
        for j0 in range(tp):
            b = self.g_pow_arrow(a, j0)
            s = b.k // P
            cand = Arrow(b.k - P * s, b.edge, b.kind)
            j = j0 + tp * s
            if best is None or cand < best[0]:
                best = (cand, j)
        return best

    def align(self, frm, to) -> int:
        """The exponent j with g^j(frm) = to, for vertices in one orbit."""
        rep_f, jf = self.orbit_rep_vertex(frm)
        rep_t, jt = self.orbit_rep_vertex(to)
        if rep_f != rep_t:
            raise ValueError(f"{frm} and {to} lie in different G-orbits")
        return jf - jt  # g^{jf}(frm) = rep = g^{jt}(to)  =>  g^{jf-jt}(frm) = to

    def acts_freely_on(self, kmin: int, kmax: int) -> bool:
        tp, P = self.t_prime, self.column_period
        for v in self.spec.vertices(kmin, kmax):
            for j in range(1, tp + 1):
                if self.g_pow_vertex(v, j) == v:
                    return False
        return P >= 1
