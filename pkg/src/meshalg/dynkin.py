"""Dynkin quivers and the translation quiver ZDelta.

Fixed orientations and vertex labels:

* A_r:     1 -> 2 -> ... -> r
* D_{n+1}: 2 -> 0, 2 -> 1, 2 -> 3 -> ... -> n     (labels 0..n, n+1 >= 4)
* E_n:     1 -> 2 -> 3 -> ... -> n-1, 3 -> 0      (n = 6, 7, 8)

Vertices of ZDelta are pairs (k, i) with k the column.  For each base
edge alpha: x -> y there are arrows

* level  (k, alpha):  (k, x) -> (k, y)
* shift  (k, alpha)': (k, y) -> (k+1, x)

with polarization sigma(level (k, alpha)) = shift (k-1, alpha)',
sigma(shift (k, alpha)') = level (k, alpha), translation tau = sigma^2
on arrows and tau(k, x) = (k-1, x) on vertices.

Everything here is a pure function of explicit (k, i) pairs; the quiver
is never enumerated globally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

LEVEL = 0
SHIFT = 1


class InvalidRank(ValueError):
    pass


class NoRho(ValueError):
    pass


class Arrow(NamedTuple):
    """A canonically encoded arrow of ZDelta: (column, base edge id, kind)."""

    k: int
    edge: int
    kind: int  # LEVEL or SHIFT; LEVEL sorts first

    def shifted(self, d: int) -> "Arrow":
        return Arrow(self.k + d, self.edge, self.kind)


@dataclass(frozen=True)
class DynkinSpec:
    family: str  # "A" | "D" | "E"
    rank: int  # r for A_r, n+1 for D_{n+1}, n for E_n
    labels: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # base arrows x -> y, indexed by position
    coxeter: int
    out_edges: dict = field(repr=False, default=None)
    in_edges: dict = field(repr=False, default=None)

    def __post_init__(self):
        out = {i: [] for i in self.labels}
        inc = {i: [] for i in self.labels}
        for eid, (x, y) in enumerate(self.edges):
            out[x].append(eid)
            inc[y].append(eid)
        object.__setattr__(self, "out_edges", out)
        object.__setattr__(self, "in_edges", inc)

    # -- ZDelta incidence -------------------------------------------------

    def source(self, a: Arrow) -> tuple[int, int]:
        x, y = self.edges[a.edge]
        return (a.k, x) if a.kind == LEVEL else (a.k, y)

    def target(self, a: Arrow) -> tuple[int, int]:
        x, y = self.edges[a.edge]
        return (a.k, y) if a.kind == LEVEL else (a.k + 1, x)

    def arrows_out(self, v) -> list[Arrow]:
        k, i = v
        out = [Arrow(k, e, LEVEL) for e in self.out_edges[i]]
        out += [Arrow(k, e, SHIFT) for e in self.in_edges[i]]
        return sorted(out)

    def arrows_in(self, v) -> list[Arrow]:
        k, i = v
        inc = [Arrow(k, e, LEVEL) for e in self.in_edges[i]]
        inc += [Arrow(k - 1, e, SHIFT) for e in self.out_edges[i]]
        return sorted(inc)

    def arrow_between(self, u, v) -> Arrow:
        """The unique arrow u -> v (ZDelta has no double arrows)."""
        for a in self.arrows_out(u):
            if self.target(a) == v:
                return a
        raise ValueError(f"no arrow {u} -> {v}")

    # -- quiver automorphisms ---------------------------------------------

    @property
    def has_rho(self) -> bool:
        return not (self.family == "E" and self.rank in (7, 8)) and not (
            self.family == "A" and self.rank == 1
        )

    @property
    def rho_order(self) -> int:
        """Order of rho as a graph automorphism (2 for the infinite-order
        rho of A_{2n} by the paper's convention on extended types)."""
        if not self.has_rho:
            raise NoRho(f"no rho for {self.family}{self.rank}")
        return 3 if (self.family, self.rank) == ("D", 4) else 2

    def rho(self, v):
        if not self.has_rho:
            raise NoRho(f"no rho for {self.family}{self.rank}")
        k, i = v
        if self.family == "A":
            r = self.rank
            if r % 2 == 0:
                n = r // 2
                return (k + i - n, 2 * n + 1 - i)
            n = (r + 1) // 2
            return (k + i - n, 2 * n - i)
        if self.family == "D":
            if self.rank == 4:
                cyc = {0: 1, 1: 3, 3: 0}  # the 3-cycle (013)
                return (k, cyc.get(i, i))
            if i == 0:
                return (k, 1)
            if i == 1:
                return (k, 0)
            return (k, i)
        # E6
        if i == 0:
            return (k, 0)
        return (k + i - 3, 6 - i)

    def rho_inv(self, v):
        if (self.family, self.rank) == ("D", 4):
            k, i = v
            cyc = {1: 0, 3: 1, 0: 3}
            return (k, cyc.get(i, i))
        if self.family == "A" and self.rank % 2 == 0:
            return self.rho(translate(v, 1))  # rho^2 = tau^{-1}, so rho^{-1} = rho tau
        return self.rho(v)

    def nu(self, v):
        """The Nakayama permutation as a vertex map."""
        k, i = v
        f, r, c = self.family, self.rank, self.coxeter
        if f == "A":
            return (k + i - 1, r + 1 - i)
        if f == "D":
            n = r - 1
            if r % 2 == 0:  # n+1 even
                return (k + n - 1, i)
            return self.rho((k + n - 1, i))
        if r == 6:
            return self.rho((k + 5, i))
        return (k + c // 2 - 1, i)  # E7: tau^{-8}; E8: tau^{-14}

    def nu_inv(self, v):
        k, i = v
        f, r = self.family, self.rank
        if f == "A":
            j = r + 1 - i
            return (k - j + 1, j)
        if f == "D":
            n = r - 1
            if r % 2 == 0:
                return (k - n + 1, i)
            return self.rho((k - n + 1, i))
        if r == 6:
            return translate(self.rho(v), 5)
        return (k - self.coxeter // 2 + 1, i)

    # -- induced maps on arrows -------------------------------------------

    def arrow_image(self, vertex_map, a: Arrow) -> Arrow:
        """The unique lift of a vertex automorphism to an arrow."""
        return self.arrow_between(vertex_map(self.source(a)), vertex_map(self.target(a)))

    def rho_arrow(self, a: Arrow) -> Arrow:
        return self.arrow_image(self.rho, a)

    def nu_arrow(self, a: Arrow) -> Arrow:
        return self.arrow_image(self.nu, a)

    # -- window enumeration -----------------------------------------------

    def vertices(self, kmin: int, kmax: int) -> list[tuple[int, int]]:
        return [(k, i) for k in range(kmin, kmax + 1) for i in sorted(self.labels)]

    def window_arrows(self, kmin: int, kmax: int) -> list[Arrow]:
        """All arrows with both endpoints in columns [kmin, kmax]."""
        out = []
        for k in range(kmin, kmax + 1):
            for e in range(len(self.edges)):
                out.append(Arrow(k, e, LEVEL))
                if k + 1 <= kmax:
                    out.append(Arrow(k, e, SHIFT))
        return sorted(out)


def make_dynkin(family: str, rank: int) -> DynkinSpec:
    """Construct a Dynkin quiver with the fixed orientation and labels."""
    if family == "A":
        if rank < 1:
            raise InvalidRank(f"A_r needs r >= 1, got {rank}")
        labels = tuple(range(1, rank + 1))
        edges = tuple((i, i + 1) for i in range(1, rank))
        return DynkinSpec("A", rank, labels, edges, rank + 1)
    if family == "D":
        if rank < 4:
            raise InvalidRank(f"D_{{n+1}} needs n+1 >= 4, got {rank}")
        n = rank - 1
        labels = tuple(range(0, n + 1))
        edges = ((2, 0), (2, 1)) + tuple((i, i + 1) for i in range(2, n))
        return DynkinSpec("D", rank, labels, edges, 2 * n)
    if family == "E":
        if rank not in (6, 7, 8):
            raise InvalidRank(f"E_n needs n in {{6,7,8}}, got {rank}")
        labels = tuple(range(0, rank))
        edges = tuple((i, i + 1) for i in range(1, rank - 1)) + ((3, 0),)
        coxeter = {6: 12, 7: 18, 8: 30}[rank]
        return DynkinSpec("E", rank, labels, edges, coxeter)
    raise InvalidRank(f"unknown family {family!r}")


def translate(v, d: int):
    """tau^d on vertices: tau(k, x) = (k-1, x)."""
    return (v[0] - d, v[1])


def sigma(a: Arrow) -> Arrow:
    """Polarization: sigma(n, alpha) = (n-1, alpha)', sigma((n, alpha)') = (n, alpha)."""
    if a.kind == LEVEL:
        return Arrow(a.k - 1, a.edge, SHIFT)
    return Arrow(a.k, a.edge, LEVEL)


def sigma_inv(a: Arrow) -> Arrow:
    if a.kind == SHIFT:
        return Arrow(a.k + 1, a.edge, LEVEL)
    return Arrow(a.k, a.edge, SHIFT)


def tau_arrow(a: Arrow, d: int = 1) -> Arrow:
    """tau^d on arrows (tau = sigma^2 shifts the column by -1)."""
    return Arrow(a.k - d, a.edge, a.kind)


def path_vertices(spec: DynkinSpec, source, arrows: Iterable[Arrow]):
    """The vertex itinerary of a path; raises if arrows do not compose."""
    out = [source]
    v = source
    for a in arrows:
        if spec.source(a) != v:
            raise ValueError(f"path breaks at {v}: arrow {a} starts at {spec.source(a)}")
        v = spec.target(a)
        out.append(v)
    return out
