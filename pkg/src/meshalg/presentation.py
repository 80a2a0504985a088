"""The two presentations of the mesh algebra.

The original presentation has the mesh relations r_x = sum sigma(a) a
over arrows ending at x.  The signed presentation flips the sign of every
arrow in a G-invariant set X, turning binary meshes into differences and
making the three-arrow meshes of D and E read "one path equals the sum of
the other two".  The set X depends on (Delta, G); for (D4, <rho tau^m>)
no usable G-invariant X exists and the original presentation is kept.

X is realized lazily as a set of arrows over a column window, produced by
closing the seed arrows of the defining case list under the indicated
group of quiver automorphisms.
"""

from __future__ import annotations

from .dynkin import LEVEL, SHIFT, Arrow, DynkinSpec, sigma, translate
from .groups import GroupSpec


class Presentation:
    """Presentation data for B = K(ZDelta) relative to a group G."""

    def __init__(self, spec: DynkinSpec, group: GroupSpec, force_original: bool = False):
        self.spec = spec
        self.group = group
        self.signed = not force_original and not (
            spec.family == "D" and spec.rank == 4 and group.t == 3
        )
        self._seeds, self._gens = self._case_data()
        self._x_cache: dict[tuple[int, int], frozenset] = {}

    @property
    def tag(self) -> str:
        return "signed" if self.signed else "original"

    # -- the case list -------------------------------------------------------

    def _case_data(self):
        spec, group = self.spec, self.group
        if not self.signed:
            return [], []
        fam, r = spec.family, spec.rank

        def edge_id(x, y):
            return spec.edges.index((x, y))

        tau1 = lambda v: translate(v, 1)
        tau1i = lambda v: translate(v, -1)

        if fam == "A" and r % 2 == 0:
            n = r // 2
            seeds = [
                Arrow(0, edge_id(i, i + 1), LEVEL)
                for i in range(1, n)
                if i % 2 != n % 2
            ]
            return seeds, [tau1, tau1i, spec.rho, spec.rho_inv]
        if fam == "A":
            n = (r + 1) // 2
            if group.t == 1:
                seeds = [
                    Arrow(0, edge_id(i, i + 1), LEVEL)
                    for i in range(1, max(2 * n - 2, 1))
                    if i % 2 == 1 and i <= 2 * n - 3
                ]
                return seeds, [tau1, tau1i]
            if group.m % 2 == 1:
                seeds = [Arrow(0, edge_id(i, i + 1), LEVEL) for i in range(1, n)]
                rt = lambda v: spec.rho(translate(v, 1))
                rti = lambda v: translate(spec.rho_inv(v), -1)
                return seeds, [rt, rti]
            seeds1 = [Arrow(0, edge_id(i, i + 1), LEVEL) for i in range(1, n - 1)]
            seeds2 = [
                Arrow(2 * q, edge_id(i, i + 1), LEVEL)
                for q in range(0, group.m // 2)
                for i in (n - 1, n)
            ]
            tau2 = lambda v: translate(v, 2)
            tau2i = lambda v: translate(v, -2)
            gens = [
                (seeds1, [spec.rho, spec.rho_inv, tau2, tau2i]),
                (seeds2, [group.g_vertex, group.g_inv_vertex]),
            ]
            return gens, "split"
        if fam == "D" and r == 4:
            return [Arrow(0, edge_id(2, 3), LEVEL)], [tau1, tau1i]
        if fam == "D":
            n = r - 1
            seeds = [
                Arrow(0, edge_id(i, i + 1), LEVEL)
                for i in range(2, n - 1)
                if i % 2 == 0
            ]
            return seeds, [tau1, tau1i, spec.rho, spec.rho_inv]
        # E family
        seeds = [Arrow(0, edge_id(2, 3), LEVEL)]
        if r in (7, 8):
            seeds += [Arrow(0, edge_id(3, 4), SHIFT), Arrow(0, edge_id(5, 6), SHIFT)]
            return seeds, [tau1, tau1i]
        return seeds, [tau1, tau1i, spec.rho, spec.rho_inv]

    # -- X over a window -------------------------------------------------------

    def _close(self, seeds, vertex_maps, kmin, kmax):
        spec = self.spec
        pad = 2 * self.group.m + 2 * len(spec.labels) + 4
        lo = min(kmin, -1) - pad
        hi = max(kmax, self.group.m + 1) + pad
        arrow_maps = [lambda a, f=f: spec.arrow_image(f, a) for f in vertex_maps]
        seen = set()
        frontier = [a for a in seeds]
        while frontier:
            a = frontier.pop()
            if a in seen or not (lo <= a.k <= hi):
                continue
            seen.add(a)
            for am in arrow_maps:
                frontier.append(am(a))
        return frozenset(a for a in seen if kmin <= a.k <= kmax)

    def x_set(self, kmin: int, kmax: int) -> frozenset:
        key = (kmin, kmax)
        if key not in self._x_cache:
            if not self.signed:
                self._x_cache[key] = frozenset()
            elif self._gens == "split":
                acc = set()
                for seeds, maps in self._seeds:
                    acc |= self._close(seeds, maps, kmin, kmax)
                self._x_cache[key] = frozenset(acc)
            else:
                self._x_cache[key] = self._close(self._seeds, self._gens, kmin, kmax)
        return self._x_cache[key]

    def signature(self, a: Arrow, window: tuple[int, int]) -> int:
        if not (window[0] <= a.k <= window[1]):
            raise ValueError(f"signature lookup for {a} outside window {window}")
        return 1 if a in self.x_set(*window) else 0

    # -- relations --------------------------------------------------------------

    def relation_terms(self, v, window: tuple[int, int]):
        """The mesh relation at v as [(sign, sigma(a), a)] over arrows ending at v."""
        out = []
        for a in self.spec.arrows_in(v):
            sa = sigma(a)
            if self.signed:
                s = self.signature(a, window) + self.signature(sa, window)
                sign = -1 if s % 2 else 1
            else:
                sign = 1
            out.append((sign, sa, a))
        return out

    def theta_sign(self, a: Arrow, window: tuple[int, int]) -> int:
        """(-1)^(s(tau^{-1} a) + s(a)), the arrow scalar of the automorphism
        correcting tau to an automorphism of the signed presentation."""
        if not self.signed:
            return 1
        s = self.signature(a, window) + self.signature(Arrow(a.k + 1, a.edge, a.kind), window)
        return -1 if s % 2 else 1


def build_presentation(spec: DynkinSpec, group: GroupSpec, force_original: bool = False) -> Presentation:
    """The working presentation for (spec, group): signed per the case list,
    original for (D4, <rho tau^m>).  ``force_original`` keeps the plain sum
    relations regardless (useful for presentation-independence checks)."""
    return Presentation(spec, group, force_original)
