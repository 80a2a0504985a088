"""The m-fold mesh algebra Lambda = B/G as a finite exact algebra.

Vertices and arrows of the quotient quiver Q = ZDelta/G are kept as
canonical orbit representatives (column normalized into [0, P), minimal
in the vertex order).  The basis of Lambda consists of the orbit classes
of the normal-form basis paths of B emanating from the representative
vertices; products are computed by aligning the right factor with the
group action and reducing in the window algebra.
"""

from __future__ import annotations

import json

from .dynkin import Arrow
from .groups import GroupSpec
from .meshcore import AlgElem, Path, WindowAlgebra, make_path
from .presentation import Presentation

__all__ = [
    "GroupSpec",
    "OrbitQuiver",
    "OrbitAlgebra",
    "orbit_algebra",
]


class OrbitQuiver:
    """The quiver of Lambda: orbit representatives and incidence."""

    def __init__(self, group: GroupSpec):
        self.group = group
        spec = group.spec
        P = group.column_period
        self.vertices = sorted({group.orbit_rep_vertex(v)[0] for v in spec.vertices(0, P - 1)})
        arrows = set()
        for k in range(0, P):
            for e in range(len(spec.edges)):
                for kind in (0, 1):
                    arrows.add(group.orbit_rep_arrow(Arrow(k, e, kind))[0])
        self.arrows = sorted(arrows)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.aindex = {a: i for i, a in enumerate(self.arrows)}
        self.source = {a: self.rep_vertex(spec.source(a)) for a in self.arrows}
        self.target = {a: self.rep_vertex(spec.target(a)) for a in self.arrows}

    def rep_vertex(self, v):
        return self.group.orbit_rep_vertex(v)[0]

    def rep_arrow(self, a: Arrow) -> Arrow:
        return self.group.orbit_rep_arrow(a)[0]

    def arrows_out(self, vrep):
        return [a for a in self.arrows if self.source[a] == vrep]

    def arrows_in(self, vrep):
        return [a for a in self.arrows if self.target[a] == vrep]

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            v = frontier.pop()
            for a in self.arrows:
                for w in ((self.target[a],) if self.source[a] == v else ()) + (
                    (self.source[a],) if self.target[a] == v else ()
                ):
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
        return len(seen) == len(self.vertices)


class OrbitAlgebra:
    """Lambda = B/G over an exact field, with its graded basis."""

    def __init__(self, pres: Presentation, group: GroupSpec, field):
        self.pres = pres
        self.group = group
        self.spec = pres.spec
        self.field = field
        P = group.column_period
        c = self.spec.coxeter
        self.walg = WindowAlgebra(pres, field, -2, P + 2 * c + 4)
        self.quiver = OrbitQuiver(group)

        entries = []
        for r in self.quiver.vertices:
            mod = self.walg.module(r)
            for d in range(0, c - 1):
                mod.ensure_degree(d)
                for p in mod.basis[d]:
                    entries.append((r, p))
        vidx = self.quiver.vindex
        entries.sort(
            key=lambda rp: (
                vidx[rp[0]],
                vidx[self.quiver.rep_vertex(rp[1].target)],
                rp[1].degree,
                rp[1].arrows,
            )
        )
        self.basis = entries
        self.index = {rp: i for i, rp in enumerate(entries)}
        self.dim = len(entries)
        self.source_orbit = [rp[0] for rp in entries]
        self.target_orbit = [self.quiver.rep_vertex(rp[1].target) for rp in entries]
        self.degree = [rp[1].degree for rp in entries]
        self.idempotent_index = {
            r: self.index[(r, Path(r, (), r))] for r in self.quiver.vertices
        }
        self.arrow_index = {}
        for a in self.quiver.arrows:
            src = self.spec.source(a)
            rep, j = group.orbit_rep_vertex(src)
            a2 = group.g_pow_arrow(a, j)
            self.arrow_index[a] = self.index[(rep, make_path(self.spec, rep, (a2,)))]
        self._products: dict[tuple[int, int], dict] = {}

    # -- structure ------------------------------------------------------------

    def loewy_length(self) -> int:
        return max(self.degree) + 1

    def is_loewy_two(self) -> bool:
        return self.loewy_length() == 2

    def right_basis(self, vrep) -> list[int]:
        """Indices of the basis of e_{[v]} Lambda."""
        return [i for i in range(self.dim) if self.source_orbit[i] == vrep]

    def left_basis(self, vrep) -> list[int]:
        """Indices of the basis of Lambda e_{[v]}."""
        return [i for i in range(self.dim) if self.target_orbit[i] == vrep]

    def elem_coords(self, src_rep, elem: AlgElem) -> dict:
        """Window-algebra element from a representative source as Lambda coordinates."""
        out = {}
        for p, c in elem.terms.items():
            out[self.index[(src_rep, p)]] = c
        return out

    def product(self, i: int, j: int) -> dict:
        key = (i, j)
        if key in self._products:
            return self._products[key]
        f = self.field
        ri, pi = self.basis[i]
        rj, pj = self.basis[j]
        out: dict[int, object] = {}
        if self.target_orbit[i] == self.source_orbit[j]:
            if pi.degree + pj.degree <= self.spec.coxeter - 2:
                e = self.group.align(rj, pi.target)
                moved = tuple(self.group.g_pow_arrow(a, e) for a in pj.arrows)
                prod = self.walg.nf_path(ri, pi.arrows + moved)
                out = self.elem_coords(ri, prod)
        self._products[key] = out
        return out

    def mult_coords(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict[int, object] = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self.product(i, j).items():
                    val = f.mul(f.mul(ci, cj), ck)
                    out[k] = f.add(out.get(k, f.zero), val)
        return {k: c for k, c in out.items() if not f.is_zero(c)}

    # -- the induced Nakayama form ------------------------------------------------

    def nu_bar(self, vrep):
        return self.quiver.rep_vertex(self.spec.nu(vrep))

    def socle_coords(self, vrep) -> dict:
        w = self.walg.socle_elem(vrep)
        return self.elem_coords(vrep, w)

    def form(self, i: int, j: int):
        """<x_i, x_j>: coefficient of the socle generator at the source of x_i."""
        f = self.field
        r = self.source_orbit[i]
        if self.degree[i] + self.degree[j] != self.spec.coxeter - 2:
            return f.zero
        if self.target_orbit[j] != self.nu_bar(r):
            return f.zero
        prod = self.mult_coords({i: f.one}, {j: f.one})
        if not prod:
            return f.zero
        w = self.socle_coords(r)
        wk, wc = next(iter(w.items()))
        c = f.div(prod.get(wk, f.zero), wc)
        rest = dict(prod)
        for k, v in w.items():
            rest[k] = f.sub(rest.get(k, f.zero), f.mul(c, v))
        if any(not f.is_zero(v) for v in rest.values()):
            raise RuntimeError("socle slice not one-dimensional (bug)")
        return c

    # -- automorphism application ---------------------------------------------------

    def apply_aut(self, aut, i: int) -> dict:
        """Image of a basis element under a graded automorphism of Lambda.

        ``aut`` provides vperm(vrep), aimage(arrow rep) and asign(arrow rep);
        the image is the product of the images of the lift's arrows.
        """
        f = self.field
        r, p = self.basis[i]
        acc = {self.idempotent_index[aut.vperm(r)]: f.one}
        sign = 1
        for a in p.arrows:
            arep = self.quiver.rep_arrow(a)
            sign *= aut.asign(arep)
            img = aut.aimage(arep)
            acc = self.mult_coords(acc, {self.arrow_index[img]: f.one})
            if not acc:
                return {}
        if sign == -1:
            acc = {k: f.neg(v) for k, v in acc.items()}
        return acc

    # -- serialization ---------------------------------------------------------------

    def structure_constants(self):
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in sorted(self.product(i, j).items()):
                    out.append((i, j, k, self.field.to_str(c)))
        return out

    def to_json_dict(self) -> dict:
        qv = self.quiver
        return {
            "schema": 1,
            "extended_type": list(self.group.extended_type),
            "field": self.field.tag,
            "dimension": self.dim,
            "vertices": [list(v) for v in qv.vertices],
            "arrows": [[a.k, a.edge, a.kind] for a in qv.arrows],
            "arrow_source": [list(qv.source[a]) for a in qv.arrows],
            "arrow_target": [list(qv.target[a]) for a in qv.arrows],
            "basis": [
                {
                    "source": list(r),
                    "arrows": [[a.k, a.edge, a.kind] for a in p.arrows],
                    "degree": p.degree,
                }
                for r, p in self.basis
            ],
            "structure_constants": [list(t) for t in self.structure_constants()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def orbit_algebra(pres: Presentation, group: GroupSpec, field) -> OrbitAlgebra:
    return OrbitAlgebra(pres, group, field)


def covering_dim_check(alg: OrbitAlgebra, xrep, yrep) -> bool:
    """dim e_[x] Lambda e_[y] equals the covering sum of B-dimensions."""
    spec, group = alg.spec, alg.group
    lam_dim = sum(
        1
        for i in range(alg.dim)
        if alg.source_orbit[i] == xrep and alg.target_orbit[i] == yrep
    )
    c = spec.coxeter
    total = 0
    mod = alg.walg.module(xrep)
    for d in range(0, c - 1):
        for y2, n in mod.dims(d).items():
            if alg.quiver.rep_vertex(y2) == yrep:
                total += n
    return lam_dim == total
