#!/usr/bin/env python3
"""Regenerate the bundled corpus under corpus/.

Every file is built by the library itself and re-verified before it
is written, so a corrupted generator fails here rather than at test
time.  Output is deterministic: rerunning the script reproduces the
directory byte for byte.
"""
from __future__ import annotations

import json
import os
import sys

from fractions import Fraction

import chainlab as cl
from chainlab import io as cio
from chainlab.linalg import Matrix, vec, solve
from chainlab.rationals import ONE, ZERO

OUT = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                   "corpus")


def torus7() -> cl.SimplicialComplex:
    tops = []
    for i in range(7):
        tops.append(tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))))
        tops.append(tuple(sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7))))
    return cl.SimplicialComplex.from_top(7, tops)


def rp2_6() -> cl.SimplicialComplex:
    return cl.SimplicialComplex.from_top(6, [
        (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5),
        (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4), (3, 4, 5)])


def icosahedron() -> cl.SimplicialComplex:
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, 1 + i, 1 + j))
        faces.append((1 + i, 1 + j, 6 + i))
        faces.append((6 + i, 6 + j, 1 + j))
        faces.append((11, 6 + i, 6 + j))
    return cl.SimplicialComplex.from_top(12, faces)


def antipodal() -> tuple[int, ...]:
    p = [0] * 12
    p[0], p[11] = 11, 0
    for i in range(5):
        p[1 + i] = 6 + (i + 2) % 5
        p[6 + i] = 1 + (i + 3) % 5
    return tuple(p)


def square_doubling(square_cx: cl.NormedComplex) -> cl.ChainMap:
    """Vertex i to vertex 2i mod 4; each edge runs over two edges."""
    v = Matrix.from_entries(4, 4, [(0, 0, ONE), (2, 1, ONE),
                                   (0, 2, ONE), (2, 3, ONE)])
    # edge basis (0,1), (0,3), (1,2), (2,3)
    e = Matrix.from_rows([[1, 0, 0, 1],
                          [0, 1, -1, 0],
                          [1, 0, 0, 1],
                          [0, -1, 1, 0]])
    return cl.chain_map(square_cx, square_cx, [v, e])


def cone_doubling(cone_cx: cl.NormedComplex, labels) -> cl.ChainMap:
    """Extend the square doubling over the cone on the square."""
    idx = [{lab: i for i, lab in enumerate(per)} for per in labels]
    f0 = Matrix.from_entries(5, 5, [
        (idx[0][str(2 * i % 4)], idx[0][str(i)], ONE) for i in range(4)
    ] + [(idx[0]["4"], idx[0]["4"], ONE)])
    pairs1 = {
        "0-1": {"0-1": 1, "1-2": 1},
        "1-2": {"0-3": -1, "2-3": 1},
        "2-3": {"0-1": 1, "1-2": 1},
        "0-3": {"0-3": 1, "2-3": -1},
        "0-4": {"0-4": 1},
        "1-4": {"2-4": 1},
        "2-4": {"0-4": 1},
        "3-4": {"2-4": 1},
    }
    entries = [(idx[1][t], idx[1][s], Fraction(c))
               for s, image in pairs1.items() for t, c in image.items()]
    f1 = Matrix.from_entries(8, 8, entries)
    d2 = cone_cx.boundary(2)
    cols = []
    for j in range(4):
        rhs = f1.apply(d2.column(j))
        x = solve(d2, rhs)
        assert x is not None, "cone is contractible, extension must exist"
        cols.append(x)
    f2 = Matrix.from_cols(4, cols)
    return cl.chain_map(cone_cx, cone_cx, [f0, f1, f2])


def main() -> int:
    os.makedirs(OUT, exist_ok=True)
    manifest = {"complexes": [], "invalid": [], "maps": [], "groups": [],
                "modules": [], "triangulations": [], "nonorientable": [],
                "cycles": [], "series": [], "eta": []}

    def put_complex(name: str, cx: cl.NormedComplex) -> None:
        assert cl.validate(cx).ok, name
        cio.save_complex(os.path.join(OUT, name), cx)
        manifest["complexes"].append(name)

    # -- plain complexes ------------------------------------------------
    point = cl.NormedComplex(cl.HOMOLOGICAL, (1,), (), (cl.unit_l1(1),),
                             (("pt",),))
    put_complex("point.json", point)

    interval = cl.chain_complex(cl.SimplicialComplex.from_top(2, [(0, 1)]))
    put_complex("interval.json", interval)

    tri_circle = cl.SimplicialComplex.from_top(3, [(0, 1), (1, 2), (0, 2)])
    circle = cl.chain_complex(tri_circle)
    put_complex("circle3.json", circle)

    tri_square = cl.SimplicialComplex.from_top(
        4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    square = cl.chain_complex(tri_square)
    put_complex("square4.json", square)

    tri_tetra = cl.SimplicialComplex.from_top(
        4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    tetra = cl.chain_complex(tri_tetra)
    put_complex("boundary_tetra.json", tetra)

    tri_torus = torus7()
    put_complex("torus7.json", cl.chain_complex(tri_torus))
    put_complex("rp2_chain.json", cl.chain_complex(rp2_6()))
    put_complex("weighted_circle.json",
                cl.chain_complex(tri_circle, [(1, 1, 1), (2, 3, 4)]))
    put_complex("dual_circle.json", cl.dual(circle))
    put_complex("acyclic2.json",
                cl.NormedComplex(cl.HOMOLOGICAL, (1, 1),
                                 (Matrix.from_rows([[1]]),),
                                 (cl.unit_l1(1), cl.unit_l1(1))))

    tri_cone = cl.SimplicialComplex.from_top(
        5, [(0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 4)])
    cone_cx = cl.chain_complex(tri_cone)
    put_complex("cone_pyramid.json", cone_cx)

    # a well-formed file whose squared boundary is nonzero
    with open(os.path.join(OUT, "boundary_tetra.json")) as fh:
        broken = json.load(fh)
    broken["boundaries"][1][0][0] = "7"
    with open(os.path.join(OUT, "corrupt.json"), "w") as fh:
        json.dump(broken, fh, indent=1, sort_keys=True)
        fh.write("\n")
    bad = cio.load_complex(os.path.join(OUT, "corrupt.json"))
    assert not cl.validate(bad).ok
    manifest["invalid"].append("corrupt.json")

    # -- triangulations ---------------------------------------------------
    for name, k in [("tri_circle.json", tri_circle),
                    ("tri_square.json", tri_square),
                    ("tri_tetra.json", tri_tetra),
                    ("tri_torus.json", tri_torus),
                    ("tri_subdiv_tetra.json",
                     cl.barycentric_subdivision(tri_tetra))]:
        cl.fundamental_cycle(k)
        cio.save_simplicial(os.path.join(OUT, name), k)
        manifest["triangulations"].append(name)
    cio.save_simplicial(os.path.join(OUT, "tri_rp2.json"), rp2_6())
    manifest["nonorientable"].append("tri_rp2.json")

    ico = icosahedron()
    cio.save_simplicial(os.path.join(OUT, "icosahedron.json"), ico,
                        action=[tuple(range(12)), antipodal()])
    manifest["triangulations"].append("icosahedron.json")

    # -- chain maps -------------------------------------------------------
    def put_map(name: str, f: cl.ChainMap, src: str, tgt: str) -> None:
        assert not f.validate(), name
        cio.save_chain_map(os.path.join(OUT, name), f, src, tgt)
        manifest["maps"].append(name)

    dbl = square_doubling(square)
    z_square = vec([1, -1, 1, 1])
    assert dbl.at(1).apply(z_square) == vec([2, -2, 2, 2])
    put_map("double_square.json", dbl, "square4.json", "square4.json")
    put_map("identity_tetra.json", cl.identity_map(tetra),
            "boundary_tetra.json", "boundary_tetra.json")
    put_map("scale2_circle.json",
            cl.scale_map(cl.identity_map(circle), Fraction(2)),
            "circle3.json", "circle3.json")
    put_map("neg_square.json", cl.negate(cl.identity_map(square)),
            "square4.json", "square4.json")
    put_map("collapse_circle.json",
            cl.chain_map(circle, point,
                         [Matrix.from_rows([[1, 1, 1]]), Matrix.zeros(0, 3)]),
            "circle3.json", "point.json")
    put_map("point_into_interval.json",
            cl.chain_map(point, interval,
                         [Matrix.from_entries(2, 1, [(0, 0, ONE)]),
                          Matrix.zeros(1, 0)]),
            "point.json", "interval.json")
    sq_to_circ = cl.chain_map(square, circle, [
        Matrix.from_entries(3, 4, [(0, 0, ONE), (1, 1, ONE),
                                   (2, 2, ONE), (2, 3, ONE)]),
        Matrix.from_entries(3, 4, [(0, 0, ONE), (1, 1, ONE), (2, 2, ONE)]),
    ])
    assert all(cl.homology_iso_degrees(sq_to_circ))
    put_map("square_to_circle.json", sq_to_circ,
            "square4.json", "circle3.json")

    # perturbed doubling on the cone: conjugate by a chain homotopy
    f = cone_doubling(cone_cx, cone_cx.labels)
    e01 = cone_cx.labels[1].index("0-1")
    t014 = cone_cx.labels[2].index("0-1-4")
    h1 = Matrix.from_entries(4, 8, [(t014, e01, ONE)])
    d1, d2 = cone_cx.boundary(1), cone_cx.boundary(2)
    f2 = cl.chain_map(cone_cx, cone_cx, [
        f.at(0),
        f.at(1) + d2 @ h1,
        f.at(2) + h1 @ d2,
    ])
    put_map("perturbed_cone.json", f2, "cone_pyramid.json",
            "cone_pyramid.json")

    z_cone = [ZERO] * 8
    for lab, c in [("0-1", 1), ("0-3", -1), ("1-2", 1), ("2-3", 1)]:
        z_cone[cone_cx.labels[1].index(lab)] = Fraction(c)
    assert d1.apply(z_cone) == vec([0] * 5)
    fz = f2.at(1).apply(z_cone)
    b_cone = [ZERO] * 4
    b_cone[t014] = Fraction(-1, 2)
    lhs = d2.apply(b_cone)
    rhs = [zi - fi / 2 for zi, fi in zip(z_cone, fz)]
    assert list(lhs) == rhs, "primitive identity for the perturbed instance"
    assert list(fz) != [2 * zi for zi in z_cone], "perturbation must show up"

    # -- cycles and series ------------------------------------------------
    holders = {"circle3.json": circle, "square4.json": square,
               "boundary_tetra.json": tetra, "cone_pyramid.json": cone_cx}
    for name, cxname, degree, coeffs in [
        ("cycle_circle3.json", "circle3.json", 1,
         list(cl.fundamental_cycle(tri_circle).as_vector())),
        ("cycle_square4.json", "square4.json", 1, list(z_square)),
        ("cycle_tetra.json", "boundary_tetra.json", 2,
         list(cl.fundamental_cycle(tri_tetra).as_vector())),
        ("cycle_cone.json", "cone_pyramid.json", 1, z_cone),
    ]:
        assert cl.is_cycle(holders[cxname], degree, coeffs), name
        cio.save_cycle(os.path.join(OUT, name), degree, coeffs)
        manifest["cycles"].append({"file": name, "complex": cxname})
    cio.save_cycle(os.path.join(OUT, "chain_b_cone.json"), 2, b_cone)

    for name, data in [
        ("series_square.json", {"map": "double_square.json",
                                "cycle": "cycle_square4.json",
                                "d": 2, "b": None, "steps": 10}),
        ("series_perturbed.json", {"map": "perturbed_cone.json",
                                   "cycle": "cycle_cone.json",
                                   "d": 2, "b": "chain_b_cone.json",
                                   "steps": 10}),
    ]:
        with open(os.path.join(OUT, name), "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        manifest["series"].append(name)

    # -- groups and modules -------------------------------------------------
    groups = {
        "trivial.json": cl.trivial_group(),
        "z2.json": cl.cyclic_group(2),
        "z3.json": cl.cyclic_group(3),
        "z4.json": cl.cyclic_group(4),
        "v4.json": cl.direct_product(cl.cyclic_group(2), cl.cyclic_group(2)),
        "s3.json": cl.symmetric_group(3),
    }
    for name, g in groups.items():
        cio.save_group(os.path.join(OUT, name), g)
        manifest["groups"].append(name)

    def sign_module(g: cl.FiniteGroup, signs) -> cl.MonomialModule:
        return cl.monomial_module(g, (ONE,), [
            Matrix.from_rows([[s]]) for s in signs])

    z2, z3, z4, v4, s3 = (groups["z2.json"], groups["z3.json"],
                          groups["z4.json"], groups["v4.json"],
                          groups["s3.json"])
    cyc3 = [Matrix.identity(3),
            Matrix.from_entries(3, 3, [(1, 0, ONE), (2, 1, ONE), (0, 2, ONE)]),
            Matrix.from_entries(3, 3, [(2, 0, ONE), (0, 1, ONE), (1, 2, ONE)])]
    modules = {
        "sign_z2.json": ("z2.json", sign_module(z2, [1, -1])),
        "swap_z2.json": ("z2.json", cl.monomial_module(
            z2, (ONE, Fraction(2)),
            [Matrix.identity(2),
             Matrix.from_rows([[0, 2], [Fraction(1, 2), 0]])])),
        "perm_z3.json": ("z3.json", cl.monomial_module(
            z3, (ONE, ONE, ONE), cyc3)),
        "sign_z4.json": ("z4.json", sign_module(z4, [1, -1, 1, -1])),
        "sign_v4.json": ("v4.json", sign_module(v4, [1, 1, -1, -1])),
        "sign_s3.json": ("s3.json", sign_module(s3, [1, -1, -1, 1, 1, -1])),
    }
    for name, (gname, v) in modules.items():
        cio.save_module(os.path.join(OUT, name), v)
        manifest["modules"].append({"file": name, "group": gname})

    # -- eta instances ------------------------------------------------------
    act = [tuple(range(12)), antipodal()]
    dom1 = cl.propose_domain(z2, ico, act)
    dom2 = tuple(sorted((set(dom1) - {dom1[0]}) | {antipodal()[dom1[0]]}))
    res1 = cl.eta_map(z2, ico, act, dom1)
    res2 = cl.eta_map(z2, ico, act, dom2)
    assert cl.eta_coinvariant_h0(res1) == cl.eta_coinvariant_h0(res2)
    manifest["eta"].append({"cover": "icosahedron.json", "group": "z2.json",
                            "domains": [list(dom1), list(dom2)]})

    with open(os.path.join(OUT, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"corpus written to {OUT}: "
          f"{len(manifest['complexes'])} complexes, "
          f"{len(manifest['maps'])} maps, {len(manifest['groups'])} groups, "
          f"{len(manifest['modules'])} modules, "
          f"{len(manifest['triangulations'])} triangulations")
    return 0


if __name__ == "__main__":
    sys.exit(main())
