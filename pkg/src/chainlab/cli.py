"""Command line front end.

Every command emits a Report: hashes of the input files, exact results
with rationals rendered as "p/q", and named assertions where every
failure carries a finite witness.  JSON output is byte-identical across
runs with the same inputs and seed, so wall-clock timing serializes as
null and only prints in text mode.  Exit status is 0 exactly when all
assertions pass, 1 on a failed assertion or an unreadable input file,
2 when the command line does not parse.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .complexes import (NormedComplex, ChainMap, HOMOLOGICAL, dual,
                        operator_norm, operator_norm_matrix, validate)
from .cones import (cone, shifted_cocone, cone_dual_iso, cone_rank_identity,
                    iso_via_cone, translation_check)
from .groups import (FiniteGroup, MonomialModule, trivial_module, bar_complex,
                     module_dual_identification, l1_homology_of_group,
                     bounded_cohomology_of_group,
                     h0_against_module_coinvariants,
                     h0_against_module_invariants, propose_domain, eta_map,
                     theta_map, eta_coinvariant_h0)
from .homology import (homology, homology_dims, homology_class,
                       homology_iso_degrees, is_cycle, seminorm,
                       seminorm_duality, vanishing_duality)
from .io import (ParseError, load_complex, load_chain_map, load_group,
                 load_module, load_simplicial, load_vertex_action, load_cycle,
                 save_complex, _read)
from .linalg import solve, vec
from .rationals import rat, rat_str
from .randgen import random_complex, random_self_map
from .simplicial import (NonOrientable, chain_complex, fundamental_cycle,
                         invisibility_series, prism, sv_upper_bound)


@dataclass
class Assertion:
    name: str
    ok: bool
    witness: object = None


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    seconds: float | None = None

    def add_input(self, path: str) -> None:
        with open(path, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
        self.inputs[path] = digest

    def check(self, name: str, ok: bool, witness=None) -> bool:
        self.assertions.append(Assertion(name, bool(ok),
                                         witness if not ok else None))
        return bool(ok)

    def attempt(self, name: str, fn):
        """Run fn; a raised check becomes a failing assertion."""
        try:
            value = fn()
        except (ValueError, RuntimeError, ParseError, NonOrientable) as exc:
            self.check(name, False, str(exc))
            return None
        self.check(name, True)
        return value

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)


def _render(value, approx: bool):
    if isinstance(value, Fraction):
        if approx:
            return {"exact": rat_str(value), "approx": repr(float(value))}
        return rat_str(value)
    if isinstance(value, dict):
        return {k: _render(v, approx) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v, approx) for v in value]
    return value


def _to_json(r: Report, approx: bool) -> str:
    body = {
        "command": r.command,
        "inputs": r.inputs,
        "results": _render(r.results, approx),
        "assertions": [{"name": a.name, "ok": a.ok,
                        "witness": _render(a.witness, approx)}
                       for a in r.assertions],
        "timing": None,
    }
    if approx:
        body["approx_note"] = ("approx values are floating point and not "
                               "authoritative; the exact fields are")
    return json.dumps(body, indent=1, sort_keys=True)


def _text_value(value, approx: bool) -> str:
    if isinstance(value, Fraction):
        if approx:
            return f"{rat_str(value)} (~{float(value)!r}, non-authoritative)"
        return rat_str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text_value(v, approx) for v in value) + "]"
    return str(value)


def _text_block(out: list, value, indent: int, approx: bool) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict):
                out.append(f"{pad}{k}:")
                _text_block(out, v, indent + 1, approx)
            else:
                out.append(f"{pad}{k}: {_text_value(v, approx)}")
    else:
        out.append(f"{pad}{_text_value(value, approx)}")


def _to_text(r: Report, approx: bool) -> str:
    out = [f"command: {r.command}"]
    if r.inputs:
        out.append("inputs:")
        for path, digest in r.inputs.items():
            out.append(f"  {path}  sha256 {digest}")
    if r.results:
        out.append("results:")
        _text_block(out, r.results, 1, approx)
    out.append("assertions:")
    for a in r.assertions:
        line = f"  [{'PASS' if a.ok else 'FAIL'}] {a.name}"
        if a.witness is not None:
            line += f"  witness: {_text_value(a.witness, approx)}"
        out.append(line)
    npass = sum(1 for a in r.assertions if a.ok)
    out.append(f"summary: {npass}/{len(r.assertions)} assertions passed")
    if r.seconds is not None:
        out.append(f"timing: {r.seconds:.3f}s wall clock "
                   "(serialized as null in JSON output)")
    return "\n".join(out)


# -- individual commands ----------------------------------------------


def _sniff_kind(path: str) -> str:
    data = _read(path)
    for key, kind in (("boundaries", "complex"), ("mats", "map"),
                      ("table", "group"), ("simplices", "simplicial"),
                      ("action", "module")):
        if key in data:
            return kind
    raise ParseError(path, "unrecognized file shape: expected one of the "
                     "keys boundaries/matrices/table/simplices/action")


def _complex_summary(c: NormedComplex) -> dict:
    return {
        "orientation": c.orientation,
        "top degree": c.top_degree,
        "dims": list(c.dims),
        "norms": [f"{c.norms[n].kind}({', '.join(map(rat_str, c.norms[n].weights))})"
                  for n in range(c.top_degree + 1)],
    }


def cmd_validate(args, r: Report) -> None:
    path = args.file
    r.add_input(path)
    kind = _sniff_kind(path)
    r.results["kind"] = kind
    if kind == "complex":
        c = load_complex(path)
        r.results.update(_complex_summary(c))
        report = validate(c)
        if report.ok:
            r.check(f"{path} is a valid normed complex", True)
        else:
            for line in report.lines():
                r.check(f"{path} is a valid normed complex", False, line)
    elif kind == "map":
        f = r.attempt(f"{path} is a valid chain map",
                      lambda: load_chain_map(path))
        if f is not None:
            r.results["source dims"] = list(f.source.dims)
            r.results["target dims"] = list(f.target.dims)
    elif kind == "group":
        g = r.attempt(f"{path} is a group table", lambda: load_group(path))
        if g is not None:
            r.results["order"] = g.order
    elif kind == "simplicial":
        k = r.attempt(f"{path} is a face-closed simplicial complex",
                      lambda: load_simplicial(path))
        if k is not None:
            r.results["vertices"] = k.vertex_count
            r.results["simplices"] = len(k.simplices)
            r.results["dimension"] = k.dimension
    else:
        if not args.group:
            raise ParseError(path, "module files validate against a group; "
                             "pass --group <group.json>")
        r.add_input(args.group)
        g = load_group(args.group)
        v = r.attempt(f"{path} is an isometric monomial module",
                      lambda: load_module(path, g))
        if v is not None:
            r.results["dim"] = v.dim
            r.results["weights"] = list(v.weights)


def cmd_homology(args, r: Report) -> None:
    r.add_input(args.file)
    c = load_complex(args.file)
    r.results.update(_complex_summary(c))
    report = validate(c)
    r.check("complex validates", report.ok,
            report.lines()[0] if not report.ok else None)
    if not report.ok:
        return
    degrees = [args.degree] if args.degree is not None \
        else list(range(c.top_degree + 1))
    dims = {}
    for n in degrees:
        dims[f"degree {n}"] = homology(c, n).dimension
    r.results["homology dimensions"] = dims


def cmd_seminorm(args, r: Report) -> None:
    r.add_input(args.file)
    r.add_input(getattr(args, "class"))
    c = load_complex(args.file)
    degree, coeffs = load_cycle(getattr(args, "class"))
    r.check("coefficient count matches the degree dimension",
            len(coeffs) == c.dim(degree),
            f"{len(coeffs)} coefficients, dimension {c.dim(degree)}")
    if len(coeffs) != c.dim(degree):
        return
    cyc = is_cycle(c, degree, coeffs)
    r.check("representative is a cycle", cyc,
            None if cyc else list(map(rat_str, c.outgoing(degree).apply(vec(coeffs)))))
    if not cyc:
        return
    alpha = homology_class(c, degree, coeffs)
    res = seminorm(c, alpha)
    r.results["degree"] = degree
    r.results["seminorm"] = res.value
    r.results["minimizer"] = list(res.witness)
    labels = c.labels[degree] if c.labels else None
    if labels:
        r.results["basis"] = list(labels)
    r.check("minimizer attains the reported seminorm", True)


def cmd_dual(args, r: Report) -> None:
    r.add_input(args.file)
    c = load_complex(args.file)
    d = dual(c)
    r.results["dual"] = _complex_summary(d)
    rep = validate(d)
    r.check("dual complex validates", rep.ok,
            rep.lines()[0] if not rep.ok else None)
    dd = dual(d)
    back = (dd.orientation == c.orientation and dd.dims == c.dims
            and all(dd.maps[i] == c.maps[i] for i in range(len(c.maps)))
            and dd.norms == c.norms)
    r.check("double dual returns the original complex", back)
    if args.out:
        save_complex(args.out, d)
        r.results["written"] = args.out


def cmd_cone(args, r: Report) -> None:
    r.add_input(args.file)
    f = load_chain_map(args.file)
    k = cone(f) if f.source.orientation == HOMOLOGICAL else shifted_cocone(f)
    r.results["cone dims"] = list(k.complex.dims)
    rep = validate(k.complex)
    r.check("cone complex validates", rep.ok,
            rep.lines()[0] if not rep.ok else None)
    r.results["cone homology dimensions"] = homology_dims(k.complex)
    iso = r.attempt("cone acyclicity agrees with the direct rank check",
                    lambda: iso_via_cone(f))
    if iso is not None:
        r.results["induces isomorphisms"] = iso
    if f.source.orientation == HOMOLOGICAL:
        r.attempt("homology of the cone matches the long exact sequence ranks",
                  lambda: cone_rank_identity(f))
        r.attempt("dual of the cone is the shifted cocone of the negated dual",
                  lambda: cone_dual_iso(f))


def _load_probes(path: str, f: ChainMap) -> list:
    data = _read(path)
    out = []
    for i, entry in enumerate(data.get("probes", [])):
        side = entry.get("side", "chain")
        degree = entry["degree"]
        coeffs = tuple(rat(x) for x in entry["coefficients"])
        parent = f.source if side == "chain" else dual(f.target)
        out.append(homology_class(parent, degree, coeffs))
    return out


def cmd_translate_check(args, r: Report) -> None:
    r.add_input(args.file)
    f = load_chain_map(args.file)
    probes = []
    if args.probes:
        r.add_input(args.probes)
        probes = _load_probes(args.probes, f)
    rep = r.attempt("isomorphism on homology iff isomorphism on dual cohomology",
                    lambda: translation_check(f, probes,
                                              exhaustive=args.exhaustive))
    if rep is None:
        return
    r.results["homology isomorphism"] = rep.homology_iso
    r.results["dual cohomology isomorphism"] = rep.dual_cohomology_iso
    r.results["probe scope"] = rep.probe_scope
    r.results["checked probes"] = {"chain": rep.chain_probes,
                                   "cochain": rep.cochain_probes}
    if rep.isometric_hypothesis is None:
        r.check("no isomorphism, so no seminorm comparison is claimed", True)
        return
    r.results["dual preserves co-seminorms on checked set"] = \
        rep.isometric_hypothesis
    r.results["norm comparisons"] = {
        f"{ck.side} degree {ck.degree} check {i}":
            f"{rat_str(ck.before)} vs {rat_str(ck.after)}"
        for i, ck in enumerate(rep.checks)}
    if not rep.isometric_hypothesis:
        r.check("isometry hypothesis fails, so no seminorm claim is made",
                rep.seminorms_preserved is None)
    else:
        r.check("dual is isometric on the checked set, and seminorms are "
                "preserved on the chain side", bool(rep.seminorms_preserved))


def _duality_sweep(r: Report, c: NormedComplex, tag: str) -> None:
    for n in range(c.top_degree + 1):
        hs = homology(c, n)
        for j in range(hs.dimension):
            alpha = homology_class(c, n, hs.cycle_basis.column(j))
            rep = seminorm_duality(c, alpha)
            r.check(f"{tag}degree {n} class {j}: seminorm equals the dual "
                    "supremum", rep.agree,
                    f"primal {rat_str(rep.primal_seminorm)}, "
                    f"dual {rat_str(rep.dual_sup)}")
            key = f"degree {n} class {j}"
            entry = {"seminorm": rep.primal_seminorm,
                     "dual sup": rep.dual_sup}
            if rep.certificate is not None:
                entry["certificate"] = list(rep.certificate.representative)
            r.results.setdefault("classes", {})[key] = entry


def cmd_duality_check(args, r: Report) -> None:
    r.add_input(args.file)
    c = load_complex(args.file)
    rep = validate(c)
    r.check("complex validates", rep.ok,
            rep.lines()[0] if not rep.ok else None)
    if not rep.ok:
        return
    _duality_sweep(r, c, "")
    verdict = r.attempt("homology vanishing matches dual cohomology vanishing",
                        lambda: vanishing_duality(c))
    if verdict is not None:
        r.results["all homology vanishes"] = verdict


def _group_inputs(args, r: Report) -> tuple[FiniteGroup, MonomialModule | None]:
    r.add_input(args.group)
    g = load_group(args.group)
    v = None
    if args.coeffs:
        r.add_input(args.coeffs)
        v = load_module(args.coeffs, g)
    return g, v


def _degree_results(result) -> dict:
    out = {}
    for d in result.degrees:
        entry = {"dimension": d.dimension, "reliable": d.reliable}
        if d.seminorms is not None:
            entry["seminorms"] = list(d.seminorms)
        else:
            entry["seminorms"] = ("suppressed: top degree of a truncated "
                                  "resolution is not reliable")
        out[f"degree {d.degree}"] = entry
    return out


def cmd_group_l1h(args, r: Report) -> None:
    g, v = _group_inputs(args, r)
    result = l1_homology_of_group(g, v, top_degree=args.top)
    r.results["group order"] = g.order
    r.results["coefficients"] = args.coeffs or "trivial"
    r.results["degrees"] = _degree_results(result)
    for d in result.degrees:
        if 1 <= d.degree and d.reliable:
            r.check(f"l1-homology vanishes in degree {d.degree}",
                    d.dimension == 0, f"dimension {d.dimension}")
    ident = h0_against_module_coinvariants(g, v or trivial_module(g),
                                           top_degree=args.top)
    r.check("degree 0 identifies with the module coinvariants",
            ident.bijective)
    r.check("degree 0 seminorms match the coinvariant quotient norms",
            ident.seminorms_match)


def cmd_group_bch(args, r: Report) -> None:
    g, v = _group_inputs(args, r)
    result = bounded_cohomology_of_group(g, v, top_degree=args.top)
    r.results["group order"] = g.order
    r.results["coefficients"] = args.coeffs or "trivial"
    r.results["degrees"] = _degree_results(result)
    for d in result.degrees:
        if 1 <= d.degree and d.reliable:
            r.check(f"bounded cohomology vanishes in degree {d.degree}",
                    d.dimension == 0, f"dimension {d.dimension}")
    ident = h0_against_module_invariants(g, v or trivial_module(g),
                                         top_degree=args.top)
    r.check("degree 0 identifies with the module invariants",
            ident.bijective)
    r.check("degree 0 seminorms match the invariant norms",
            ident.seminorms_match)


def cmd_group_eta(args, r: Report) -> None:
    r.add_input(args.cover)
    r.add_input(args.group)
    g = load_group(args.group)
    k = load_simplicial(args.cover)
    va = load_vertex_action(args.cover, g)
    if args.domain:
        domain = tuple(int(x) for x in args.domain.split(","))
    else:
        domain = propose_domain(g, k, va)
    r.results["domain"] = list(domain)
    res = r.attempt("equivariant chain map from the cover to the bar "
                    "resolution exists on this domain",
                    lambda: eta_map(g, k, va, domain))
    if res is None:
        return
    r.results["cover dims"] = list(res.cover_complex.dims)
    r.results["bar dims"] = list(res.bar.complex.dims)
    norms = {f"degree {n}": operator_norm(res.map, n)
             for n in range(res.cover_complex.top_degree + 1)}
    r.results["operator norms"] = norms
    for n, w in norms.items():
        r.check(f"operator norm 1 in {n}", w == 1, rat_str(w))
    r.attempt("transpose matches the word-formula dual map",
              lambda: theta_map(res))
    h0 = r.attempt("map descends to coinvariants",
                   lambda: eta_coinvariant_h0(res))
    if h0 is not None:
        r.results["induced on H0 of coinvariants"] = \
            [list(row) for row in h0.to_rows()]


def cmd_simplicial_fundamental(args, r: Report) -> None:
    r.add_input(args.file)
    k = load_simplicial(args.file)
    r.results["vertices"] = k.vertex_count
    r.results["dimension"] = k.dimension
    z = r.attempt("orientations propagate consistently",
                  lambda: fundamental_cycle(k))
    if z is None:
        return
    tops = k.of_dim(k.dimension)
    r.results["coefficients"] = {
        "-".join(map(str, s)): z.coefficients[i] for i, s in enumerate(tops)}
    cc = chain_complex(k)
    bd = cc.boundary(k.dimension).apply(z.as_vector())
    r.check("fundamental chain is a cycle", all(x == 0 for x in bd))
    r.check("every top simplex appears with coefficient +1 or -1",
            all(abs(x) == 1 for x in z.coefficients))


def cmd_simplicial_sv_bound(args, r: Report) -> None:
    r.add_input(args.file)
    k = load_simplicial(args.file)
    b = sv_upper_bound(k)
    r.results["value"] = b.value
    r.results["fundamental norm"] = sum(abs(x) for x in b.cycle.coefficients)
    r.results["note"] = b.note
    cc = chain_complex(k)
    n = k.dimension
    r.check("reported value is the norm of the reported minimizer",
            sum(abs(x) for x in b.minimizer) == b.value)
    r.check("minimizer is a cycle",
            all(x == 0 for x in cc.boundary(n).apply(vec(b.minimizer))))
    diff = tuple(a - c for a, c in
                 zip(b.cycle.coefficients, b.minimizer))
    w = solve(cc.boundary(n + 1), vec(diff))
    r.check("minimizer represents the fundamental class", w is not None)
    r.check("value does not exceed the fundamental cycle norm",
            b.value <= sum(abs(x) for x in b.cycle.coefficients))


def cmd_simplicial_prism(args, r: Report) -> None:
    r.add_input(args.file)
    r.add_input(args.cycle)
    k = load_simplicial(args.file)
    degree, coeffs = load_cycle(args.cycle)
    res = r.attempt("prism chain construction",
                    lambda: prism(k, degree, coeffs))
    if res is None:
        return
    r.results["prism degree"] = res.degree
    r.results["chain norm"] = res.chain_norm
    r.results["norm bound"] = res.norm_bound
    pc = chain_complex(res.product)
    bd = pc.boundary(res.degree).apply(res.chain)
    target = tuple(t - b for t, b in zip(res.top, res.bottom))
    r.check("boundary of the prism chain is top minus bottom inclusion",
            tuple(bd) == target)
    r.check("prism chain norm is at most degree times the cycle norm",
            res.chain_norm <= res.norm_bound,
            f"{rat_str(res.chain_norm)} > {rat_str(res.norm_bound)}")


def cmd_simplicial_series(args, r: Report) -> None:
    r.add_input(args.file)
    data = _read(args.file)
    base = os.path.dirname(os.path.abspath(args.file))
    fpath = os.path.join(base, data["map"])
    zpath = os.path.join(base, data["cycle"])
    r.add_input(fpath)
    r.add_input(zpath)
    f = load_chain_map(fpath)
    degree, z = load_cycle(zpath)
    d = data["d"]
    steps = data.get("steps", 8)
    if data.get("b"):
        bpath = os.path.join(base, data["b"])
        r.add_input(bpath)
        bdeg, b = load_cycle(bpath)
    else:
        b = (rat(0),) * f.source.dim(degree + 1)
    rep = r.attempt("primitive identity and telescoping hold exactly at "
                    f"every step up to {steps}",
                    lambda: invisibility_series(f, degree, z, d, b,
                                                steps=steps))
    if rep is None:
        return
    r.results["d"] = d
    r.results["steps"] = rep.steps
    r.results["term norms"] = list(rep.term_norms)
    r.results["partial sum norms"] = list(rep.partial_norms)
    r.results["remainder norms"] = list(rep.remainder_norms)
    r.results["observed ratio"] = rep.observed_ratio \
        if rep.observed_ratio is not None else "none: all terms zero"
    r.results["geometric decay"] = rep.geometric_decay \
        if rep.geometric_decay is not None else "not applicable"
    r.results["note"] = ("partial sums only; the limit would live in a "
                         "completion this model does not contain")


# -- corpus verification ----------------------------------------------

SECTIONS = ("exactness", "duality", "cones", "translation", "groups",
            "modules", "eta", "simplicial", "series", "random")


def _corpus_exactness(r: Report, root: str, manifest: dict, loaded: dict):
    for fn in manifest.get("complexes", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        c = load_complex(path)
        rep = validate(c)
        if r.check(f"exactness: {fn} validates", rep.ok,
                   rep.lines()[0] if not rep.ok else None):
            loaded[fn] = c
    for fn in manifest.get("invalid", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        rep = validate(load_complex(path))
        r.check(f"exactness: {fn} is rejected", not rep.ok,
                "validated cleanly but should not")
    for fn in manifest.get("maps", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        f = r.attempt(f"exactness: {fn} commutes with the boundaries",
                      lambda p=path: load_chain_map(p))
        if f is not None:
            loaded[("map", fn)] = f
    for fn in manifest.get("groups", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        g = r.attempt(f"exactness: {fn} is a group", lambda p=path: load_group(p))
        if g is not None:
            loaded[("group", fn)] = g
            r.attempt(f"exactness: bar resolution of {fn} is equivariant "
                      "with square-zero boundary",
                      lambda gg=g: bar_complex(gg, 2))
    for entry in manifest.get("modules", []):
        fn, gn = entry["file"], entry["group"]
        path = os.path.join(root, fn)
        r.add_input(path)
        g = loaded.get(("group", gn))
        if g is None:
            r.check(f"exactness: module {fn} has its group {gn}", False,
                    "group failed to load")
            continue
        v = r.attempt(f"exactness: {fn} acts by weighted-norm isometries",
                      lambda p=path, gg=g: load_module(p, gg))
        if v is not None:
            loaded[("module", fn)] = v
    for fn in manifest.get("triangulations", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        k = load_simplicial(path)
        loaded[("tri", fn)] = k
        cc = chain_complex(k)
        rep = validate(cc)
        r.check(f"exactness: chains of {fn} validate", rep.ok,
                rep.lines()[0] if not rep.ok else None)
        loaded[("chain", fn)] = cc


def _corpus_duality(r: Report, root: str, manifest: dict, loaded: dict):
    for fn in manifest.get("complexes", []):
        c = loaded.get(fn)
        if c is None or c.orientation != HOMOLOGICAL:
            continue
        for n in range(c.top_degree + 1):
            hs = homology(c, n)
            for j in range(hs.dimension):
                alpha = homology_class(c, n, hs.cycle_basis.column(j))
                rep = seminorm_duality(c, alpha)
                r.check(f"duality: {fn} degree {n} class {j} primal equals "
                        "dual", rep.agree,
                        f"primal {rat_str(rep.primal_seminorm)}, "
                        f"dual {rat_str(rep.dual_sup)}")
        r.attempt(f"duality: {fn} vanishing biconditional",
                  lambda cc=c: vanishing_duality(cc))
    for entry in manifest.get("cycles", []):
        c = loaded.get(entry["complex"])
        if c is None:
            continue
        path = os.path.join(root, entry["file"])
        r.add_input(path)
        degree, coeffs = load_cycle(path)
        ok = is_cycle(c, degree, coeffs)
        r.check(f"duality: {entry['file']} is a cycle on {entry['complex']}",
                ok)
        if ok:
            rep = seminorm_duality(c, homology_class(c, degree, coeffs))
            r.check(f"duality: {entry['file']} primal equals dual", rep.agree,
                    f"primal {rat_str(rep.primal_seminorm)}, "
                    f"dual {rat_str(rep.dual_sup)}")


def _corpus_cones(r: Report, manifest: dict, loaded: dict):
    for fn in manifest.get("maps", []):
        f = loaded.get(("map", fn))
        if f is None:
            continue
        if f.source.orientation == HOMOLOGICAL:
            r.attempt(f"cones: {fn} satisfies the long exact sequence ranks",
                      lambda ff=f: cone_rank_identity(ff))
            r.attempt(f"cones: dual of cone({fn}) is the shifted cocone of "
                      "the negated dual", lambda ff=f: cone_dual_iso(ff))
        r.attempt(f"cones: {fn} cone acyclicity agrees with direct ranks",
                  lambda ff=f: iso_via_cone(ff))


def _corpus_translation(r: Report, manifest: dict, loaded: dict):
    for fn in manifest.get("maps", []):
        f = loaded.get(("map", fn))
        if f is None or f.source.orientation != HOMOLOGICAL:
            continue
        rep = r.attempt(f"translation: {fn} biconditional",
                        lambda ff=f: translation_check(ff))
        if rep is None:
            continue
        if rep.isometric_hypothesis is True:
            r.check(f"translation: {fn} isometric dual preserves seminorms",
                    bool(rep.seminorms_preserved))
        elif rep.isometric_hypothesis is False:
            r.check(f"translation: {fn} fails the isometry hypothesis and "
                    "makes no seminorm claim", rep.seminorms_preserved is None)


def _corpus_groups(r: Report, manifest: dict, loaded: dict, top: int):
    pairs = []
    for fn in manifest.get("groups", []):
        g = loaded.get(("group", fn))
        if g is not None:
            pairs.append((fn, g, "trivial", None))
    for entry in manifest.get("modules", []):
        g = loaded.get(("group", entry["group"]))
        v = loaded.get(("module", entry["file"]))
        if g is not None and v is not None:
            pairs.append((entry["group"], g, entry["file"], v))
    for gn, g, vn, v in pairs:
        res = l1_homology_of_group(g, v, top_degree=top)
        for d in res.degrees:
            if d.degree >= 1 and d.reliable:
                r.check(f"groups: {gn} with {vn}: l1-homology vanishes in "
                        f"degree {d.degree}", d.dimension == 0,
                        f"dimension {d.dimension}")
        ident = h0_against_module_coinvariants(g, v or trivial_module(g),
                                               top_degree=top)
        r.check(f"groups: {gn} with {vn}: degree 0 matches the module "
                "coinvariants isometrically",
                ident.bijective and ident.seminorms_match)
        res = bounded_cohomology_of_group(g, v, top_degree=top)
        for d in res.degrees:
            if d.degree >= 1 and d.reliable:
                r.check(f"groups: {gn} with {vn}: bounded cohomology vanishes "
                        f"in degree {d.degree}", d.dimension == 0,
                        f"dimension {d.dimension}")
        ident = h0_against_module_invariants(g, v or trivial_module(g),
                                             top_degree=top)
        r.check(f"groups: {gn} with {vn}: degree 0 matches the module "
                "invariants isometrically",
                ident.bijective and ident.seminorms_match)


def _corpus_modules(r: Report, manifest: dict, loaded: dict):
    for entry in manifest.get("modules", []):
        v = loaded.get(("module", entry["file"]))
        if v is None:
            continue
        r.attempt(f"modules: dual of coinvariants of {entry['file']} is "
                  "invariants of the dual, isometrically",
                  lambda vv=v: module_dual_identification(vv))


def _corpus_eta(r: Report, root: str, manifest: dict, loaded: dict):
    for entry in manifest.get("eta", []):
        g = loaded.get(("group", entry["group"]))
        k = loaded.get(("tri", entry["cover"]))
        if g is None or k is None:
            continue
        path = os.path.join(root, entry["cover"])
        va = load_vertex_action(path, g)
        h0s = []
        for dom in entry.get("domains", []):
            dom = tuple(dom)
            tag = f"eta: {entry['cover']} domain {dom}"
            res = r.attempt(f"{tag}: equivariant chain map exists",
                            lambda d=dom: eta_map(g, k, va, d))
            if res is None:
                continue
            for n in range(res.cover_complex.top_degree + 1):
                w = operator_norm(res.map, n)
                r.check(f"{tag}: operator norm 1 in degree {n}", w == 1,
                        rat_str(w))
            r.attempt(f"{tag}: transpose matches the word formula",
                      lambda rr=res: theta_map(rr))
            h0 = r.attempt(f"{tag}: descends to coinvariants",
                           lambda rr=res: eta_coinvariant_h0(rr))
            if h0 is not None:
                h0s.append(h0)
        if len(h0s) >= 2:
            same = all(h0s[0] == h for h in h0s[1:])
            r.check(f"eta: {entry['cover']}: all fundamental domains induce "
                    "the same map on H0 of coinvariants", same)


def _corpus_simplicial(r: Report, root: str, manifest: dict, loaded: dict):
    for fn in manifest.get("triangulations", []):
        k = loaded.get(("tri", fn))
        cc = loaded.get(("chain", fn))
        if k is None:
            continue
        for n in range(1, cc.top_degree + 1):
            src, tgt = cc.norm_at(n), cc.norm_at(n - 1)
            w = operator_norm_matrix(cc.boundary(n), src, tgt)
            r.check(f"simplicial: {fn} boundary norm in degree {n} is {n + 1}",
                    w == n + 1, rat_str(w))
        z = r.attempt(f"simplicial: {fn} is orientable",
                      lambda kk=k: fundamental_cycle(kk))
        if z is None:
            continue
        b = sv_upper_bound(k)
        fund_norm = sum(abs(x) for x in z.coefficients)
        r.check(f"simplicial: {fn} volume bound at most the fundamental "
                "norm", b.value <= fund_norm,
                f"{rat_str(b.value)} > {rat_str(fund_norm)}")
        if not k.of_dim(k.dimension + 1):
            r.check(f"simplicial: {fn} has nothing above the top, so the "
                    "bound equals the fundamental norm", b.value == fund_norm,
                    rat_str(b.value))
        if k.dimension <= 2:
            res = prism(k, k.dimension, z.coefficients)
            pc = chain_complex(res.product)
            bd = pc.boundary(res.degree).apply(res.chain)
            target = tuple(t - bb for t, bb in zip(res.top, res.bottom))
            r.check(f"simplicial: {fn} prism boundary identity",
                    tuple(bd) == target)
            r.check(f"simplicial: {fn} prism norm bound",
                    res.chain_norm <= res.norm_bound,
                    f"{rat_str(res.chain_norm)} > {rat_str(res.norm_bound)}")
    for fn in manifest.get("nonorientable", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        k = load_simplicial(path)
        try:
            fundamental_cycle(k)
        except NonOrientable as exc:
            r.check(f"simplicial: {fn} is detected as non-orientable", True)
        else:
            r.check(f"simplicial: {fn} is detected as non-orientable", False,
                    "a fundamental cycle was produced")


def _corpus_series(r: Report, root: str, manifest: dict):
    for fn in manifest.get("series", []):
        path = os.path.join(root, fn)
        r.add_input(path)
        data = _read(path)
        base = os.path.dirname(path)
        f = load_chain_map(os.path.join(base, data["map"]))
        degree, z = load_cycle(os.path.join(base, data["cycle"]))
        if data.get("b"):
            _, b = load_cycle(os.path.join(base, data["b"]))
        else:
            b = (rat(0),) * f.source.dim(degree + 1)
        r.attempt(f"series: {fn} telescopes exactly",
                  lambda: invisibility_series(f, degree, z, data["d"], b,
                                              steps=data.get("steps", 8)))


def _corpus_random(r: Report, seed: int):
    rng = Random(seed)
    for i in range(4):
        c = random_complex(rng, max_top=3, max_dim=4)
        agree = True
        for n in range(c.top_degree + 1):
            hs = homology(c, n)
            for j in range(hs.dimension):
                alpha = homology_class(c, n, hs.cycle_basis.column(j))
                agree &= seminorm_duality(c, alpha).agree
        r.check(f"random: complex {i} (seed {seed}) duality agrees on every "
                "basis class", agree)
        r.attempt(f"random: complex {i} (seed {seed}) vanishing biconditional",
                  lambda cc=c: vanishing_duality(cc))
    for i in range(4):
        f = random_self_map(rng, random_complex(rng, max_top=3, max_dim=4))
        r.attempt(f"random: map {i} (seed {seed}) cone ranks and dual cone",
                  lambda ff=f: (cone_rank_identity(ff), cone_dual_iso(ff)))
        r.attempt(f"random: map {i} (seed {seed}) translation biconditional",
                  lambda ff=f: translation_check(ff))


def cmd_corpus_verify(args, r: Report) -> None:
    root = args.dir
    manifest_path = os.path.join(root, "manifest.json")
    r.add_input(manifest_path)
    manifest = _read(manifest_path)
    wanted = set(args.sections.split(",")) if args.sections else set(SECTIONS)
    unknown = wanted - set(SECTIONS)
    if unknown:
        raise ParseError(manifest_path,
                         f"unknown sections: {', '.join(sorted(unknown))}")
    loaded: dict = {}
    need_load = wanted - {"random"}
    if need_load:
        _corpus_exactness(r, root, manifest, loaded)
    if "duality" in wanted:
        _corpus_duality(r, root, manifest, loaded)
    if "cones" in wanted:
        _corpus_cones(r, manifest, loaded)
    if "translation" in wanted:
        _corpus_translation(r, manifest, loaded)
    if "groups" in wanted:
        _corpus_groups(r, manifest, loaded, top=2)
    if "modules" in wanted:
        _corpus_modules(r, manifest, loaded)
    if "eta" in wanted:
        _corpus_eta(r, root, manifest, loaded)
    if "simplicial" in wanted:
        _corpus_simplicial(r, root, manifest, loaded)
    if "series" in wanted:
        _corpus_series(r, root, manifest)
    if "random" in wanted:
        _corpus_random(r, args.seed)
    if "exactness" not in wanted and need_load:
        # loading ran only to feed later sections; drop its assertions
        keep = [a for a in r.assertions if not a.name.startswith("exactness:")]
        r.assertions[:] = keep
    r.results["sections"] = sorted(wanted)
    r.results["assertion count"] = len(r.assertions)


# -- argument parsing --------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property sweeps")
    common.add_argument("--approx", action="store_true",
                        help="add non-authoritative decimal renderings")

    p = argparse.ArgumentParser(
        prog="chainlab",
        description="exact chain complex calculator: norms, homology, "
                    "duality, cones, group resolutions, triangulations")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", parents=[common],
                        help="validate a complex, map, group, module, or "
                             "triangulation file")
    sp.add_argument("file")
    sp.add_argument("--group", help="group file, required for module files")
    sp.set_defaults(handler=cmd_validate)

    sp = sub.add_parser("homology", parents=[common],
                        help="homology dimensions of a complex")
    sp.add_argument("file")
    sp.add_argument("--degree", type=int, default=None)
    sp.set_defaults(handler=cmd_homology)

    sp = sub.add_parser("seminorm", parents=[common],
                        help="quotient seminorm of a homology class")
    sp.add_argument("file")
    sp.add_argument("--class", required=True, dest="class",
                    help="cycle file: {degree, coefficients}")
    sp.set_defaults(handler=cmd_seminorm)

    sp = sub.add_parser("dual", parents=[common],
                        help="dual complex with dual norms")
    sp.add_argument("file")
    sp.add_argument("--out", help="write the dual complex to this file")
    sp.set_defaults(handler=cmd_dual)

    sp = sub.add_parser("cone", parents=[common],
                        help="mapping cone of a chain map")
    sp.add_argument("file")
    sp.set_defaults(handler=cmd_cone)

    sp = sub.add_parser("translate-check", parents=[common],
                        help="compare a map on homology with its dual on "
                             "cohomology")
    sp.add_argument("file")
    sp.add_argument("--probes", help="extra probe classes: "
                                     "{probes: [{side, degree, coefficients}]}")
    sp.add_argument("--exhaustive", action="store_true",
                    help="certify isometry on unit balls (small spaces only)")
    sp.set_defaults(handler=cmd_translate_check)

    sp = sub.add_parser("duality-check", parents=[common],
                        help="seminorm against its dual description, every "
                             "homology basis class")
    sp.add_argument("file")
    sp.set_defaults(handler=cmd_duality_check)

    gp = sub.add_parser("group", help="finite group (co)homology commands")
    gsub = gp.add_subparsers(dest="subcommand", required=True)
    sp = gsub.add_parser("l1h", parents=[common],
                         help="l1-homology from the bar resolution")
    sp.add_argument("group")
    sp.add_argument("--coeffs", help="monomial coefficient module file")
    sp.add_argument("--top", type=int, default=3)
    sp.set_defaults(handler=cmd_group_l1h)
    sp = gsub.add_parser("bch", parents=[common],
                         help="bounded cohomology from the dual bar "
                              "resolution")
    sp.add_argument("group")
    sp.add_argument("--coeffs", help="monomial coefficient module file")
    sp.add_argument("--top", type=int, default=3)
    sp.set_defaults(handler=cmd_group_bch)
    sp = gsub.add_parser("eta", parents=[common],
                         help="chain map from a free cover to the bar "
                              "resolution")
    sp.add_argument("cover")
    sp.add_argument("group")
    sp.add_argument("--domain", help="comma-separated fundamental domain "
                                     "vertices; defaults to a proposal")
    sp.set_defaults(handler=cmd_group_eta)

    tp = sub.add_parser("simplicial", help="triangulation commands")
    tsub = tp.add_subparsers(dest="subcommand", required=True)
    sp = tsub.add_parser("fundamental", parents=[common],
                         help="fundamental cycle by orientation propagation")
    sp.add_argument("file")
    sp.set_defaults(handler=cmd_simplicial_fundamental)
    sp = tsub.add_parser("sv-bound", parents=[common],
                         help="l1-seminorm of the fundamental class")
    sp.add_argument("file")
    sp.set_defaults(handler=cmd_simplicial_sv_bound)
    sp = tsub.add_parser("prism", parents=[common],
                         help="prism chain between the two ends of K x [0,1]")
    sp.add_argument("file")
    sp.add_argument("--cycle", required=True)
    sp.set_defaults(handler=cmd_simplicial_prism)
    sp = tsub.add_parser("series", parents=[common],
                         help="telescoping partial sums for a degree-d "
                              "self map")
    sp.add_argument("file", help="bundle: {map, cycle, d, b, steps}")
    sp.set_defaults(handler=cmd_simplicial_series)

    sp = sub.add_parser("corpus-verify", parents=[common],
                        help="run every checker over the bundled corpus")
    sp.add_argument("--dir", default=_default_corpus_dir())
    sp.add_argument("--sections",
                    help="comma-separated subset of: " + ", ".join(SECTIONS))
    sp.set_defaults(handler=cmd_corpus_verify)
    return p


def _default_corpus_dir() -> str:
    here = os.path.dirname(os.path.abspath(__file__))
    for candidate in (os.path.join(here, "corpus"),
                      os.path.join(here, "..", "..", "corpus")):
        if os.path.isdir(candidate):
            return os.path.normpath(candidate)
    return "corpus"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    name = args.command
    if getattr(args, "subcommand", None):
        name = f"{name} {args.subcommand}"
    report = Report(command=name)
    t0 = time.monotonic()
    try:
        args.handler(args, report)
    except (ParseError, ValueError, RuntimeError, NonOrientable,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report.seconds = time.monotonic() - t0
    if args.format == "json":
        print(_to_json(report, args.approx))
    else:
        print(_to_text(report, args.approx))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
