"""Seeded random complexes and chain maps for property sweeps.

Exact ∂∂ = 0 is arranged by construction, not by rejection: a complex
is a direct sum of elementary pieces (free generators and acyclic
identity strips) conjugated degreewise by small unimodular matrices.
Random chain maps are homotopy perturbations a*id + ∂h + h∂, which
commute with the boundary for every choice of h.
"""
from __future__ import annotations

from fractions import Fraction
from random import Random

from .complexes import (NormedComplex, NormSpec, ChainMap, HOMOLOGICAL,
                        COHOMOLOGICAL, L1, LINF, chain_map, validate)
from .linalg import Matrix
from .rationals import ONE, ZERO


def _unimodular(rng: Random, n: int, ops: int) -> Matrix:
    """Product of a few elementary row operations; inverse stays small."""
    m = Matrix.identity(n)
    rows = [list(r) for r in m.to_rows()]
    for _ in range(ops):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            rows[i][k] += c * rows[j][k]
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows],
                            ncols=n)


def _weights(rng: Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(1, 4), rng.randint(1, 3))
                 for _ in range(n))


def random_complex(rng: Random, max_top: int = 4, max_dim: int = 5,
                   orientation: str = HOMOLOGICAL) -> NormedComplex:
    """Random normed complex with known-by-construction homology.

    Per degree: h_n free generators survive to homology, s_n identity
    strips connect degree n+1 to degree n and die.  dims stay at most
    max_dim.
    """
    top = rng.randint(0, max_top)
    strips = [rng.randint(0, 2) for _ in range(top)]       # s[n]: n+1 -> n
    frees = []
    for n in range(top + 1):
        below = strips[n - 1] if n >= 1 else 0
        above = strips[n] if n < top else 0
        room = max_dim - below - above
        frees.append(rng.randint(0, max(0, room)))
    dims = []
    for n in range(top + 1):
        below = strips[n - 1] if n >= 1 else 0
        above = strips[n] if n < top else 0
        dims.append(frees[n] + below + above)
    # basis order per degree: [incoming strip | free | outgoing strip]
    maps = []
    for n in range(1, top + 1):
        below = strips[n - 1]
        if orientation == HOMOLOGICAL:
            entries = [(dims[n - 1] - below + t, t, ONE) for t in range(below)]
            maps.append(Matrix.from_entries(dims[n - 1], dims[n], entries))
        else:
            entries = [(t, dims[n - 1] - below + t, ONE) for t in range(below)]
            maps.append(Matrix.from_entries(dims[n], dims[n - 1], entries))
    base = NormedComplex(orientation, tuple(dims), tuple(maps),
                         tuple(NormSpec(L1 if orientation == HOMOLOGICAL
                                        else LINF, (ONE,) * d)
                               for d in dims))
    ts = [_unimodular(rng, d, rng.randint(0, 3)) for d in dims]
    from .linalg import inverse
    tinv = [inverse(t) for t in ts]
    new_maps = []
    for n in range(1, top + 1):
        if orientation == HOMOLOGICAL:
            new_maps.append(ts[n - 1] @ base.maps[n - 1] @ tinv[n])
        else:
            new_maps.append(ts[n] @ base.maps[n - 1] @ tinv[n - 1])
    out = NormedComplex(orientation, tuple(dims), tuple(new_maps),
                        tuple(NormSpec(base.norms[n].kind,
                                       _weights(rng, dims[n]))
                              for n in range(top + 1)))
    report = validate(out)
    assert report.ok, report.lines()[0]
    return out


def _random_homotopy(rng: Random, rows: int, cols: int) -> Matrix:
    entries = []
    for j in range(cols):
        for i in range(rows):
            if rng.random() < 0.3:
                entries.append((i, j, Fraction(rng.randint(-2, 2))))
    return Matrix.from_entries(rows, cols, entries)


def random_self_map(rng: Random, c: NormedComplex) -> ChainMap:
    """a*id + ∂h + h∂ for random a and h; always a chain map."""
    a = Fraction(rng.choice([0, 0, 1, -1, 2, -2, Fraction(1, 2)]))
    mats = []
    if c.orientation == HOMOLOGICAL:
        # h[n]: C_n -> C_{n+1}
        hs = [_random_homotopy(rng, c.dim(n + 1), c.dim(n))
              for n in range(c.top_degree + 1)]
        for n in range(c.top_degree + 1):
            m = Matrix.identity(c.dim(n)).scale(a)
            m = m + c.boundary(n + 1) @ hs[n]
            if n >= 1:
                m = m + hs[n - 1] @ c.boundary(n)
            mats.append(m)
    else:
        # h[n]: C^n -> C^{n-1}
        hs = [_random_homotopy(rng, c.dim(n - 1), c.dim(n))
              for n in range(c.top_degree + 2)]
        for n in range(c.top_degree + 1):
            m = Matrix.identity(c.dim(n)).scale(a)
            if n >= 1:
                m = m + c.coboundary(n - 1) @ hs[n]
            m = m + hs[n + 1] @ c.coboundary(n)
            mats.append(m)
    return chain_map(c, c, mats)


def random_chain_map(rng: Random, max_top: int = 4, max_dim: int = 5,
                     orientation: str = HOMOLOGICAL) -> ChainMap:
    c = random_complex(rng, max_top, max_dim, orientation)
    return random_self_map(rng, c)
