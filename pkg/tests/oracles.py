"""Independent reference computations used to cross-check the library.

Two routes that never touch the production cohomology path:

* closed-form dimensions for projective spaces and their products;
* a direct sum over integer functionals in a box, pairing each functional
  with the homology of its support complex.
"""

from itertools import product
from math import comb

from stackycoh.homology import reduced_betti, supp


def h_p1(d):
    """(h^0, h^1) of degree d on the projective line."""
    return (d + 1 if d >= 0 else 0, -d - 1 if d <= -2 else 0)


def h_p2(d):
    """(h^0, h^1, h^2) of degree d on the projective plane."""
    return (
        comb(d + 2, 2) if d >= 0 else 0,
        0,
        comb(-d - 1, 2) if d <= -3 else 0,
    )


def h_product(ha, hb):
    """Cohomology of an external tensor product from factor dimensions."""
    out = [0] * (len(ha) + len(hb) - 1)
    for p, x in enumerate(ha):
        for q, y in enumerate(hb):
            out[p + q] += x * y
    return tuple(out)


def brute_cohomology(fan, a, radius):
    """Direct dimension count: one support complex per functional in a box.

    Sums reduced Betti contributions over all integer functionals with
    sup-norm at most radius, and insists that the boundary shell is
    homologically silent, so the box was large enough empirically.
    """
    m = fan.rank
    h = [0] * (m + 1)
    for f in product(range(-radius, radius + 1), repeat=m):
        r = [
            a[i] + sum(f[j] * fan.rays[i][j] for j in range(m))
            for i in range(fan.nrays)
        ]
        betti = reduced_betti(supp(fan, r), m)
        if not any(betti):
            continue
        if max(abs(x) for x in f) == radius:
            raise AssertionError(
                f"contribution on the shell at radius {radius}: f={f}"
            )
        for j in range(m + 1):
            h[j] += betti[m - j]
    return tuple(h)
