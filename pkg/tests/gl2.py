"""Brute-force GL_2(F_ell) enumeration used as an oracle by the tests."""

import itertools


def mul(g, h, ell):
    a, b, c, d = g
    e, f, k, m = h
    return ((a * e + b * k) % ell, (a * f + b * m) % ell,
            (c * e + d * k) % ell, (c * f + d * m) % ell)


def det(g, ell):
    return (g[0] * g[3] - g[1] * g[2]) % ell


def trace(g, ell):
    return (g[0] + g[3]) % ell


def inverse(g, ell):
    a, b, c, d = g
    di = pow(det(g, ell), -1, ell)
    return (d * di % ell, -b * di % ell, -c * di % ell, a * di % ell)


def gl2(ell):
    return [g for g in itertools.product(range(ell), repeat=4) if det(g, ell)]


def is_scalar(g):
    return g[1] == 0 and g[2] == 0 and g[0] == g[3]


def projective_order_at_most(g, ell, bound):
    h = g
    for k in range(1, bound + 1):
        if is_scalar(h):
            return k
        h = mul(h, g, ell)
    return None


def nonsquare(ell):
    return next(e for e in range(2, ell) if pow(e, (ell - 1) // 2, ell) == ell - 1)


def borel(ell):
    return [(a, b, 0, d) for a in range(1, ell) for b in range(ell) for d in range(1, ell)]


def split_cartan(ell):
    return [(a, 0, 0, d) for a in range(1, ell) for d in range(1, ell)]


def split_normalizer(ell):
    w = (0, 1, 1, 0)
    cs = split_cartan(ell)
    return cs + [mul(w, g, ell) for g in cs]


def nonsplit_cartan(ell):
    eps = nonsquare(ell)
    return [(a, eps * c % ell, c, a) for a in range(ell) for c in range(ell) if (a, c) != (0, 0)]


def nonsplit_normalizer(ell):
    w = (1, 0, 0, ell - 1)
    cns = nonsplit_cartan(ell)
    return cns + [mul(w, g, ell) for g in cns]


def closure(gens, ell):
    """Subgroup generated by ``gens`` (finite group, so products suffice)."""
    identity = (1, 0, 0, 1)
    group = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = mul(g, s, ell)
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return frozenset(group)
