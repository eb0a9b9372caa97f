"""Ideals of O = Z[sqrt(d)] as rank-2 row lattices in Hermite normal form.

The canonical basis is lower-triangular, ((a, 0), (b, c)) with a, c > 0 and
0 <= b < a, in coordinates over {1, sqrt(d)}; equality of ideals is equality
of these matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import intlin
from .ring import RingContext, RingElement, UnsupportedRingError


class ZeroIdealError(ValueError):
    """All generators were zero."""


class NotOrderTwoError(ValueError):
    """Ideal is not of order exactly two in the class group."""


class SearchExhaustedError(RuntimeError):
    """Bounded enumeration ended without a hit; raise the bound and retry."""


@dataclass(frozen=True)
class Ideal:
    ctx: RingContext
    rows: tuple  # ((a, 0), (b, c)) canonical HNF rows

    @classmethod
    def from_generators(cls, ctx, gens):
        """HNF basis of the O-module generated by ``gens``.

        The Z-span of {g, sqrt(d)*g} over all generators is already closed
        under multiplication by O.
        """
        vecs = []
        for g in gens:
            if isinstance(g, int):
                g = ctx(g)
            if g.is_zero():
                continue
            vecs.append([g.x, g.y])
            h = g * ctx.sqrt_d
            vecs.append([h.x, h.y])
        if not vecs:
            raise ZeroIdealError("ideal needs a nonzero generator")
        rows = intlin.hnf_rows_lower(vecs)
        return cls(ctx, tuple(tuple(r) for r in rows))

    @classmethod
    def from_hnf(cls, ctx, rows):
        """Builds from raw basis rows, recanonicalizing and checking the
        lattice is an O-ideal (stable under multiplication by sqrt(d))."""
        canon = intlin.hnf_rows_lower([list(r) for r in rows])
        if len(canon) != 2:
            raise ZeroIdealError("ideal lattice must have rank 2")
        ideal = cls(ctx, tuple(tuple(r) for r in canon))
        for r in canon:
            elt = ctx(r[0], r[1]) * ctx.sqrt_d
            if not ideal.contains(elt):
                raise ValueError("lattice is not an ideal: not sqrt(d)-stable")
        return ideal

    @classmethod
    def unit_ideal(cls, ctx):
        return cls.from_generators(ctx, [ctx.one])

    @classmethod
    def principal(cls, g):
        return cls.from_generators(g.ctx, [g])

    def __mul__(self, other):
        """Pairwise products of basis vectors span the product ideal."""
        if isinstance(other, RingElement):
            return Ideal.from_generators(self.ctx, [g * other for g in self.two_generators()])
        prods = []
        for ra in self.rows:
            ea = self.ctx(*ra)
            for rb in other.rows:
                prods.append(ea * self.ctx(*rb))
        return Ideal.from_generators(self.ctx, prods)

    def contains(self, elt):
        (a, _), (b, c) = self.rows
        if elt.y % c:
            return False
        beta = elt.y // c
        return (elt.x - beta * b) % a == 0

    def contains_fraction(self, x, denominator):
        """Membership of x in denominator^-1 * (this ideal): tests that
        denominator * x is in O and lies in the lattice."""
        if denominator.is_zero():
            raise ZeroDivisionError("denominator must be nonzero")
        scaled = denominator.to_field() * x
        if not scaled.is_integral():
            return False
        return self.contains(scaled.to_ring())

    def norm(self):
        """Index [O : a] = |det| of the HNF basis."""
        return abs(self.rows[0][0] * self.rows[1][1])

    def two_generators(self):
        """The HNF rows as ring elements; they always generate."""
        return (self.ctx(*self.rows[0]), self.ctx(*self.rows[1]))

    def basis_coords(self, elt):
        """Integer coordinates of a member over the HNF basis."""
        (a, _), (b, c) = self.rows
        if elt.y % c:
            raise ValueError(f"{elt} not in ideal")
        beta = elt.y // c
        rest = elt.x - beta * b
        if rest % a:
            raise ValueError(f"{elt} not in ideal")
        return (rest // a, beta)

    def element(self, alpha, beta):
        g1, g2 = self.two_generators()
        return g1 * alpha + g2 * beta

    def is_principal(self):
        """A generator with (g) = a, or None.

        Enumerates x + y*sqrt(d) of norm equal to the ideal norm; finite for
        d < 0, no probabilistic shortcuts.
        """
        d = self.ctx.d
        if d > 0:
            raise UnsupportedRingError("principality search needs d < 0")
        n = self.norm()
        for y in range(0, math.isqrt(n // -d) + 1):
            rem = n + d * y * y
            if rem < 0:
                break
            x = math.isqrt(rem)
            if x * x != rem:
                continue
            for cand in ((x, y), (x, -y)) if y else ((x, 0),):
                g = self.ctx(*cand)
                if g.is_zero():
                    continue
                if Ideal.principal(g) == self:
                    return g
        return None

    def lattice_points(self, bound):
        """Members with max |coordinate| <= bound, in deterministic order of
        increasing box size; excludes zero."""
        for m in range(bound + 1):
            for x in range(-m, m + 1):
                for y in range(-m, m + 1):
                    if max(abs(x), abs(y)) != m or (x == 0 and y == 0):
                        continue
                    e = self.ctx(x, y)
                    if self.contains(e):
                        yield e

    def __str__(self):
        g1, g2 = self.two_generators()
        return f"({g1}, {g2})"

    def to_json(self):
        return {"hnf": [[str(e) for e in row] for row in self.rows]}

    @classmethod
    def from_json(cls, ctx, obj):
        rows = [[int(e) for e in row] for row in obj["hnf"]]
        return cls.from_hnf(ctx, rows)


@dataclass(frozen=True)
class ClassOrderTwoCertificate:
    """Witness that mu is non-principal while mu^2 = (z)."""

    mu: Ideal
    z: RingElement
    witness_nonprincipal: int  # norm bound exhausted by the generator search

    def to_json(self):
        return {
            "mu": self.mu.to_json(),
            "z": self.z.to_json(),
            "witness_nonprincipal": self.witness_nonprincipal,
        }


def ideal_from_generators(ctx, gens):
    return Ideal.from_generators(ctx, gens)


def ideal_product(a, b):
    return a * b


def ideal_norm(a):
    return a.norm()


def contains(a, x, denominator=None):
    if denominator is None:
        return a.contains(x)
    return a.contains_fraction(x, denominator)


def is_principal(a):
    return a.is_principal()


def two_generators(a):
    return a.two_generators()


def certify_order_two(mu):
    """Certificate that mu has order exactly two: mu non-principal and
    mu*mu principal with generator z."""
    if mu.is_principal() is not None:
        raise NotOrderTwoError(f"{mu} is principal")
    square = mu * mu
    z = square.is_principal()
    if z is None:
        raise NotOrderTwoError(f"{mu} squared is not principal")
    return ClassOrderTwoCertificate(mu, z, mu.norm())


def solve_partition_of_z(mu, z, bound=64):
    """Elements u = (g1, g2) generating mu and u' in mu with
    g1*u1' + g2*u2' = z.

    Searches mu lattice points for u1' in increasing box order and solves
    for u2' by exact division; existence is guaranteed by mu*mu = (z) but
    only found within the configured bound.
    """
    if not (mu * mu == Ideal.principal(z)):
        raise ValueError("need mu * mu = (z)")
    g1, g2 = mu.two_generators()
    candidates = [mu.ctx.zero]
    for u1p in candidates + list(mu.lattice_points(bound)):
        rhs = z - g1 * u1p
        try:
            u2p = rhs.exact_div(g2)
        except (ArithmeticError, ZeroDivisionError):
            continue
        if mu.contains(u2p) and mu.contains(u1p):
            return ([g1, g2], [u1p, u2p])
    raise SearchExhaustedError(f"no partition of z within coordinate bound {bound}")
