import random

import pytest

from quadfrob import Ideal, RingContext
from quadfrob.frobenius import FrobeniusData, build_algebra, example_zsqrtm5, family_eps_x_one, family_eps_x_zero
from quadfrob.intlin import mat_mul, transpose
from quadfrob.linkhom import _EdgeBuilder


@pytest.fixture(scope="session")
def ctx():
    return RingContext(-5)


@pytest.fixture(scope="session")
def mu(ctx):
    return Ideal.from_generators(ctx, [ctx(2), ctx(1, 1)])


@pytest.fixture(scope="session")
def alg_eps0(ctx, mu):
    return family_eps_x_zero(mu, ctx(2), ctx.zero, ctx.one, ctx.one)


@pytest.fixture(scope="session")
def alg_worked(ctx, mu):
    return example_zsqrtm5(1, 1)


@pytest.fixture(scope="session")
def alg_eps1(ctx, mu):
    return family_eps_x_one(mu, ctx(2), ctx(1, 1), ctx.one, ctx.one)


@pytest.fixture(scope="session")
def alg_sanity(ctx):
    unit_ideal = Ideal.from_generators(ctx, [ctx.one])
    data = FrobeniusData(ctx, unit_ideal, ctx.one, ctx.zero, ctx.one, ctx.one, ctx.zero)
    return build_algebra(data)


@pytest.fixture(scope="session")
def algebra_corpus(alg_eps0, alg_worked, alg_eps1, alg_sanity):
    return {
        "eps0_b1": alg_eps0,
        "worked": alg_worked,
        "eps_x_one": alg_eps1,
        "free_sanity": alg_sanity,
    }


def rng(seed=0):
    return random.Random(seed)


def random_ring_element(ctx, r, bound=9):
    return ctx(r.randint(-bound, bound), r.randint(-bound, bound))


def random_mu_element(mu, r, bound=5):
    g1, g2 = mu.two_generators()
    return g1 * r.randint(-bound, bound) + g2 * r.randint(-bound, bound)


def random_algebra_element(alg, r, bound=5):
    return alg.element(
        random_ring_element(alg.ctx, r, bound),
        random_mu_element(alg.mu, r, bound),
    )


# -- lattice test helpers ----------------------------------------------------


def counit_first_matrix(alg):
    """(trace (x) id): A (x) A -> A on quotient coordinates."""
    lat = alg.lattice()
    cols = []
    for ei in lat._basis_elements:
        s = alg.trace(ei)
        for ej in lat._basis_elements:
            cols.append(lat.coords(ej.scale(s)))
    raw = transpose(cols, ncols=16)
    t2 = lat.tensor_power(2)
    out = mat_mul(raw, t2.section)
    assert mat_mul(out, t2.proj) == raw
    return out


def counit_second_matrix(alg):
    """(id (x) trace): A (x) A -> A on quotient coordinates."""
    lat = alg.lattice()
    cols = []
    for ei in lat._basis_elements:
        for ej in lat._basis_elements:
            s = alg.trace(ej)
            cols.append(lat.coords(ei.scale(s)))
    raw = transpose(cols, ncols=16)
    t2 = lat.tensor_power(2)
    out = mat_mul(raw, t2.section)
    assert mat_mul(out, t2.proj) == raw
    return out


def id_tensor_delta(alg):
    """(id (x) Delta): A(x)A -> A(x)A(x)A as a quotient matrix."""
    return _EdgeBuilder(alg).edge_matrix("split", 2, [1], [0, 1, 2])


def delta_tensor_id(alg):
    """(Delta (x) id): A(x)A -> A(x)A(x)A; the untouched factor lands last."""
    return _EdgeBuilder(alg).edge_matrix("split", 2, [0], [2, 0, 1])


def m_tensor_id(alg):
    """(m (x) id): A(x)A(x)A -> A(x)A, merging the first two factors."""
    return _EdgeBuilder(alg).edge_matrix("merge", 3, [0, 1], [1, 0])


def id_tensor_m(alg):
    """(id (x) m): A(x)A(x)A -> A(x)A, merging the last two factors."""
    return _EdgeBuilder(alg).edge_matrix("merge", 3, [1, 2], [0, 1])


def swap_matrix(alg):
    """The factor swap on A (x)_O A quotient coordinates."""
    lat = alg.lattice()
    t2 = lat.tensor_power(2)
    from quadfrob.intlin import perm_matrix

    raw = perm_matrix(2, 4, [1, 0])
    out = mat_mul(mat_mul(t2.proj, raw), t2.section)
    assert mat_mul(out, t2.proj) == mat_mul(t2.proj, raw)
    return out
