"""Finitely generated O-modules as Z-lattices with a sqrt(d)-action.

A module of Z-rank n is an integer n x n matrix J with J^2 = d*I; morphisms
are integer matrices commuting with the actions.  Tensor products over O are
computed as quotients of tensor products over Z by the single relation
(sqrt(d) . ) (x) id - id (x) (sqrt(d) . ), via Smith normal form; quotient
coordinates come with an exact projection/section pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intlin
from .intlin import (
    IntSolver,
    hnf_rows,
    identity,
    kernel_basis,
    kron,
    mat_mul,
    mat_scale,
    mat_vec,
    smith_normal_form,
    snf_diagonal,
    transpose,
)


class TorsionInTensorError(RuntimeError):
    """Tensor-over-O quotient had torsion; impossible for projective inputs."""


class DirectSumFailureError(RuntimeError):
    """ker(m) failed to split as predicted; internal invariant breach."""


@dataclass
class OModule:
    d: int
    rank: int
    action: list
    label: str = ""

    def __post_init__(self):
        if self.rank:
            sq = mat_mul(self.action, self.action)
            if sq != mat_scale(identity(self.rank), self.d):
                raise ValueError("action matrix does not square to d * identity")

    def scalar_matrix(self, o):
        """Matrix of multiplication by o = x + y sqrt(d) in O."""
        out = mat_scale(identity(self.rank), o.x)
        if o.y:
            out = intlin.mat_add(out, mat_scale(self.action, o.y))
        return out

    def direct_sum(self, other, label=""):
        n = self.rank + other.rank
        act = [[0] * n for _ in range(n)]
        for i in range(self.rank):
            for j in range(self.rank):
                act[i][j] = self.action[i][j]
        for i in range(other.rank):
            for j in range(other.rank):
                act[self.rank + i][self.rank + j] = other.action[i][j]
        return OModule(self.d, n, act, label=label)


@dataclass
class OMorphism:
    source: OModule
    target: OModule
    matrix: list

    def is_equivariant(self):
        return mat_mul(self.matrix, self.source.action) == mat_mul(
            self.target.action, self.matrix
        )

    def compose(self, other):
        """self o other."""
        return OMorphism(other.source, self.target, mat_mul(self.matrix, other.matrix))


def snf(matrix, ncols=None):
    """Smith normal form: (invariant factors, (U, V)) with U A V diagonal."""
    diag, u, v, _ = smith_normal_form(matrix, ncols)
    return [e for e in diag if e], (u, v)


def iso_as_abelian_groups(a, b):
    """Compare (free rank, torsion invariants) pairs; OModules count as
    torsion-free lattices."""
    def normalize(x):
        if isinstance(x, OModule):
            return x.rank, []
        r, t = x
        return r, list(t)

    return normalize(a) == normalize(b)


def homology_pair(d_in, d_out, rank_mid):
    """ker(d_out)/im(d_in) for integer matrices d_out: mid -> next and
    d_in: prev -> mid; returns (free rank, torsion invariants)."""
    if d_out is None:
        ker = identity(rank_mid)
    else:
        ker = kernel_basis(d_out, ncols=rank_mid)
    k = len(ker)
    if k == 0:
        return 0, []
    if d_in is None or not d_in or all(not any(row) for row in d_in):
        return k, []
    solver = IntSolver(transpose(ker), ncols=k)
    cols = []
    ncols_in = len(d_in[0])
    for j in range(ncols_in):
        col = [d_in[i][j] for i in range(rank_mid)]
        sol = solver.solve(col)
        if sol is None:
            raise RuntimeError("image does not lie in the kernel; d^2 != 0?")
        cols.append(sol)
    w = transpose(cols, ncols=k) if cols else []
    diag = snf_diagonal(w, ncols=len(cols)) if w else []
    nonzero = [e for e in diag if e]
    torsion = [e for e in nonzero if e != 1]
    return k - len(nonzero), torsion


@dataclass
class TensorProduct:
    module: OModule
    proj: list      # Z-tensor coords -> quotient coords
    section: list   # quotient coords -> Z-tensor coords (proj o section = id)


def tensor_over_O(m, n, label=""):
    """M (x)_O N as a quotient of M (x)_Z N by (J_M (x) I) - (I (x) J_N).

    For projective inputs the quotient is torsion-free of Z-rank
    rank(M) * rank(N) / 2; torsion raises TorsionInTensorError.
    """
    if m.d != n.d:
        raise ValueError("mixed ground rings")
    mn = m.rank * n.rank
    rel = intlin.mat_add(
        kron(m.action, identity(n.rank)),
        mat_scale(kron(identity(m.rank), n.action), -1),
    )
    diag, u, _, uinv = smith_normal_form(rel)
    r = sum(1 for e in diag if e)
    if any(e not in (0, 1) for e in diag):
        raise TorsionInTensorError(f"invariant factors {diag}")
    proj = [u[i] for i in range(r, mn)]
    section = [[uinv[i][j] for j in range(r, mn)] for i in range(mn)]
    jm_i = kron(m.action, identity(n.rank))
    action = mat_mul(mat_mul(proj, jm_i), section)
    module = OModule(m.d, mn - r, action, label=label)
    if mat_mul(proj, jm_i) != mat_mul(action, proj):
        raise RuntimeError("tensor action not well defined on the quotient")
    return TensorProduct(module, proj, section)


def kernel_module(f, label=""):
    """Saturated kernel lattice of an equivariant morphism, with inclusion."""
    rows = kernel_basis(f.matrix, ncols=f.source.rank)
    k = len(rows)
    incl = transpose(rows, ncols=f.source.rank) if rows else [[] for _ in range(f.source.rank)]
    if k == 0:
        return OModule(f.source.d, 0, [], label=label), incl
    solver = IntSolver(incl, ncols=k)
    cols = []
    for v in rows:
        jv = mat_vec(f.source.action, v)
        sol = solver.solve(jv)
        if sol is None:
            raise RuntimeError("kernel not stable under the action")
        cols.append(sol)
    action = transpose(cols, ncols=k)
    return OModule(f.source.d, k, action, label=label), incl


# ---------------------------------------------------------------------------
# The lattice bundle of a Frobenius algebra


def _outer(x, y):
    out = []
    for xi in x:
        for yj in y:
            out.append(xi * yj)
    return out


@dataclass
class KernelReport:
    kernel_basis: list
    xu_basis: list
    xhat: list
    direct_sum_verified: bool
    action_formulas_verified: bool
    generator: tuple | None   # (u, unit value) when found
    iso_to_A: bool
    search_bound: int
    notes: list = field(default_factory=list)

    def to_json(self):
        gen = None
        if self.generator is not None:
            u, val = self.generator
            gen = {"u": u.to_json(), "eq87": val.to_json()}
        return {
            "kernel_rank": len(self.kernel_basis),
            "kernel_basis": [[str(e) for e in row] for row in self.kernel_basis],
            "xu_basis": [[str(e) for e in row] for row in self.xu_basis],
            "xhat": [str(e) for e in self.xhat],
            "direct_sum_verified": self.direct_sum_verified,
            "action_formulas_verified": self.action_formulas_verified,
            "generator": gen,
            "iso_to_A": self.iso_to_A,
            "search_bound": self.search_bound,
            "notes": list(self.notes),
        }


class AlgebraLattice:
    """Z-lattice presentations of A and its tensor powers, with the
    structure maps as integer matrices on quotient coordinates."""

    def __init__(self, alg):
        self.alg = alg
        ctx = alg.ctx
        self.ctx = ctx
        self.mu = alg.mu
        g1, g2 = self.mu.two_generators()
        self.gens = (g1, g2)
        sd = ctx.sqrt_d
        c1 = self.mu.basis_coords(g1 * sd)
        c2 = self.mu.basis_coords(g2 * sd)
        action = [
            [0, ctx.d, 0, 0],
            [1, 0, 0, 0],
            [0, 0, c1[0], c2[0]],
            [0, 0, c1[1], c2[1]],
        ]
        self.A = OModule(ctx.d, 4, action, label="A")
        self._powers = {1: TensorProduct(self.A, identity(4), identity(4))}
        self._basis_elements = (
            alg.element(ctx.one, ctx.zero),
            alg.element(ctx.sqrt_d, ctx.zero),
            alg.element(ctx.zero, g1),
            alg.element(ctx.zero, g2),
        )
        self._m = None
        self._delta1_lift = None
        self._delta = None

    # -- coordinates ---------------------------------------------------------

    def coords(self, elt):
        a, b = self.mu.basis_coords(elt.u1)
        return [elt.u0.x, elt.u0.y, a, b]

    def element(self, vec):
        g1, g2 = self.gens
        return self.alg.element(self.ctx(vec[0], vec[1]), g1 * vec[2] + g2 * vec[3])

    def tensor_power(self, n):
        """A^(x n) with projection/section from the full Z-tensor power."""
        if n not in self._powers:
            prev = self.tensor_power(n - 1)
            step = tensor_over_O(prev.module, self.A, label=f"A^(x{n})")
            proj = mat_mul(step.proj, kron(prev.proj, identity(4)))
            section = mat_mul(kron(prev.section, identity(4)), step.section)
            self._powers[n] = TensorProduct(step.module, proj, section)
        return self._powers[n]

    def pure2(self, x, y):
        t2 = self.tensor_power(2)
        return mat_vec(t2.proj, _outer(self.coords(x), self.coords(y)))

    def left_mult_matrix(self, x):
        """Left multiplication by x on A; columns are coords(x * e_i)."""
        cols = [self.coords(self.alg.multiply(x, e)) for e in self._basis_elements]
        return transpose(cols, ncols=4)

    def on_quotient_first_factor(self, l_matrix):
        """Descends L (x) id to A (x)_O A quotient coordinates."""
        t2 = self.tensor_power(2)
        raw = kron(l_matrix, identity(4))
        out = mat_mul(mat_mul(t2.proj, raw), t2.section)
        if mat_mul(out, t2.proj) != mat_mul(t2.proj, raw):
            raise RuntimeError("first-factor action not well defined on the quotient")
        return out

    # -- structure maps ------------------------------------------------------

    def m_matrix(self):
        """Multiplication A (x)_O A -> A on quotient coordinates."""
        if self._m is None:
            cols = []
            for ei in self._basis_elements:
                for ej in self._basis_elements:
                    cols.append(self.coords(self.alg.multiply(ei, ej)))
            m_z = transpose(cols, ncols=16)
            t2 = self.tensor_power(2)
            m_quot = mat_mul(m_z, t2.section)
            if mat_mul(m_quot, t2.proj) != m_z:
                raise RuntimeError("multiplication not constant on quotient fibers")
            self._m = m_quot
        return self._m

    def delta_one_lift(self):
        """Integral lift of Delta(1) to the Z-tensor square:
        c 1(x)1 + 1(x)dX + dX(x)1 + d' sum_j u_j X (x) u_j' X."""
        if self._delta1_lift is None:
            alg = self.alg
            duals = alg.duals
            one = alg.one
            c_elt = alg.element(duals.c, self.ctx.zero)
            d_elt = alg.element(self.ctx.zero, duals.d)
            us, ups = alg.partition
            lift = _outer(self.coords(c_elt), self.coords(one))
            lift = [a + b for a, b in zip(lift, _outer(self.coords(one), self.coords(d_elt)))]
            lift = [a + b for a, b in zip(lift, _outer(self.coords(d_elt), self.coords(one)))]
            for uj, ujp in zip(us, ups):
                left = alg.element(self.ctx.zero, duals.d_prime * uj)
                right = alg.element(self.ctx.zero, ujp)
                lift = [a + b for a, b in zip(lift, _outer(self.coords(left), self.coords(right)))]
            self._delta1_lift = lift
        return self._delta1_lift

    def delta_one(self):
        t2 = self.tensor_power(2)
        return TensorElement(t2, mat_vec(t2.proj, self.delta_one_lift()))

    def comultiply(self, x):
        """Delta(x) = (left-mult by x (x) id) applied to Delta(1)."""
        t2 = self.tensor_power(2)
        raw = mat_vec(kron(self.left_mult_matrix(x), identity(4)), self.delta_one_lift())
        return TensorElement(t2, mat_vec(t2.proj, raw))

    def delta_matrix(self):
        if self._delta is None:
            cols = [self.comultiply(e).coords for e in self._basis_elements]
            self._delta = transpose(cols, ncols=8)
        return self._delta

    def handle_matrix(self):
        return mat_mul(self.m_matrix(), self.delta_matrix())

    def tensor_from_k_basis(self, coeffs):
        """Element of A (x)_O A from K-coefficients over
        (1(x)1, 1(x)X, X(x)1, X(x)X); must be integral."""
        from .ring import NotDivisibleError

        alpha, beta, gamma, delta = coeffs
        zf = self.alg.data.z.to_field()
        if not alpha.is_integral():
            raise NotDivisibleError(f"1(x)1 coefficient {alpha} not integral")
        for name, val in (("1(x)X", beta), ("X(x)1", gamma)):
            if not self.mu.contains_fraction(val, self.ctx.one):
                raise NotDivisibleError(f"{name} coefficient {val} not in mu")
        dprime = delta / zf
        if not dprime.is_integral():
            raise NotDivisibleError(f"X(x)X coefficient {delta} not in z*O")
        alg = self.alg
        one = alg.one
        a_elt = alg.element(alpha.to_ring(), self.ctx.zero)
        b_elt = alg.element(self.ctx.zero, beta.to_ring())
        c_elt = alg.element(self.ctx.zero, gamma.to_ring())
        lift = _outer(self.coords(a_elt), self.coords(one))
        lift = [x + y for x, y in zip(lift, _outer(self.coords(one), self.coords(b_elt)))]
        lift = [x + y for x, y in zip(lift, _outer(self.coords(c_elt), self.coords(one)))]
        dp = dprime.to_ring()
        us, ups = alg.partition
        for uj, ujp in zip(us, ups):
            left = alg.element(self.ctx.zero, dp * uj)
            right = alg.element(self.ctx.zero, ujp)
            lift = [x + y for x, y in zip(lift, _outer(self.coords(left), self.coords(right)))]
        t2 = self.tensor_power(2)
        return TensorElement(t2, mat_vec(t2.proj, lift))

    # -- kernel of multiplication -------------------------------------------

    def x_u(self, u):
        """X_u = uX (x) 1 - 1 (x) uX."""
        ux = self.alg.element(self.ctx.zero, u)
        one = self.alg.one
        return [a - b for a, b in zip(self.pure2(ux, one), self.pure2(one, ux))]

    def x_hat(self):
        """sum_j u_j X (x) u_j' X - (a_bar X (x) 1 + b_bar 1 (x) 1)."""
        alg = self.alg
        us, ups = alg.partition
        out = [0] * self.tensor_power(2).module.rank
        for uj, ujp in zip(us, ups):
            l = alg.element(self.ctx.zero, uj)
            r = alg.element(self.ctx.zero, ujp)
            out = [a + b for a, b in zip(out, self.pure2(l, r))]
        ax = alg.element(self.ctx.zero, alg.data.a_bar)
        b1 = alg.element(alg.data.b_bar, self.ctx.zero)
        one = alg.one
        out = [a - b for a, b in zip(out, self.pure2(ax, one))]
        out = [a - b for a, b in zip(out, self.pure2(b1, one))]
        return out

    def kernel_m_analysis(self, search_bound=8):
        alg = self.alg
        t2 = self.tensor_power(2)
        j2 = t2.module.action
        m = OMorphism(t2.module, self.A, self.m_matrix())
        ker_mod, incl = kernel_module(m, label="ker(m)")
        ker_rows = transpose(incl, ncols=ker_mod.rank)
        if ker_mod.rank != 4:
            raise DirectSumFailureError(f"ker(m) has Z-rank {ker_mod.rank}, expected 4")

        g1, g2 = self.gens
        xg1, xg2 = self.x_u(g1), self.x_u(g2)
        xhat = self.x_hat()
        jxhat = mat_vec(j2, xhat)
        span = hnf_rows([xg1, xg2, xhat, jxhat])
        direct_sum = (
            len(span) == 4
            and span == hnf_rows(ker_rows)
            and len(hnf_rows([xg1, xg2])) == 2
            and len(hnf_rows([xhat, jxhat])) == 2
        )
        if not direct_sum:
            raise DirectSumFailureError("ker(m) != X_mu + O*Xhat as lattices")

        # the two multiplication-action identities on ker(m)
        z = alg.data.z
        a_bar, b_bar = alg.data.a_bar, alg.data.b_bar
        formulas_ok = True
        lmats = {}
        for u in (g1, g2):
            ux = alg.element(self.ctx.zero, u)
            lmats[u] = self.on_quotient_first_factor(self.left_mult_matrix(ux))
        for u in (g1, g2):
            lhs = mat_vec(lmats[u], xhat)
            coeff = (u * a_bar).exact_div(z)
            scal = t2.module.scalar_matrix(coeff)
            neg_xbu = [-e for e in self.x_u(b_bar * u)]
            rhs = [a + b for a, b in zip(neg_xbu, mat_vec(scal, xhat))]
            formulas_ok = formulas_ok and lhs == rhs
            for up in (g1, g2):
                lhs2 = mat_vec(lmats[u], self.x_u(up))
                coeff2 = (u * up).exact_div(z)
                scal2 = t2.module.scalar_matrix(coeff2)
                rhs2 = mat_vec(scal2, [-e for e in xhat])
                formulas_ok = formulas_ok and lhs2 == rhs2

        generator = None
        iso = False
        notes = []
        for u in [self.ctx.zero] + list(self.mu.lattice_points(search_bound)):
            val = -b_bar + (u * (a_bar + u)).exact_div(z)
            if not val.is_unit():
                continue
            xtilde = [a - b for a, b in zip(xhat, self.x_u(u))]
            orbit = [
                xtilde,
                mat_vec(j2, xtilde),
                mat_vec(lmats[g1], xtilde),
                mat_vec(lmats[g2], xtilde),
            ]
            if hnf_rows(orbit) == hnf_rows(ker_rows):
                generator = (u, val)
                iso = True
                break
            notes.append(f"unit value at u={u} but orbit is a proper sublattice")
        if generator is None:
            notes.append(f"no generator found within coordinate bound {search_bound}")

        return KernelReport(
            kernel_basis=ker_rows,
            xu_basis=[xg1, xg2],
            xhat=xhat,
            direct_sum_verified=direct_sum,
            action_formulas_verified=formulas_ok,
            generator=generator,
            iso_to_A=iso,
            search_bound=search_bound,
            notes=notes,
        )


class TensorElement:
    """Element of a tensor-over-O lattice, held as quotient coordinates."""

    __slots__ = ("space", "coords")

    def __init__(self, space, coords):
        self.space = space
        self.coords = tuple(coords)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return TensorElement(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return TensorElement(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __repr__(self):
        return f"TensorElement{self.coords}"


def module_of_algebra(alg):
    """The rank-4 lattice of A with the sqrt(d)-action."""
    return alg.lattice().A
