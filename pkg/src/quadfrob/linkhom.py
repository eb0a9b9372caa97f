"""Cube-of-resolutions chain complexes for planar link diagrams.

PD convention: a crossing is a 4-tuple of arc labels read counterclockwise
from the incoming under-strand; the over-strand joins slots 2 and 4, running
slot 4 -> slot 2 for a positive crossing and slot 2 -> slot 4 for a negative
one.  Signs are supplied explicitly.  The 0-resolution joins (slot1, slot2)
and (slot3, slot4) and the 1-resolution joins (slot1, slot4) and
(slot2, slot3) at every crossing; with these conventions the one-crossing
positive-kink diagram resolves to two circles at 0 and one at 1, so its
complex is 0 -> A(x)A --m--> A -> 0 in cohomological degrees 0, 1.

Homological degree is |v| - n_minus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intlin
from .intlin import (
    identity,
    kron,
    mat_mul,
    mat_vec,
    perm_matrix,
    rank_rat,
    transpose,
    zeros,
)
from .omodule import homology_pair


class MalformedPDError(ValueError):
    pass


class DifferentialSquareNonzeroError(RuntimeError):
    pass


@dataclass(frozen=True)
class PDCode:
    """Planar diagram: crossings with explicit signs; ``loops`` counts
    crossing-free circles (the 0-crossing unknot is loops=1)."""

    crossings: tuple
    signs: tuple
    loops: int = 0

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise MalformedPDError("need one sign per crossing")
        if any(s not in (1, -1) for s in self.signs):
            raise MalformedPDError("signs must be +1 or -1")
        if self.loops < 0 or (not self.crossings and self.loops < 1):
            raise MalformedPDError("a diagram needs at least one circle")
        counts = {}
        for cr in self.crossings:
            if len(cr) != 4:
                raise MalformedPDError(f"crossing {cr} is not a 4-tuple")
            for a in cr:
                counts[a] = counts.get(a, 0) + 1
        bad = [a for a, k in counts.items() if k != 2]
        if bad:
            raise MalformedPDError(f"arcs {bad} do not occur exactly twice")
        self._check_orientations(counts)

    def _check_orientations(self, counts):
        """Under-strand runs slot1 -> slot3; over-strand slot4 -> slot2 when
        positive, slot2 -> slot4 when negative.  Every arc must then have
        exactly one head and one tail."""
        heads = {}
        tails = {}
        for cr, s in zip(self.crossings, self.signs):
            a, b, c, d = cr
            over_in, over_out = (d, b) if s > 0 else (b, d)
            for arc in (a, over_in):
                if arc in heads:
                    raise MalformedPDError(f"arc {arc} flows into two crossings")
                heads[arc] = True
            for arc in (c, over_out):
                if arc in tails:
                    raise MalformedPDError(f"arc {arc} flows out of two crossings")
                tails[arc] = True
        if set(heads) != set(counts) or set(tails) != set(counts):
            raise MalformedPDError("orientations are inconsistent")

    @property
    def n_plus(self):
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self):
        return sum(1 for s in self.signs if s < 0)

    def components(self):
        """Number of link components: orbits of the arc successor map."""
        succ = {}
        for cr, s in zip(self.crossings, self.signs):
            a, b, c, d = cr
            succ[a] = c
            if s > 0:
                succ[d] = b
            else:
                succ[b] = d
        seen = set()
        comps = 0
        for start in succ:
            if start in seen:
                continue
            comps += 1
            cur = start
            while cur not in seen:
                seen.add(cur)
                cur = succ[cur]
        return comps + self.loops

    def to_json(self):
        return {
            "crossings": [list(c) for c in self.crossings],
            "signs": list(self.signs),
            "loops": self.loops,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            crossings=tuple(tuple(int(a) for a in c) for c in obj["crossings"]),
            signs=tuple(int(s) for s in obj["signs"]),
            loops=int(obj.get("loops", 0)),
        )


LOOP_ARC = "loop"


def _circles_at(pd, vertex):
    """Circles of the resolution ``vertex``: sorted tuples of frozensets of
    arcs, ordered by smallest arc label; loop circles come last."""
    arcs = sorted({a for cr in pd.crossings for a in cr})
    parent = {a: a for a in arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for cr, choice in zip(pd.crossings, vertex):
        a, b, c, d = cr
        if choice == 0:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    classes = {}
    for a in arcs:
        classes.setdefault(find(a), set()).add(a)
    circles = sorted((frozenset(v) for v in classes.values()), key=min)
    circles += [frozenset([(LOOP_ARC, i)]) for i in range(pd.loops)]
    return circles


@dataclass
class ResolutionCube:
    pd: PDCode
    circles: dict          # vertex -> list of circle frozensets
    edges: dict            # (vertex, crossing index) -> ("merge"/"split", data)

    def circle_count(self, vertex):
        return len(self.circles[vertex])


def _vertices(k):
    return [tuple((n >> i) & 1 for i in range(k)) for n in range(1 << k)]


def resolve(pd):
    """All 2^k resolutions with merge/split tags on the cube edges."""
    k = len(pd.crossings)
    circles = {v: _circles_at(pd, v) for v in _vertices(k)}
    edges = {}
    for v in _vertices(k):
        for j in range(k):
            if v[j]:
                continue
            w = tuple(1 if i == j else v[i] for i in range(k))
            cv, cw = circles[v], circles[w]
            touched = set(pd.crossings[j])
            src = [i for i, c in enumerate(cv) if c & touched]
            tgt = [i for i, c in enumerate(cw) if c & touched]
            if len(src) == 2 and len(tgt) == 1:
                edges[(v, j)] = ("merge", src, tgt)
            elif len(src) == 1 and len(tgt) == 2:
                edges[(v, j)] = ("split", src, tgt)
            else:
                raise MalformedPDError(
                    f"edge {v}->{w} changes circles {len(src)}->{len(tgt)}"
                )
    return ResolutionCube(pd, circles, edges)


@dataclass
class Complex:
    """Cochain complex of free Z-lattices; groups[i] has rank ranks[i] and
    differential diffs[i]: groups[i] -> groups[i+1]."""

    min_degree: int
    ranks: list
    diffs: list            # len(ranks) - 1 integer matrices
    actions: list = None   # sqrt(d)-action per degree, None once simplified
    notes: list = field(default_factory=list)

    def degrees(self):
        return range(self.min_degree, self.min_degree + len(self.ranks))

    def diff_from(self, i):
        idx = i - self.min_degree
        if 0 <= idx < len(self.diffs):
            return self.diffs[idx]
        return None

    def rank(self, i):
        idx = i - self.min_degree
        if 0 <= idx < len(self.ranks):
            return self.ranks[idx]
        return 0

    def total_rank(self):
        return sum(self.ranks)

    def check_d_squared(self):
        for i in range(len(self.diffs) - 1):
            a, b = self.diffs[i], self.diffs[i + 1]
            if a and b and not intlin.is_zero_matrix(mat_mul(b, a)):
                raise DifferentialSquareNonzeroError(f"d^2 != 0 at degree index {i}")


def _m_z_matrix(lat):
    cols = []
    for ei in lat._basis_elements:
        for ej in lat._basis_elements:
            cols.append(lat.coords(lat.alg.multiply(ei, ej)))
    return transpose(cols, ncols=16)


def _delta_z_matrix(lat):
    cols = []
    lift = lat.delta_one_lift()
    for e in lat._basis_elements:
        raw = mat_vec(kron(lat.left_mult_matrix(e), identity(4)), lift)
        cols.append(raw)
    return transpose(cols, ncols=4)


class _EdgeBuilder:
    """Builds cube edge maps on quotient coordinates of tensor powers."""

    def __init__(self, alg):
        self.lat = alg.lattice()
        self.m_z = _m_z_matrix(self.lat)
        self.delta_z = _delta_z_matrix(self.lat)

    def power(self, n):
        return self.lat.tensor_power(n)

    def edge_matrix(self, kind, n_src, src_pos, tgt_map):
        """Map A^(x n_src) -> A^(x n_tgt) on quotient coordinates.

        ``src_pos``: affected source factor positions; ``tgt_map``: for each
        factor of the intermediate order (untouched factors in source order,
        then the merged/split factors), its position in the target order.
        """
        others = [p for p in range(n_src) if p not in src_pos]
        pre = perm_matrix(n_src, 4, others + list(src_pos))
        if kind == "merge":
            op = kron(identity(4 ** (n_src - 2)), self.m_z) if n_src > 2 else self.m_z
            n_tgt = n_src - 1
        else:
            op = kron(identity(4 ** (n_src - 1)), self.delta_z) if n_src > 1 else self.delta_z
            n_tgt = n_src + 1
        post = perm_matrix(n_tgt, 4, _inverse_order(tgt_map))
        raw = mat_mul(post, mat_mul(op, pre))
        p_src = self.power(n_src)
        p_tgt = self.power(n_tgt)
        out = mat_mul(mat_mul(p_tgt.proj, raw), p_src.section)
        if mat_mul(out, p_src.proj) != mat_mul(p_tgt.proj, raw):
            raise RuntimeError("edge map not constant on quotient fibers")
        return out


def _inverse_order(tgt_map):
    """tgt_map[i] = target slot of intermediate factor i; returns the order
    argument for perm_matrix (source factor landing in each target slot)."""
    order = [0] * len(tgt_map)
    for i, t in enumerate(tgt_map):
        order[t] = i
    return order


def build_complex(pd, alg):
    """Chain groups (+) A^(x circles) per degree |v| - n_minus, with merge
    and split edge maps signed by (-1)^(number of 1s before the flipped
    coordinate); d^2 = 0 is verified."""
    if not alg.report.closure_in_mu:
        raise ValueError("link homology needs a multiplicatively closed algebra")
    cube = resolve(pd)
    k = len(pd.crossings)
    builder = _EdgeBuilder(alg)
    shift = pd.n_minus

    by_degree = {}
    for v in _vertices(k):
        deg = sum(v) - shift
        by_degree.setdefault(deg, []).append(v)
    degrees = sorted(by_degree)
    for vs in by_degree.values():
        vs.sort()

    offsets = {}
    ranks = []
    actions = []
    for deg in degrees:
        off = 0
        acts = []
        for v in by_degree[deg]:
            offsets[v] = off
            n = cube.circle_count(v)
            off += builder.power(n).module.rank
            acts.append(builder.power(n).module)
        ranks.append(off)
        act = acts[0] if len(acts) == 1 else _block_sum(acts)
        actions.append(act.action)

    diffs = []
    for idx, deg in enumerate(degrees[:-1]):
        d = zeros(ranks[idx + 1], ranks[idx])
        for v in by_degree[deg]:
            n_src = cube.circle_count(v)
            for j in range(k):
                if v[j]:
                    continue
                w = tuple(1 if i == j else v[i] for i in range(k))
                kind, src, tgt = cube.edges[(v, j)]
                tgt_map = _edge_target_map(cube, v, w, kind, src, tgt)
                block = builder.edge_matrix(kind, n_src, src, tgt_map)
                sign = -1 if sum(v[:j]) % 2 else 1
                _insert_block(d, block, offsets[w], offsets[v], sign)
        diffs.append(d)

    notes = []
    if pd.n_minus:
        notes.append(
            "negative crossings enter through the comultiplication edge,"
            " i.e. the kink complex 0 -> A -> A(x)A -> 0 mirrored from the"
            " positive one"
        )
    cx = Complex(
        min_degree=degrees[0] if degrees else 0,
        ranks=ranks,
        diffs=diffs,
        actions=actions,
        notes=notes,
    )
    cx.check_d_squared()
    for deg_idx, dmat in enumerate(diffs):
        if dmat and mat_mul(dmat, actions[deg_idx]) != mat_mul(actions[deg_idx + 1], dmat):
            raise RuntimeError("differential is not O-equivariant")
    return cx


def _block_sum(modules):
    out = modules[0]
    for m in modules[1:]:
        out = out.direct_sum(m)
    return out


def _edge_target_map(cube, v, w, kind, src, tgt):
    """Positions, in the target circle order, of the intermediate factors
    (untouched source circles in order, then the merged or the two split
    circles)."""
    cv, cw = cube.circles[v], cube.circles[w]
    others = [i for i in range(len(cv)) if i not in src]
    tgt_index = {c: i for i, c in enumerate(cw)}
    tgt_map = []
    for i in others:
        tgt_map.append(tgt_index[cv[i]])
    if kind == "merge":
        tgt_map.append(tgt[0])
    else:
        tgt_map.extend(sorted(tgt))
    return tgt_map


def _insert_block(d, block, row_off, col_off, sign):
    for i, row in enumerate(block):
        drow = d[row_off + i]
        for j, e in enumerate(row):
            if e:
                drow[col_off + j] = sign * e


# ---------------------------------------------------------------------------
# Homology


@dataclass
class HomologyReport:
    degrees: dict                     # degree -> {"z_rank", "torsion", "k_dim"}
    total_k_dim: int
    half_rank_consistent: bool = True  # every free Z-rank was even (k_dim = z_rank/2)
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "degrees": {
                str(i): {
                    "z_rank": v["z_rank"],
                    "torsion": [str(t) for t in v["torsion"]],
                    "k_dim": v["k_dim"],
                }
                for i, v in sorted(self.degrees.items())
            },
            "total_k_dim": self.total_k_dim,
            "half_rank_consistent": self.half_rank_consistent,
            "notes": list(self.notes),
        }


def homology_integral(cx):
    """Per-degree abelian-group homology via Smith normal form over Z."""
    out = {}
    total_k = 0
    half_ok = True
    for i in cx.degrees():
        rank_mid = cx.rank(i)
        if rank_mid == 0:
            continue
        d_out = cx.diff_from(i)
        d_in = cx.diff_from(i - 1)
        free, torsion = homology_pair(d_in, d_out, rank_mid)
        k_dim = free // 2
        half_ok = half_ok and free % 2 == 0
        total_k += k_dim
        if free or torsion:
            out[i] = {"z_rank": free, "torsion": torsion, "k_dim": k_dim}
    return HomologyReport(out, total_k, half_rank_consistent=half_ok, notes=list(cx.notes))


def homology_over_K(cx):
    """Per-degree dimensions over K by exact rational ranks of the
    differentials, cross-checked against half the free Z-rank."""
    if cx.actions is None:
        raise ValueError("needs the unsimplified, equivariant complex")
    rk = {}
    for i in cx.degrees():
        d = cx.diff_from(i)
        rk[i] = rank_rat(d) if d else 0
    dims = {}
    for i in cx.degrees():
        n = cx.rank(i)
        if n == 0:
            continue
        q_dim = n - rk.get(i, 0) - rk.get(i - 1, 0)
        if q_dim % 2:
            raise RuntimeError("odd rational dimension; action not even-dimensional?")
        if q_dim:
            dims[i] = q_dim // 2
    integral = homology_integral(cx)
    for i in set(dims) | set(integral.degrees):
        if dims.get(i, 0) != integral.degrees.get(i, {"k_dim": 0})["k_dim"]:
            raise RuntimeError("rational-rank route disagrees with Smith-form route")
    return dims


def simplify(cx):
    """Gaussian elimination of unit entries in the differentials; homotopy
    equivalence, so homology is unchanged while ranks shrink."""
    ranks = list(cx.ranks)
    diffs = [intlin.copy_matrix(d) for d in cx.diffs]
    changed = True
    while changed:
        changed = False
        for idx in range(len(diffs)):
            d = diffs[idx]
            pos = _find_unit(d)
            if pos is None:
                continue
            r, c = pos
            phi = d[r][c]
            # Gaussian elimination of the contractible summand at (r, c)
            new_d = []
            for i in range(len(d)):
                if i == r:
                    continue
                row = []
                for j in range(len(d[0])):
                    if j == c:
                        continue
                    row.append(d[i][j] - d[i][c] * phi * d[r][j])
                new_d.append(row)
            diffs[idx] = new_d
            if idx > 0:
                diffs[idx - 1] = [row for i, row in enumerate(diffs[idx - 1]) if i != c]
            if idx + 1 < len(diffs):
                diffs[idx + 1] = [
                    [e for j, e in enumerate(row) if j != r] for row in diffs[idx + 1]
                ]
            ranks[idx] -= 1
            ranks[idx + 1] -= 1
            changed = True
            break
    out = Complex(cx.min_degree, ranks, diffs, actions=None, notes=list(cx.notes))
    out.check_d_squared()
    return out


def _find_unit(d):
    for i, row in enumerate(d):
        for j, e in enumerate(row):
            if e in (1, -1):
                return i, j
    return None


# ---------------------------------------------------------------------------
# Experiments


@dataclass
class ComparisonReport:
    left: HomologyReport
    right: HomologyReport
    integral_equal: bool
    k_dims_equal: bool
    per_degree: dict
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "integral_equal": self.integral_equal,
            "k_dims_equal": self.k_dims_equal,
            "per_degree": {str(k): v for k, v in sorted(self.per_degree.items())},
            "notes": list(self.notes),
        }


def reidemeister_compare(pd1, pd2, alg):
    """Homology of two diagrams of the same link, degree by degree.  No
    invariance claim is made; the report only states equality or not."""
    cx1, cx2 = build_complex(pd1, alg), build_complex(pd2, alg)
    h1, h2 = homology_integral(cx1), homology_integral(cx2)
    k1, k2 = homology_over_K(cx1), homology_over_K(cx2)
    per = {}
    degrees = set(h1.degrees) | set(h2.degrees) | set(k1) | set(k2)
    int_equal = True
    k_equal = True
    empty = {"z_rank": 0, "torsion": [], "k_dim": 0}
    for i in sorted(degrees):
        a = h1.degrees.get(i, empty)
        b = h2.degrees.get(i, empty)
        same_int = a["z_rank"] == b["z_rank"] and a["torsion"] == b["torsion"]
        same_k = k1.get(i, 0) == k2.get(i, 0)
        int_equal = int_equal and same_int
        k_equal = k_equal and same_k
        per[i] = {
            "left": a,
            "right": b,
            "integral_equal": same_int,
            "k_equal": same_k,
        }
    return ComparisonReport(h1, h2, int_equal, k_equal, per)


def lee_check(pd, alg):
    """Total K-dimension against 2^(number of components); meaningful when
    the quadratic X-relation has distinct roots (nonzero discriminant)."""
    disc = alg.data.discriminant()
    cx = build_complex(pd, alg)
    dims = homology_over_K(cx)
    total = sum(dims.values())
    expected = 2 ** pd.components()
    return {
        "discriminant": str(disc),
        "discriminant_nonzero": not disc.is_zero(),
        "total_k_dim": total,
        "expected": expected,
        "matches": total == expected,
        "per_degree": {str(k): v for k, v in sorted(dims.items())},
    }
