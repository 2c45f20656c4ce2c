"""Weighted affine hyperplane arrangements and their intersection lattices.

An arrangement is a list of pairwise non-proportional degree-one forms
f_i on an M-dimensional affine space together with scalar weights a_i.
Edges are the nonempty intersections of hyperplanes; they are graded by
codimension and ordered by inclusion.  Edges are identified by the
reduced row echelon form of their defining linear system, which makes
equality and ordering canonical.

The one-form eta = sum_i a_i dlog f_i plays the role of the twisting
differential throughout the package.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import linalg
from .errors import MissingColoring
from .exactfield import RatFuncKappa, format_rational, parse_rational


@dataclass(frozen=True)
class AffineForm:
    """A degree-one form  constant + sum_b gradient[b] * t_b  with exact coefficients."""

    constant: Fraction
    gradient: tuple

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "gradient", tuple(Fraction(g) for g in self.gradient))
        if all(g == 0 for g in self.gradient):
            raise ValueError("affine form must have a nonzero gradient")

    def evaluate(self, point):
        acc = self.constant
        for g, x in zip(self.gradient, point):
            acc += g * x
        return acc

    def proportional_to(self, other):
        """True when the two forms cut out the same hyperplane."""
        ratio = None
        for a, b in zip((self.constant, *self.gradient), (other.constant, *other.gradient)):
            if (a == 0) != (b == 0):
                return False
            if b != 0:
                r = a / b
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
        return True


class WeightedArrangement:
    """Forms plus weights, with an optional coloring of the coordinates.

    The coloring labels each of the M coordinates; it is only consulted
    by the symmetry-group machinery.  Weights may be Fractions or
    RatFuncKappa scalars (symbolic mode).
    """

    def __init__(self, dimension, forms, weights, coloring=None):
        self.dimension = int(dimension)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.forms = tuple(forms)
        self.weights = tuple(weights)
        self.coloring = tuple(coloring) if coloring is not None else None
        if len(self.forms) != len(self.weights):
            raise ValueError("need exactly one weight per form")
        for f in self.forms:
            if len(f.gradient) != self.dimension:
                raise ValueError("form gradient length does not match the dimension")
        for i in range(len(self.forms)):
            for j in range(i + 1, len(self.forms)):
                if self.forms[i].proportional_to(self.forms[j]):
                    raise ValueError(f"forms {i} and {j} cut out the same hyperplane")
        if self.coloring is not None and len(self.coloring) != self.dimension:
            raise ValueError("coloring must label every coordinate")

    @property
    def size(self):
        return len(self.forms)

    def __repr__(self):
        return (
            f"WeightedArrangement(dimension={self.dimension}, "
            f"size={self.size}, colored={self.coloring is not None})"
        )


@dataclass(frozen=True)
class Edge:
    """A nonempty intersection of hyperplanes.

    key is the row-reduced echelon form of the defining system [A | b],
    a tuple of row tuples; two edges are equal iff their keys are equal.
    defining is the saturated set of all hyperplane indices containing
    the edge.
    """

    codim: int
    key: tuple
    basis_point: tuple
    directions: tuple
    defining: frozenset


def _system_rref(rows):
    """RREF of an augmented system; None when inconsistent."""
    if not rows:
        return ()
    red, pivots = linalg.rref(rows)
    ncols = len(rows[0])
    if pivots and pivots[-1] == ncols - 1:
        return None
    return tuple(tuple(row) for row in red)


def _edge_from_key(dimension, key, arr=None):
    pivots = []
    for row in key:
        for c in range(dimension):
            if row[c] != 0:
                pivots.append(c)
                break
    point = [Fraction(0)] * dimension
    for row, pc in zip(key, pivots):
        point[pc] = row[dimension]
    grad_rows = [row[:dimension] for row in key]
    dirs = tuple(tuple(v) for v in linalg.nullspace(grad_rows, dimension))
    defining = frozenset()
    if arr is not None:
        defining = frozenset(
            i for i, f in enumerate(arr.forms) if _form_contains(f, point, dirs)
        )
    return Edge(
        codim=len(key),
        key=key,
        basis_point=tuple(point),
        directions=dirs,
        defining=defining,
    )


def _form_contains(form, point, directions):
    if form.evaluate(point) != 0:
        return False
    return all(
        sum(g * d for g, d in zip(form.gradient, direction)) == 0
        for direction in directions
    )


def _augmented_row(form):
    return [*form.gradient, -form.constant]


class IntersectionLattice:
    """All edges of an arrangement, graded by codimension.

    Built level by level: codim-(p+1) edges are the proper intersections
    of codim-p edges with single hyperplanes, deduplicated by canonical
    key.  Edge containment is decided through saturated defining sets:
    X is contained in Y iff defining(Y) is a subset of defining(X).
    """

    def __init__(self, arrangement):
        self.arrangement = arrangement
        M = arrangement.dimension
        ambient = _edge_from_key(M, (), arrangement)
        levels = [[ambient]]
        for p in range(1, M + 1):
            seen = {}
            for edge in levels[p - 1]:
                base_rows = [list(r) for r in edge.key]
                for i in range(arrangement.size):
                    if i in edge.defining:
                        continue
                    key = _system_rref(base_rows + [_augmented_row(arrangement.forms[i])])
                    if key is None or len(key) != p:
                        continue
                    if key not in seen:
                        seen[key] = _edge_from_key(M, key, arrangement)
            levels.append(sorted(seen.values(), key=lambda e: e.key))
        self.edges = tuple(e for level in levels for e in level)
        self._index = {e.key: i for i, e in enumerate(self.edges)}
        self._by_codim = {}
        for i, e in enumerate(self.edges):
            self._by_codim.setdefault(e.codim, []).append(i)

    def by_codim(self, p):
        return tuple(self._by_codim.get(p, ()))

    def index_of(self, key):
        return self._index[key]

    def contains(self, outer, inner):
        """True when edges[outer] contains edges[inner] (weak containment)."""
        a, b = self.edges[outer], self.edges[inner]
        return a.defining <= b.defining and a.codim <= b.codim

    def mobius(self):
        """Mobius function mu(ambient, X) for every edge, by recursion on codim."""
        if getattr(self, "_mobius", None) is not None:
            return self._mobius
        mu = {}
        for idx in sorted(range(len(self.edges)), key=lambda i: self.edges[i].codim):
            if self.edges[idx].codim == 0:
                mu[idx] = 1
                continue
            total = 0
            for jdx, val in mu.items():
                if jdx != idx and self.contains(jdx, idx):
                    total += val
            mu[idx] = -total
        self._mobius = mu
        return mu


def intersection_lattice(arrangement):
    return IntersectionLattice(arrangement)


def os_dimension(lattice, p):
    """Dimension of the degree-p logarithmic subalgebra, as a Mobius sum.

    Equals sum over codim-p edges X of |mu(ambient, X)|; serves as the
    combinatorial cross-check for the rank of the flag pairing matrix.
    """
    mu = lattice.mobius()
    return sum(abs(mu[idx]) for idx in lattice.by_codim(p))


def is_general_position(arrangement, indices):
    """True iff the indexed hyperplanes meet in codimension exactly len(indices)."""
    indices = list(indices)
    if len(indices) > arrangement.dimension:
        return False
    rows = [_augmented_row(arrangement.forms[i]) for i in indices]
    key = _system_rref(rows)
    return key is not None and len(key) == len(indices)


@dataclass(frozen=True)
class GroupElement:
    """A coordinate permutation with its sign and induced form permutation.

    perm maps coordinate b to perm[b]; form_perm[i] is the index of the
    arrangement form proportional to the permuted form i.
    """

    perm: tuple
    sign: int
    form_perm: tuple


def perm_sign(perm):
    """Sign of a permutation given as a tuple of images."""
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def permute_form(form, perm):
    grad = [Fraction(0)] * len(perm)
    for b, g in enumerate(form.gradient):
        grad[perm[b]] = g
    return AffineForm(form.constant, tuple(grad))


def _induced_form_perm(arrangement, perm):
    out = []
    for i, f in enumerate(arrangement.forms):
        moved = permute_form(f, perm)
        target = None
        for j, g in enumerate(arrangement.forms):
            if moved.proportional_to(g):
                target = j
                break
        if target is None:
            raise ValueError(f"coordinate permutation {perm} does not preserve form {i}")
        out.append(target)
    return tuple(out)


def color_group(arrangement):
    """All coordinate permutations preserving the coloring, with induced data.

    Elements are sorted by their permutation tuple, so the identity comes
    first.  Raises MissingColoring when the arrangement has no coloring.
    """
    if arrangement.coloring is None:
        raise MissingColoring("color_group needs an arrangement with a coloring")
    M = arrangement.dimension
    colors = arrangement.coloring
    elements = []
    for perm in permutations(range(M)):
        if all(colors[perm[b]] == colors[b] for b in range(M)):
            elements.append(
                GroupElement(
                    perm=perm,
                    sign=perm_sign(perm),
                    form_perm=_induced_form_perm(arrangement, perm),
                )
            )
    elements.sort(key=lambda g: g.perm)
    return tuple(elements)


# ---------------------------------------------------------------------------
# serialization for the CLI


def _weight_to_json(w):
    if isinstance(w, RatFuncKappa):
        return w.to_json()
    return format_rational(w)


def _weight_from_json(data):
    if isinstance(data, dict):
        return RatFuncKappa.from_json(data)
    return parse_rational(data)


def arrangement_to_json(arr):
    return {
        "dimension": arr.dimension,
        "forms": [
            {
                "constant": format_rational(f.constant),
                "gradient": [format_rational(g) for g in f.gradient],
            }
            for f in arr.forms
        ],
        "weights": [_weight_to_json(w) for w in arr.weights],
        "coloring": list(arr.coloring) if arr.coloring is not None else None,
    }


def arrangement_from_json(data):
    forms = [
        AffineForm(
            parse_rational(f["constant"]),
            tuple(parse_rational(g) for g in f["gradient"]),
        )
        for f in data["forms"]
    ]
    return WeightedArrangement(
        dimension=data["dimension"],
        forms=forms,
        weights=[_weight_from_json(w) for w in data["weights"]],
        coloring=data.get("coloring"),
    )
