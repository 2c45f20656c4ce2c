"""Pointwise exterior calculus with exact coefficients.

Differential forms built from dlog factors are rational in the point, so
identities between them can be certified by exact evaluation at random
integer points: a nonzero rational alternating form cannot vanish at
generic sample points, and equality at several independently drawn
points is decisive for fixed-degree rational identities.

The doubled space carries covectors dx_1..dx_M, dy_1..dy_M (indices
0..M-1 for the first copy, M..2M-1 for the second).  The kernel forms

    S^(b)(x, y)   = sum over b-subsets I of  prod_{i in I} a_i *
                    wedge_{i in I} dlog f_i(x) ^ dlog f_i(y)
    S_{q_1..q_w}  = S^(M - w) ^ wedge_j dlog (F_{q_j}(x) - F_{q_j}(y))

satisfy the boundary identity

    sum_{j=1}^k (-1)^(j+1) S_{q_1.. q_j-hat ..q_k}
        = (eta(x) - eta(y)) ^ S_{q_1..q_k},     1 <= k <= M,

which verify_grundlegend checks at sampled points.
"""

import random
from fractions import Fraction
from itertools import combinations

from . import linalg
from .aomoto import AomotoSpace, monomials
from .arrangement import AffineForm, WeightedArrangement
from .errors import NotInSpan, OnDiagonalSlice, OnHyperplane
from .exactfield import random_point_avoiding


class ExteriorElement:
    """An alternating form with scalar coefficients on n covectors.

    terms maps increasing index tuples to nonzero coefficients; the
    empty tuple is the scalar (degree-0) part.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for subset, coeff in terms.items():
                if coeff != 0:
                    self.terms[tuple(subset)] = coeff

    @classmethod
    def one(cls, n):
        return cls(n, {(): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixing exterior algebras of different rank")
        out = dict(self.terms)
        for subset, coeff in other.terms.items():
            acc = out.get(subset, 0) + coeff
            if acc == 0:
                out.pop(subset, None)
            else:
                out[subset] = acc
        return ExteriorElement(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return ExteriorElement(
            self.n, {s: factor * c for s, c in self.terms.items()}
        )

    def wedge(self, other):
        if self.n != other.n:
            raise ValueError("mixing exterior algebras of different rank")
        out = {}
        for sa, ca in self.terms.items():
            for sb, cb in other.terms.items():
                if set(sa) & set(sb):
                    continue
                sign, merged = _merge_sign(sa, sb)
                coeff = ca * cb * sign
                acc = out.get(merged, 0) + coeff
                if acc == 0:
                    out.pop(merged, None)
                else:
                    out[merged] = acc
        return ExteriorElement(self.n, out)

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"ExteriorElement(n={self.n}, terms={self.terms!r})"


def _merge_sign(a, b):
    """Sign for sorting the concatenation of two increasing disjoint tuples."""
    inversions = 0
    for x in a:
        for y in b:
            if y < x:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def eval_dlog(form, point):
    """dlog of an affine form at a point, as a degree-1 exterior element."""
    value = form.evaluate(point)
    if value == 0:
        raise OnHyperplane(f"point lies on the hyperplane of {form}")
    return ExteriorElement(
        len(point),
        {(j,): g / value for j, g in enumerate(form.gradient) if g != 0},
    )


def doubled_form(form, dimension, copy):
    """The form acting on the first (copy=0) or second (copy=1) factor of x x y."""
    pad = [Fraction(0)] * dimension
    grad = list(form.gradient) + pad if copy == 0 else pad + list(form.gradient)
    return AffineForm(form.constant, tuple(grad))


def difference_form(form, dimension):
    """F(x) - F(y) as an affine form on the doubled space."""
    grad = list(form.gradient) + [-g for g in form.gradient]
    return AffineForm(0, tuple(grad))


def eval_eta_difference(arr, xy):
    """eta(x) - eta(y) on the doubled space, evaluated at xy."""
    M = arr.dimension
    total = ExteriorElement(2 * M)
    for form, weight in zip(arr.forms, arr.weights):
        first = eval_dlog(doubled_form(form, M, 0), xy)
        second = eval_dlog(doubled_form(form, M, 1), xy)
        total = total + (first - second).scale(weight)
    return total


def eval_S_b(arr, b, xy):
    """The degree-2b kernel form S^(b) evaluated at a doubled point."""
    M = arr.dimension
    if not 0 <= b <= M:
        raise ValueError("b must lie between 0 and the dimension")
    total = ExteriorElement(2 * M)
    for subset in combinations(range(arr.size), b):
        term = ExteriorElement.one(2 * M)
        for i in subset:
            term = term.scale(arr.weights[i])
            pair = eval_dlog(doubled_form(arr.forms[i], M, 0), xy).wedge(
                eval_dlog(doubled_form(arr.forms[i], M, 1), xy)
            )
            term = term.wedge(pair)
        total = total + term
    return total


def eval_S_mixed(arr, F_list, q_indices, xy):
    """The mixed form S_{q_1..q_w} evaluated at a doubled point.

    q_indices picks comparison functions out of F_list; w = len(q_indices)
    and the kernel part has b = M - w.  Raises OnDiagonalSlice when some
    F_q takes equal values on the two copies.
    """
    M = arr.dimension
    w = len(q_indices)
    if w > M:
        raise ValueError("more comparison indices than the dimension allows")
    result = eval_S_b(arr, M - w, xy)
    for q in q_indices:
        diff = difference_form(F_list[q], M)
        if diff.evaluate(xy) == 0:
            raise OnDiagonalSlice(f"F_{q} takes equal values on both copies")
        result = result.wedge(eval_dlog(diff, xy))
    return result


def _sampling_forms(arr, F_list, upto):
    M = arr.dimension
    forms = [doubled_form(f, M, 0) for f in arr.forms]
    forms += [doubled_form(f, M, 1) for f in arr.forms]
    forms += [difference_form(F_list[q], M) for q in range(upto)]
    return forms


def verify_grundlegend(arr, F_list, k, num_points=5, seed=0, bound=10**6):
    """Check the boundary identity for the first k comparison functions.

    Samples num_points doubled integer points away from all hyperplanes
    and diagonal slices, then compares both sides exactly.  Returns True
    iff the identity holds at every sampled point.
    """
    if not 1 <= k <= arr.dimension:
        raise ValueError("k must lie between 1 and the dimension")
    qs = list(range(k))
    avoid = _sampling_forms(arr, F_list, k)
    rng = random.Random(seed)
    for _ in range(num_points):
        xy = random_point_avoiding(
            avoid, bound=bound, seed=rng.randrange(2**32), dimension=2 * arr.dimension
        )
        lhs = ExteriorElement(2 * arr.dimension)
        for j in range(k):
            omitted = qs[:j] + qs[j + 1 :]
            term = eval_S_mixed(arr, F_list, omitted, xy)
            lhs = lhs + term.scale(1 if j % 2 == 0 else -1)
        rhs = eval_eta_difference(arr, xy).wedge(eval_S_mixed(arr, F_list, qs, xy))
        if lhs != rhs:
            return False
    return True


def grundlegend_control(arr, F_list, k=None, seed=0, bound=10**6):
    """Mismatched-weight control for the boundary identity.

    Evaluates the left side with the given weights and the right side
    with one weight perturbed; returns True when the mismatch is
    detected (the two sides differ at a sampled point).  A checker that
    cannot fail this control would be vacuous.
    """
    if k is None:
        k = arr.dimension
    qs = list(range(k))
    perturbed = WeightedArrangement(
        arr.dimension,
        arr.forms,
        [w + Fraction(1, 5) if i == 0 else w for i, w in enumerate(arr.weights)],
        coloring=arr.coloring,
    )
    xy = random_point_avoiding(
        _sampling_forms(arr, F_list, k), bound=bound, seed=seed,
        dimension=2 * arr.dimension,
    )
    lhs = ExteriorElement(2 * arr.dimension)
    for j in range(k):
        omitted = qs[:j] + qs[j + 1:]
        term = eval_S_mixed(arr, F_list, omitted, xy)
        lhs = lhs + term.scale(1 if j % 2 == 0 else -1)
    rhs = eval_eta_difference(perturbed, xy).wedge(
        eval_S_mixed(perturbed, F_list, qs, xy)
    )
    return lhs != rhs


def coordinate_functions(dimension):
    """The default comparison functions: the coordinates t_1, ..., t_M."""
    return [
        AffineForm(0, tuple(Fraction(1 if j == b else 0) for j in range(dimension)))
        for b in range(dimension)
    ]


def monomial_value(arr, subset, point):
    """Coefficient of dt_1 ^ ... ^ dt_M in a top wedge monomial at a point."""
    M = arr.dimension
    rows = []
    denom = Fraction(1)
    for i in subset:
        value = arr.forms[i].evaluate(point)
        if value == 0:
            raise OnHyperplane(f"sample point lies on hyperplane {i}")
        denom *= value
        rows.append(list(arr.forms[i].gradient))
    return _det(rows) / denom


def _det(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if rows[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] / inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


def expand_top_form(arr, lattice, evaluator, seed=0, bound=10**6, extra_avoid=(),
                    certification=3, space=None):
    """Coefficients of a top form in the wedge monomial basis.

    evaluator(point) must return the exact coefficient of dt_1..dt_M at
    the point.  Solves an interpolation system on dim + certification
    sampled points, reduces the solution to the canonical representative
    modulo monomial relations, and re-verifies at certification fresh
    points.  Raises NotInSpan when no logarithmic expansion exists.
    """
    M = arr.dimension
    if space is None:
        space = AomotoSpace(arr, lattice, M)
    mons = monomials(arr.size, M)
    avoid = list(arr.forms) + list(extra_avoid)
    rng = random.Random(seed)

    def sample():
        return random_point_avoiding(
            avoid, bound=bound, seed=rng.randrange(2**32), dimension=M
        )

    for attempt in range(3):
        n_points = space.dim + certification + attempt * space.dim
        points = [sample() for _ in range(n_points)]
        rows = [[monomial_value(arr, sub, pt) for sub in mons] for pt in points]
        rhs = [evaluator(pt) for pt in points]
        solution = linalg.solve(rows, rhs)
        if solution is None:
            continue
        fresh = [sample() for _ in range(certification)]
        good = all(
            sum(c * monomial_value(arr, sub, pt) for c, sub in zip(solution, mons))
            == evaluator(pt)
            for pt in fresh
        )
        if good:
            return tuple(space.reduce(solution))
    raise NotInSpan("evaluator is not a combination of logarithmic monomials")
