"""From tensor functionals to top forms on the discriminantal arrangement.

For sl2 representations with highest weights m_1..m_n placed at distinct
points z_1..z_n, the weight space of weight mu = sum m_i - 2M is reached
by M lowering operators.  The matching arrangement lives in M variables
t_1..t_M and consists of the hyperplanes t_a = z_i with weight m_i/kappa
and the diagonals t_a = t_b with weight -2/kappa.  (All ranks and
subspaces computed downstream are invariant under negating every weight
at once, so the global sign is a convention; this one makes eta the
logarithmic differential of the master function written with the
representation weights in the numerator.)

The rational vector

    v(t, z) = sum over assignments of the variables to the points of
              (x) f^{q_i} v_i  *  sum over orderings u_1..u_q of the
              variables at z_i of 1 / ((u_1-u_2)...(u_{q-1}-u_q)(u_q-z_i))

has weight mu, and pairing it with a functional psi on the weight space
gives the coefficient of a logarithmic top form, psi(v) dt_1..dt_M.
expand_top_form recovers its monomial coefficients exactly, which lets
the span of these classes be compared with the weight-diagonal image
inside top cohomology.
"""

from fractions import Fraction
from itertools import permutations, product

from . import linalg
from .aomoto import (
    AomotoSpace, CohomologyClass, TopQuotient, shapovalov_image,
)
from .arrangement import AffineForm, WeightedArrangement, intersection_lattice
from .errors import DuplicatePoints, OnHyperplane, WeightMismatch
from .exactfield import RatFuncKappa
from .liealg import (
    TensorSpace, _require_sl2, _sl2_weight_int, invariant_functionals,
    invariants_dim,
)
from .logforms import expand_top_form


def _as_fraction_points(points):
    pts = [Fraction(z) if not isinstance(z, Fraction) else z for z in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("marked points must be pairwise distinct")
    return pts


def num_variables(weights, mu=0):
    """Number of lowering steps from sum of highest weights down to mu."""
    total = sum(_sl2_weight_int(w) for w in weights)
    gap = total - _sl2_weight_int(mu) if mu else total
    if gap < 0 or gap % 2:
        raise WeightMismatch(
            f"weight {mu} is not reachable from highest weight {total}"
        )
    return gap // 2


def build_arrangement(root, weights, points, kappa=None, mu=0,
                      keep_zero_weights=False):
    """The weighted arrangement attached to sl2 data at distinct points.

    Forms come in variable-major order: first t_1 - z_1, ..., t_1 - z_n,
    then the same for t_2, ..., and finally the diagonals t_a - t_b for
    a < b in lexicographic order.  Point hyperplanes carry (m_i, alpha)
    over kappa, diagonals carry -(alpha, alpha) over kappa.  Hyperplanes
    whose weight is exactly zero contribute nothing to eta or to the
    diagonal map, so they are omitted unless keep_zero_weights is set.
    With kappa=None the weights stay symbolic as rational functions of
    kappa.  All coordinates share one color, so the full symmetric group
    acts.
    """
    _require_sl2(root)
    ms = [_sl2_weight_int(w) for w in weights]
    zs = _as_fraction_points(points)
    if len(zs) != len(ms):
        raise ValueError("one marked point is needed per representation")
    M = num_variables(ms, mu)
    if M == 0:
        raise WeightMismatch("no integration variables at this weight")
    alpha = root.simple_root_fund(0)
    if kappa is None:
        inv_kappa = 1 / RatFuncKappa.kappa()
    else:
        inv_kappa = 1 / Fraction(kappa)
    pair_weight = -root.weight_pairing(alpha, alpha) * inv_kappa
    forms = []
    form_weights = []
    for a in range(M):
        for i, z in enumerate(zs):
            w = root.weight_pairing((ms[i],), alpha) * inv_kappa
            if w == 0 and not keep_zero_weights:
                continue
            grad = [Fraction(0)] * M
            grad[a] = Fraction(1)
            forms.append(AffineForm(-z, tuple(grad)))
            form_weights.append(w)
    for a in range(M):
        for b in range(a + 1, M):
            if pair_weight == 0 and not keep_zero_weights:
                continue
            grad = [Fraction(0)] * M
            grad[a] = Fraction(1)
            grad[b] = Fraction(-1)
            forms.append(AffineForm(0, tuple(grad)))
            form_weights.append(pair_weight)
    return WeightedArrangement(M, forms, form_weights, coloring=(0,) * M)


def _ordering_sum(ts, group, z):
    """Sum over orderings of 1/((u_1-u_2)...(u_{q-1}-u_q)(u_q-z))."""
    if not group:
        return Fraction(1)
    total = Fraction(0)
    for order in permutations(group):
        denom = Fraction(1)
        for s, t in zip(order, order[1:]):
            diff = ts[s] - ts[t]
            if diff == 0:
                raise OnHyperplane("evaluation point lies on a diagonal")
            denom *= diff
        last = ts[order[-1]] - z
        if last == 0:
            raise OnHyperplane("evaluation point lies on a marked-point hyperplane")
        total += 1 / denom / last
    return total


def sv_vector_eval(space, ts, zs):
    """Coefficients of v(t, z) on the product basis of the tensor space.

    ts are the M variable values, zs the marked points.  Only basis
    vectors with total lowering depth M receive a nonzero coefficient.
    """
    zs = _as_fraction_points(zs)
    if len(zs) != len(space.ms):
        raise ValueError("one marked point is needed per factor")
    ts = [Fraction(t) if not isinstance(t, Fraction) else t for t in ts]
    M = len(ts)
    coeffs = [Fraction(0)] * space.dim
    for assignment in product(range(len(zs)), repeat=M):
        depths = [0] * len(zs)
        for target in assignment:
            depths[target] += 1
        if any(d > m for d, m in zip(depths, space.ms)):
            continue
        factor = Fraction(1)
        for i, z in enumerate(zs):
            group = [a for a in range(M) if assignment[a] == i]
            factor *= _ordering_sum(ts, group, z)
            if factor == 0:
                break
        coeffs[space.index[tuple(depths)]] += factor
    return coeffs


def omega_sv(arr, lattice, space, psi, zs, seed=0, aomoto_space=None):
    """Top-cohomology class of psi(v(t, z)) dt_1..dt_M.

    psi is a coefficient vector on the zero-weight basis (the documented
    lex ordering).  The result is the canonical monomial representative
    modulo relations, wrapped as a CohomologyClass.
    """
    zero = space.zero_weight_indices()

    def evaluator(point):
        values = sv_vector_eval(space, point, zs)
        return sum(p * values[z] for p, z in zip(psi, zero))

    rep = expand_top_form(
        arr, lattice, evaluator, seed=seed, space=aomoto_space
    )
    return CohomologyClass(arr.dimension, tuple(rep))


def egregium_check(root, weights, points, kappa, seed=0):
    """Compare tensor invariants with both realizations in top cohomology.

    Returns a dict with the invariant dimension, the rank of the span of
    the rational top forms, the rank of the sign-projected weight-diagonal
    image, whether those two subspaces of top cohomology coincide exactly,
    and the overall verdict.
    """
    _require_sl2(root)
    space = TensorSpace([_sl2_weight_int(w) for w in weights])
    inv_dim = invariants_dim(root, weights)
    arr = build_arrangement(root, weights, points, kappa=kappa)
    lattice = intersection_lattice(arr)
    top = AomotoSpace(arr, lattice, arr.dimension)
    quotient = TopQuotient(arr, lattice, space=top)
    psis = invariant_functionals(space)
    sv_rows = []
    for psi in psis:
        cls = omega_sv(
            arr, lattice, space, psi, points, seed=seed, aomoto_space=top
        )
        sv_rows.append(quotient.coords(list(cls.rep)))
    image_rank, image_classes = shapovalov_image(
        arr, lattice, use_chi=True, quotient=quotient
    )
    image_rows = [quotient.coords(list(cls.rep)) for cls in image_classes]
    sv_rank = linalg.rank(sv_rows) if sv_rows else 0
    same = _same_row_space(sv_rows, image_rows)
    return {
        "invariants_dim": inv_dim,
        "sv_rank": sv_rank,
        "image_rank": image_rank,
        "subspaces_equal": same,
        "match": inv_dim == sv_rank == image_rank and same,
    }


def _same_row_space(rows_a, rows_b):
    ra, _ = linalg.rref([list(r) for r in rows_a])
    rb, _ = linalg.rref([list(r) for r in rows_b])
    return ra == rb
