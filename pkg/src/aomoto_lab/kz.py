"""The four-point sl2 connection: transport, monodromy, and flat sections.

The connection acts on the two-dimensional coinvariant space of four
sl2 doublets with basis {[v], [w]}, v = v1 x v1 x v2 x v2 and
w = v1 x v2 x v1 x v2 (lowered vectors in slots 3,4 resp. 2,4).  A
horizontal section satisfies

    (d/dz_j + (1/kappa) sum_{k != j} Omega_{jk} / (z_j - z_k)) u = 0,

so the evolution matrix in z_j is minus the connection coefficient.
Transport moves one coordinate along a piecewise-linear path while the
others stay put, integrating with Taylor series recentered at each step:
the series radius equals the distance to the nearest puncture and the
step stays well inside it, so the truncation error is controlled by a
geometric tail.  All floating arithmetic runs through mpmath at the
system's precision.
"""

import math
from fractions import Fraction

import mpmath

from . import linalg
from .errors import (
    BranchCut, CollidingPoints, PrecisionLoss, StepUnderflow, ZeroKappa,
)
from .exactfield import DEFAULT_PRECISION_BITS
from .liealg import TensorSpace, coinvariants_quotient

KEEP_OUT_RADIUS = 0.01
STEP_RATIO = 0.38
MAX_SERIES_TERMS = 400


def casimir_matrices(weights=(1, 1, 1, 1)):
    """Two-site Casimir operators on the coinvariant basis, one per pair.

    Omega_{jk} acts as e^(j) f^(k) + f^(j) e^(k) + (1/2) h^(j) h^(k) on
    the tensor product, then is projected to the coinvariant quotient
    basis.  Returns a dict keyed by (j, k) with j < k, entries rational.
    """
    space = TensorSpace(weights)
    chosen, projection = coinvariants_quotient(space)
    n = len(space.ms)
    out = {}
    for j in range(n):
        e_j = space.op_on_factor("e", j)
        f_j = space.op_on_factor("f", j)
        h_j = space.op_on_factor("h", j)
        for k in range(j + 1, n):
            e_k = space.op_on_factor("e", k)
            f_k = space.op_on_factor("f", k)
            h_k = space.op_on_factor("h", k)
            omega = linalg.matmul(e_j, f_k)
            for row, extra in zip(omega, linalg.matmul(f_j, e_k)):
                for c, val in enumerate(extra):
                    row[c] += val
            for row, extra in zip(omega, linalg.matmul(h_j, h_k)):
                for c, val in enumerate(extra):
                    row[c] += Fraction(1, 2) * val
            cols = []
            for idx in chosen:
                unit = [Fraction(0)] * space.dim
                unit[idx] = Fraction(1)
                image = linalg.matvec(omega, unit)
                cols.append(linalg.matvec(projection, image))
            out[(j, k)] = [list(row) for row in zip(*cols)]
    return out


class KzSystem:
    """Marked points, kappa, and the Casimir matrices they act through."""

    def __init__(self, points, kappa, matrices=None,
                 precision_bits=DEFAULT_PRECISION_BITS):
        if kappa == 0:
            raise ZeroKappa("kappa must be nonzero")
        self.kappa = Fraction(kappa)
        self.points = list(points)
        if len(set(map(complex, self.points))) != len(self.points):
            raise CollidingPoints("marked points must be pairwise distinct")
        self.matrices = matrices if matrices is not None else casimir_matrices()
        self.n = len(self.points)
        if len(self.matrices) != self.n * (self.n - 1) // 2:
            raise ValueError("one Casimir matrix is needed per pair of points")
        self.d = len(next(iter(self.matrices.values())))
        self.precision_bits = precision_bits

    def omega(self, j, k):
        if j == k:
            raise ValueError("Casimir operators pair distinct factors")
        return self.matrices[(min(j, k), max(j, k))]


# ---------------------------------------------------------------------------
# small dense complex matrices as lists of mpmath numbers


def _to_mpc(x):
    if isinstance(x, Fraction):
        return mpmath.mpc(mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator))
    if isinstance(x, complex):
        return mpmath.mpc(x.real, x.imag)
    return mpmath.mpc(x)


def _frac_matrix(mat):
    return [[_to_mpc(entry) for entry in row] for row in mat]


def _mat_identity(d):
    return [[mpmath.mpc(1 if r == c else 0) for c in range(d)] for r in range(d)]


def _mat_zero(d):
    return [[mpmath.mpc(0) for _ in range(d)] for _ in range(d)]


def _mat_mul(a, b):
    d = len(a)
    m = len(b[0])
    return [
        [sum((a[r][i] * b[i][c] for i in range(len(b))), mpmath.mpc(0))
         for c in range(m)]
        for r in range(d)
    ]


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def _mat_norm(a):
    return max(abs(x) for row in a for x in row)


def _mat_vec(a, v):
    return [sum((row[i] * v[i] for i in range(len(v))), mpmath.mpc(0)) for row in a]


def _mat_inv(a):
    d = len(a)
    work = [list(row) + [mpmath.mpc(1 if r == c else 0) for c in range(d)]
            for r, row in enumerate(a)]
    for col in range(d):
        pivot = max(range(col, d), key=lambda r: abs(work[r][col]))
        if abs(work[pivot][col]) == 0:
            raise PrecisionLoss("singular matrix in inversion")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(d):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[d:] for row in work]


# ---------------------------------------------------------------------------
# connection coefficients


def kz_rhs(sys, zs, j):
    """Evolution matrix -(1/kappa) sum_{k != j} Omega_{jk}/(z_j - z_k)."""
    with mpmath.workprec(sys.precision_bits):
        zj = _to_mpc(zs[j])
        acc = _mat_zero(sys.d)
        for k in range(sys.n):
            if k == j:
                continue
            dz = zj - _to_mpc(zs[k])
            if dz == 0:
                raise CollidingPoints("points collide in the connection")
            acc = _mat_add(acc, _mat_scale(_frac_matrix(sys.omega(j, k)), 1 / dz))
        return _mat_scale(acc, _to_mpc(Fraction(-1, 1) / sys.kappa))


def connection_coefficient(sys, zs, j):
    """(1/kappa) sum_{k != j} Omega_{jk}/(z_j - z_k); minus the evolution."""
    return _mat_scale(kz_rhs(sys, zs, j), mpmath.mpc(-1))


def kz_curvature(sys, zs, i, j, step=mpmath.mpf("1e-12")):
    """Finite-difference curvature of the connection in directions i, j.

    Returns dA_i/dz_j - dA_j/dz_i difference ordered as
    [nabla_i, nabla_j] = dA_j/dz_i - dA_i/dz_j + [A_i, A_j]; flatness
    makes this numerically tiny.
    """
    with mpmath.workprec(sys.precision_bits):
        h = mpmath.mpf(step)

        def shifted(vals, idx, delta):
            out = [_to_mpc(z) for z in vals]
            out[idx] = out[idx] + delta
            return out

        a_i = connection_coefficient(sys, zs, i)
        a_j = connection_coefficient(sys, zs, j)
        dj_plus = connection_coefficient(sys, shifted(zs, i, h), j)
        dj_minus = connection_coefficient(sys, shifted(zs, i, -h), j)
        di_plus = connection_coefficient(sys, shifted(zs, j, h), i)
        di_minus = connection_coefficient(sys, shifted(zs, j, -h), i)
        d_aj = _mat_scale(_mat_add(dj_plus, _mat_scale(dj_minus, -1)), 1 / (2 * h))
        d_ai = _mat_scale(_mat_add(di_plus, _mat_scale(di_minus, -1)), 1 / (2 * h))
        bracket = _mat_add(
            _mat_mul(a_i, a_j), _mat_scale(_mat_mul(a_j, a_i), -1)
        )
        return _mat_add(_mat_add(d_aj, _mat_scale(d_ai, -1)), bracket)


# ---------------------------------------------------------------------------
# paths


class ContourPath:
    """Piecewise-linear path for one moving coordinate.

    Waypoints are complex numbers; consecutive duplicates are dropped.
    Circles are entered as chord polygons fine enough (at most 20 degrees
    per chord) to stay homotopic to the smooth circle outside the
    keep-out radius of the punctures.
    """

    def __init__(self, waypoints):
        pts = [complex(w) for w in waypoints]
        cleaned = []
        for p in pts:
            if not cleaned or abs(p - cleaned[-1]) > 1e-15:
                cleaned.append(p)
        if not cleaned:
            raise ValueError("a path needs at least one waypoint")
        self.waypoints = cleaned

    def segments(self):
        return list(zip(self.waypoints, self.waypoints[1:]))

    def is_loop(self):
        return abs(self.waypoints[0] - self.waypoints[-1]) < 1e-12

    def reversed(self):
        return ContourPath(list(reversed(self.waypoints)))

    def concat(self, other):
        if abs(self.waypoints[-1] - other.waypoints[0]) > 1e-12:
            raise ValueError("paths do not share an endpoint")
        return ContourPath(self.waypoints + other.waypoints[1:])

    def min_distance(self, punctures):
        best = math.inf
        for a, b in self.segments():
            for p in punctures:
                best = min(best, _segment_distance(a, b, complex(p)))
        for p in punctures:
            best = min(best, abs(self.waypoints[0] - complex(p)))
        return best

    @classmethod
    def circle(cls, center, radius, start_angle=-90.0, turns=1,
               max_chord_degrees=20.0):
        """Closed chord polygon around center, counterclockwise if turns > 0."""
        center = complex(center)
        total = 360.0 * turns
        steps = max(1, math.ceil(abs(total) / max_chord_degrees))
        pts = [
            center + radius * complex(
                math.cos(math.radians(start_angle + total * s / steps)),
                math.sin(math.radians(start_angle + total * s / steps)),
            )
            for s in range(steps + 1)
        ]
        return cls(pts)

    @classmethod
    def loop_around(cls, base, center, radius=0.15, depth=0.6):
        """Loop from base around center, routed through the lower half-plane."""
        base = complex(base)
        center = complex(center)
        below_base = complex(base.real, base.imag - depth)
        below_center = complex(center.real, center.imag - depth)
        entry = center - 1j * radius
        approach = [base, below_base, below_center, entry]
        circle = cls.circle(center, radius).waypoints
        back = [entry, below_center, below_base, base]
        return cls(approach + circle[1:] + back[1:])


def _segment_distance(a, b, p):
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = max(0.0, min(1.0, t))
    return abs(p - (a + t * ab))


# ---------------------------------------------------------------------------
# transport


def transport(sys, path, tol=None, moving=0):
    """Fundamental solution along the path for the moving coordinate.

    The other coordinates stay at their system values.  Steps are Taylor
    expansions of the solution recentered along each segment; each step
    length is at most STEP_RATIO times the distance to the nearest
    puncture, and raises StepUnderflow inside the keep-out radius.
    """
    punctures = [
        _to_mpc(sys.points[k]) for k in range(sys.n) if k != moving
    ]
    omegas = [
        _frac_matrix(sys.omega(moving, k))
        for k in range(sys.n) if k != moving
    ]
    with mpmath.workprec(sys.precision_bits + 64):
        if tol is None:
            tol = mpmath.mpf(2) ** (-(sys.precision_bits // 2))
        else:
            tol = mpmath.mpf(tol)
        inv_kappa = _to_mpc(Fraction(-1, 1) / sys.kappa)
        total = _mat_identity(sys.d)
        for a, b in path.segments():
            total = _mat_mul(
                _segment_transport(
                    _to_mpc(a), _to_mpc(b), punctures, omegas, inv_kappa,
                    sys.d, tol,
                ),
                total,
            )
        return total


def _poly_from_roots(shifts):
    """Coefficients of prod (w + shift) in increasing powers of w."""
    coeffs = [mpmath.mpc(1)]
    for s in shifts:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * s
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs


def _segment_transport(a, b, punctures, omegas, minus_inv_kappa, d, tol):
    pos = a
    result = _mat_identity(d)
    while True:
        remaining = b - pos
        if abs(remaining) == 0:
            return result
        rho = min(abs(pos - p) for p in punctures)
        if rho <= KEEP_OUT_RADIUS:
            raise StepUnderflow(
                f"path point {complex(pos)} is inside the keep-out radius"
            )
        hmax = STEP_RATIO * rho
        if abs(remaining) <= hmax:
            h = remaining
        else:
            h = remaining / abs(remaining) * hmax
        step = _taylor_step(pos, h, punctures, omegas, minus_inv_kappa, d, tol)
        result = _mat_mul(step, result)
        pos = b if abs(remaining) <= hmax else pos + h


def _taylor_step(pos, h, punctures, omegas, minus_inv_kappa, d, tol):
    shifts = [pos - p for p in punctures]
    q = _poly_from_roots(shifts)
    c_coeffs = [_mat_zero(d) for _ in range(len(punctures))]
    for k, omega in enumerate(omegas):
        partial = _poly_from_roots(shifts[:k] + shifts[k + 1:])
        for i, coeff in enumerate(partial):
            c_coeffs[i] = _mat_add(
                c_coeffs[i], _mat_scale(omega, coeff * minus_inv_kappa)
            )
    terms = [_mat_identity(d)]
    value = _mat_identity(d)
    h_power = mpmath.mpc(1)
    quiet = 0
    for s in range(MAX_SERIES_TERMS):
        acc = _mat_zero(d)
        for i, c_i in enumerate(c_coeffs):
            if i <= s:
                acc = _mat_add(acc, _mat_mul(c_i, terms[s - i]))
        for i in range(1, len(q)):
            if 0 <= s - i + 1 <= s:
                acc = _mat_add(
                    acc, _mat_scale(terms[s - i + 1], -q[i] * (s - i + 1))
                )
        nxt = _mat_scale(acc, 1 / (q[0] * (s + 1)))
        terms.append(nxt)
        h_power *= h
        contribution = _mat_scale(nxt, h_power)
        value = _mat_add(value, contribution)
        if _mat_norm(contribution) < tol / 4:
            quiet += 1
            if quiet >= 3:
                return value
        else:
            quiet = 0
    raise PrecisionLoss("Taylor step did not converge within the term cap")


def simple_loop(sys, around, base=None, radius=0.15, depth=0.6, moving=0):
    """A based loop encircling one puncture counterclockwise."""
    if base is None:
        base = complex(sys.points[moving])
    center = complex(sys.points[around])
    return ContourPath.loop_around(base, center, radius=radius, depth=depth)


def simple_loop_monodromy(sys, around, base=None, tol=None, radius=0.15,
                          depth=0.6, moving=0):
    """Monodromy along the counterclockwise loop around one puncture."""
    loop = simple_loop(sys, around, base=base, radius=radius, depth=depth,
                       moving=moving)
    return transport(sys, loop, tol=tol, moving=moving)


def pochhammer_monodromy(sys, p, q, base=None, tol=None, radius=0.15,
                         depth=0.6, moving=0):
    """Monodromy along the commutator loop around punctures p and q.

    The loop runs around p, then q, then backwards around p, then q; the
    transport matrix is the corresponding commutator T_q^-1 T_p^-1 T_q T_p.
    """
    t_p = simple_loop_monodromy(sys, p, base=base, tol=tol, radius=radius,
                                depth=depth, moving=moving)
    t_q = simple_loop_monodromy(sys, q, base=base, tol=tol, radius=radius,
                                depth=depth, moving=moving)
    with mpmath.workprec(sys.precision_bits + 64):
        return _mat_mul(
            _mat_inv(t_q), _mat_mul(_mat_inv(t_p), _mat_mul(t_q, t_p))
        )


# ---------------------------------------------------------------------------
# flat sections


_PHI_EXPONENT = Fraction(-1, 6)
_FV_EXPONENTS = {
    (0, 1): Fraction(-1, 2), (0, 2): Fraction(1, 2), (0, 3): Fraction(1, 2),
    (1, 2): Fraction(1, 2), (1, 3): Fraction(1, 2), (2, 3): Fraction(-1, 2),
}


def _check_branch(zs):
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            diff = _to_mpc(zs[i]) - _to_mpc(zs[j])
            if diff == 0:
                raise CollidingPoints("flat sections need distinct points")
            if mpmath.im(diff) == 0 and mpmath.re(diff) <= 0:
                raise BranchCut(
                    f"difference z_{i + 1} - z_{j + 1} lies on the principal cut"
                )


def _phi_vector(zs):
    z1, z2, z3, z4 = zs
    return [(z1 - z3) * (z2 - z4), (z1 - z2) * (z3 - z4)]


def _phi_partials(zs):
    z1, z2, z3, z4 = zs
    return [
        [(z2 - z4), (z3 - z4)],
        [(z1 - z3), -(z3 - z4)],
        [-(z2 - z4), (z1 - z2)],
        [-(z1 - z3), -(z1 - z2)],
    ]


def flat_section_residual(sys, zs, exponent=_PHI_EXPONENT, section="phi"):
    """Largest connection residual of a candidate flat section at zs.

    section "phi": the vector ((z1-z3)(z2-z4), (z1-z2)(z3-z4)) times the
    product of all pairwise differences raised to the exponent.  The
    residual is normalized by the scalar prefactor, so it measures the
    identity and not the branch magnitude.  section "fv": the constant
    vector [v] times the fixed half-integer-exponent prefactor, tested in
    the quotient by the line spanned by the section of "phi".  Raises
    BranchCut when a pairwise difference lies on the principal cut.
    """
    if len(zs) != 4 or sys.n != 4:
        raise ValueError("flat sections are implemented for four points")
    with mpmath.workprec(sys.precision_bits):
        _check_branch(zs)
        z = [_to_mpc(v) for v in zs]
        inv_kappa = 1 / _to_mpc(sys.kappa)
        worst = mpmath.mpf(0)
        if section == "phi":
            e = _to_mpc(exponent)
            phi = _phi_vector(z)
            partials = _phi_partials(z)
            for j in range(4):
                log_term = sum(
                    1 / (z[j] - z[k]) for k in range(4) if k != j
                )
                vec = [e * log_term * phi[r] + partials[j][r] for r in range(2)]
                conn = _mat_zero(sys.d)
                for k in range(4):
                    if k != j:
                        conn = _mat_add(
                            conn,
                            _mat_scale(
                                _frac_matrix(sys.omega(j, k)),
                                inv_kappa / (z[j] - z[k]),
                            ),
                        )
                extra = _mat_vec(conn, phi)
                residual = max(abs(vec[r] + extra[r]) for r in range(2))
                worst = max(worst, residual)
            return worst
        if section == "fv":
            phi = _phi_vector(z)
            scale = max(abs(x) for x in phi)
            ell = [phi[1] / scale, -phi[0] / scale]
            v = [mpmath.mpc(1), mpmath.mpc(0)]
            for j in range(4):
                log_term = sum(
                    _to_mpc(_FV_EXPONENTS[(min(j, k), max(j, k))])
                    / (z[j] - z[k])
                    for k in range(4) if k != j
                )
                vec = [log_term * v[r] for r in range(2)]
                conn = _mat_zero(sys.d)
                for k in range(4):
                    if k != j:
                        conn = _mat_add(
                            conn,
                            _mat_scale(
                                _frac_matrix(sys.omega(j, k)),
                                inv_kappa / (z[j] - z[k]),
                            ),
                        )
                extra = _mat_vec(conn, v)
                residual = abs(
                    ell[0] * (vec[0] + extra[0]) + ell[1] * (vec[1] + extra[1])
                )
                worst = max(worst, residual)
            return worst
        raise ValueError("section must be 'phi' or 'fv'")


# ---------------------------------------------------------------------------
# eigen decompositions for 2x2 monodromies


def eigenvalues_2x2(mat):
    tr = mat[0][0] + mat[1][1]
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    disc = mpmath.sqrt(tr * tr - 4 * det)
    return [(tr + disc) / 2, (tr - disc) / 2]


def diagonalizability_report(mat):
    """Eigenvalues, their separation, and the eigenvector condition number.

    For a 2x2 matrix with distinct eigenvalues the condition number is
    1/|det| of the matrix of normalized eigenvectors; near-defective
    matrices blow it up.  A multiple eigenvalue reports infinity unless
    the matrix is (numerically) scalar.
    """
    eigs = eigenvalues_2x2(mat)
    sep = abs(eigs[0] - eigs[1])
    scale = max(mpmath.mpf(1), _mat_norm(mat))
    if sep < mpmath.mpf("1e-40") * scale:
        off = max(abs(mat[0][1]), abs(mat[1][0]),
                  abs(mat[0][0] - mat[1][1]))
        cond = mpmath.inf if off > mpmath.mpf("1e-30") * scale else mpmath.mpf(1)
        return {"eigenvalues": eigs, "separation": sep, "condition": cond}
    vecs = []
    for lam in eigs:
        shifted = [[mat[0][0] - lam, mat[0][1]], [mat[1][0], mat[1][1] - lam]]
        if abs(shifted[0][0]) + abs(shifted[0][1]) >= \
           abs(shifted[1][0]) + abs(shifted[1][1]):
            row = shifted[0]
        else:
            row = shifted[1]
        vec = [-row[1], row[0]]
        norm = mpmath.sqrt(abs(vec[0]) ** 2 + abs(vec[1]) ** 2)
        vecs.append([vec[0] / norm, vec[1] / norm])
    det = vecs[0][0] * vecs[1][1] - vecs[0][1] * vecs[1][0]
    cond = mpmath.inf if det == 0 else 1 / abs(det)
    return {"eigenvalues": eigs, "separation": sep, "condition": cond}


# ---------------------------------------------------------------------------
# hypergeometric oracle by contour integration


def _pochhammer_contour():
    """Waypoints of the double-commutator contour around t=0 and t=1.

    Based below the segment so that the third singular point 1/u of the
    integrand (u = 2 puts it at 1/2) is never approached or encircled.
    """
    base = complex(0.5, -0.35)
    loop1 = ContourPath.loop_around(base, 1.0, radius=0.25, depth=0.35)
    loop0 = ContourPath.loop_around(base, 0.0, radius=0.25, depth=0.35)
    path = loop1.concat(loop0).concat(loop1.reversed()).concat(loop0.reversed())
    return path


def _arg_ratio(w1, w0):
    return abs(mpmath.arg(w1 / w0))


def hyp2f1(a, b, c, u, precision_bits=DEFAULT_PRECISION_BITS):
    """Gauss hypergeometric value via the double-loop Euler contour.

    Integrates t^(b-1) (1-t)^(c-b-1) (1-ut)^(-a) along a commutator
    contour around t = 0 and t = 1 with continuous branch tracking, then
    normalizes by gamma factors and the endpoint monodromy factors.
    Needs b and c - b nonintegral.  Raises PrecisionLoss if the branch
    bookkeeping fails to close up.
    """
    for name, val in (("b", b), ("c-b", Fraction(c) - Fraction(b))):
        frac = Fraction(val)
        if frac.denominator == 1:
            raise ValueError(f"{name} must not be an integer for the contour")
    with mpmath.workprec(precision_bits + 64):
        aa, bb, cc, uu = (_to_mpc(x) for x in (a, b, c, u))
        path = _pochhammer_contour()
        exps = (bb - 1, cc - bb - 1, -aa)

        def factors(t):
            return (t, 1 - t, 1 - uu * t)

        start = _to_mpc(path.waypoints[0])
        logs = [mpmath.log(w) for w in factors(start)]
        initial_logs = list(logs)
        total = mpmath.mpc(0)
        for seg_a, seg_b in path.segments():
            total, logs = _integrate_segment(
                _to_mpc(seg_a), _to_mpc(seg_b), factors, exps, logs, total
            )
        drift = max(abs(x - y) for x, y in zip(logs, initial_logs))
        if drift > mpmath.mpf(2) ** (-(precision_bits // 4)):
            raise PrecisionLoss("branch tracking failed to close the contour")
        lam = mpmath.exp(2j * mpmath.pi * bb)
        mu = mpmath.exp(2j * mpmath.pi * (cc - bb))
        denom = (1 - lam) * (1 - mu)
        gamma_factor = mpmath.gamma(cc) / (
            mpmath.gamma(bb) * mpmath.gamma(cc - bb)
        )
        return gamma_factor * total / denom


def _integrate_segment(t0, t1, factors, exps, logs, total, depth=0):
    w0 = factors(t0)
    w1 = factors(t1)
    if any(abs(w) == 0 for w in w0 + w1):
        raise PrecisionLoss("contour touches a singular point")
    if depth > 24:
        raise PrecisionLoss("contour subdivision failed to settle branches")
    if any(_arg_ratio(x, y) > 1.2 for x, y in zip(w1, w0)):
        mid = (t0 + t1) / 2
        total, logs = _integrate_segment(
            t0, mid, factors, exps, logs, total, depth + 1
        )
        return _integrate_segment(mid, t1, factors, exps, logs, total, depth + 1)

    def integrand(t):
        w = factors(t)
        acc = mpmath.mpc(0)
        for e, wi, w0i, li in zip(exps, w, w0, logs):
            acc += e * (li + mpmath.log(wi / w0i))
        return mpmath.exp(acc)

    total = total + mpmath.quad(integrand, [t0, t1])
    new_logs = [
        li + mpmath.log(wi / w0i) for li, wi, w0i in zip(logs, w1, w0)
    ]
    return total, new_logs
