"""Normalization of a quartic surface at a marked double point.

Given a homogeneous quartic F and a point P on it, the surface is moved to
coordinates with P = (1:0:0:0) and written as x0^2*A + x0*B + C with A, B,
C of degrees 2, 3, 4 in x1, x2, x3.  The rank of A sorts the singularity
into the three branches the classifier knows (rank 3, rank 2, rank 1), and
``normal_form`` brings A to literally x2*x3 or x3^2.

All changes of coordinates are recorded as an invertible 4x4 matrix so the
normalized equation can be audited against the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldExtensionRequired, GeometryError
from .field import GaussianRational, ONE, ZERO, coeff_sort_key, sqrt_if_exists
from .poly import Polynomial, format_poly, linear_change, parse

# -- small exact linear algebra ------------------------------------------------


def mat_identity(n: int):
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)
        )
        for i in range(n)
    )


def mat_inverse(a):
    """Exact inverse by Gauss-Jordan; raises on a singular matrix."""
    n = len(a)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot is None:
            raise ValueError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [entry * inv for entry in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def mat_rank(a) -> int:
    rows = [list(r) for r in a]
    n, m = len(rows), len(rows[0])
    rank = 0
    col = 0
    while rank < n and col < m:
        pivot = next((r for r in range(rank, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(n):
            if r != rank and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# -- quadratic forms in x1, x2, x3 ----------------------------------------------


def gram_matrix(q: Polynomial):
    """Symmetric 3x3 Gram matrix of a quadratic form in x1, x2, x3."""
    half = GaussianRational.of(1) / 2

    def coeff(i, j):
        mono = [0, 0, 0, 0]
        mono[i] += 1
        mono[j] += 1
        return q.coefficient(tuple(mono))

    g = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            c = coeff(i + 1, j + 1)
            g[i][j] = c if i == j else c * half
    return tuple(tuple(row) for row in g)


def quadratic_rank(q: Polynomial) -> int:
    return mat_rank(gram_matrix(q))


def _linear_form(vec) -> Polynomial:
    p = Polynomial.zero()
    for i, c in enumerate(vec):
        if not GaussianRational.of(c).is_zero():
            p = p + Polynomial.variable(i + 1).scale(c)
    return p


def factor_rank2(q: Polynomial):
    """Write a rank-2 quadratic form as a product of two linear forms.

    Output is a pair of 3-vectors (f, g) over (x1, x2, x3) with
    _linear_form(f) * _linear_form(g) == q exactly.
    """
    a = {(i, j): ZERO for i in range(3) for j in range(3)}
    for i in range(3):
        for j in range(i, 3):
            mono = [0, 0, 0, 0]
            mono[i + 1] += 1
            mono[j + 1] += 1
            a[(i, j)] = q.coefficient(tuple(mono))

    diag = [a[(k, k)] for k in range(3)]
    if all(d.is_zero() for d in diag):
        # pure cross terms: a12 x1x2 + a13 x1x3 + a23 x2x3 with one product
        # vanishing (rank 2), so the split is rational
        pairs = [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)]
        for (i, j), k in pairs:
            if not a[(i, j)].is_zero():
                f = [ZERO, ZERO, ZERO]
                g = [ZERO, ZERO, ZERO]
                f[i] = a[(i, j)]
                f[k] = a[(min(j, k), max(j, k))]
                g[j] = ONE
                g[k] = a[(min(i, k), max(i, k))] / a[(i, j)]
                if _linear_form(f) * _linear_form(g) == q:
                    return tuple(f), tuple(g)
        raise ValueError(f"{format_poly(q)} is not a rank-2 quadratic form")

    k = next(i for i, d in enumerate(diag) if not d.is_zero())
    others = [i for i in range(3) if i != k]
    # complete the square along x_{k+1}: q = d*L^2 + (binary in the others)
    d = diag[k]
    lvec = [ZERO, ZERO, ZERO]
    lvec[k] = ONE
    for o in others:
        key = (min(k, o), max(k, o))
        lvec[o] = a[key] / (d * 2)
    lpoly = _linear_form(lvec)
    residual = q - (lpoly * lpoly).scale(d)
    u, v = others
    p = residual.coefficient(_sq_mono(u))
    w = residual.coefficient(_cross_mono(u, v))
    r = residual.coefficient(_sq_mono(v))
    # rank 2 forces the residual binary form to be c*M^2
    if not p.is_zero():
        c, mvec = p, [ZERO, ZERO, ZERO]
        mvec[u] = ONE
        mvec[v] = w / (p * 2)
    elif not r.is_zero():
        c, mvec = r, [ZERO, ZERO, ZERO]
        mvec[v] = ONE
        mvec[u] = w / (r * 2)
    else:
        raise ValueError(f"{format_poly(q)} is not a rank-2 quadratic form")
    mpoly = _linear_form(mvec)
    if residual != (mpoly * mpoly).scale(c):
        raise ValueError(f"{format_poly(q)} is not a rank-2 quadratic form")
    # q = d L^2 + c M^2 = d (L + sM)(L - sM) with s^2 = -c/d
    s = sqrt_if_exists(-(c / d))
    if s is None:
        raise FieldExtensionRequired(
            "tangent cone does not split into linear forms over Q(i)"
        )
    f = tuple(d * (lv + s * mv) for lv, mv in zip(lvec, mvec))
    g = tuple(lv - s * mv for lv, mv in zip(lvec, mvec))
    if _linear_form(f) * _linear_form(g) != q:
        raise ValueError("internal factorization check failed")
    return f, g


def _sq_mono(i):
    mono = [0, 0, 0, 0]
    mono[i + 1] = 2
    return tuple(mono)


def _cross_mono(i, j):
    mono = [0, 0, 0, 0]
    mono[i + 1] += 1
    mono[j + 1] += 1
    return tuple(mono)


def rank1_square(q: Polynomial):
    """Write a rank-1 quadratic form as c * L^2 with L a rational 3-vector."""
    for k in range(3):
        c = q.coefficient(_sq_mono(k))
        if c.is_zero():
            continue
        lvec = [ZERO, ZERO, ZERO]
        lvec[k] = ONE
        for o in range(3):
            if o == k:
                continue
            lvec[o] = q.coefficient(_cross_mono(min(k, o), max(k, o))) / (c * 2)
        lpoly = _linear_form(lvec)
        if (lpoly * lpoly).scale(c) == q:
            return c, tuple(lvec)
        raise ValueError(f"{format_poly(q)} is not a rank-1 quadratic form")
    raise ValueError(f"{format_poly(q)} is not a rank-1 quadratic form")


def change_sending_forms(assignments):
    """3x3 substitution matrix S with form(S x) = target variable.

    ``assignments`` is a list of (3-vector, target index in 1..3); the map
    is completed to an invertible one with unit vectors.
    """
    rows = [list(vec) for vec, _ in assignments]
    for e in range(3):
        unit = [ONE if i == e else ZERO for i in range(3)]
        trial = rows + [unit]
        if mat_rank(tuple(tuple(r) for r in trial)) == len(trial):
            rows = trial
            if len(rows) == 3:
                break
    t = tuple(tuple(r) for r in rows)
    targets = [target - 1 for _, target in assignments]
    targets += [i for i in range(3) if i not in targets]
    p = tuple(
        tuple(ONE if j == targets[i] else ZERO for j in range(3)) for i in range(3)
    )
    return mat_mul(mat_inverse(t), p)


def extend_to_4x4(s3):
    """Embed a 3x3 change on (x1,x2,x3) into a 4x4 change fixing x0."""
    rows = [(ONE, ZERO, ZERO, ZERO)]
    for i in range(3):
        rows.append((ZERO,) + tuple(s3[i]))
    return tuple(rows)


# -- the normalized quartic -------------------------------------------------------


@dataclass(frozen=True)
class NormalizedQuartic:
    """A quartic x0^2*A + x0*B + C at P = (1:0:0:0), plus provenance.

    ``change`` is the substitution matrix that turns the original input
    into this representative: F_stored(x) = F_input(change . x).
    """

    A: Polynomial
    B: Polynomial
    C: Polynomial
    change: tuple

    def __post_init__(self):
        if self.A.is_zero():
            raise GeometryError("multiplicity at the point exceeds 2")
        for part, deg in ((self.A, 2), (self.B, 3), (self.C, 4)):
            if part.is_zero():
                continue
            if not part.is_homogeneous() or part.total_degree() != deg or 0 in part.variables():
                raise GeometryError(f"part of degree {deg} is malformed")

    def full_equation(self) -> Polynomial:
        x0 = Polynomial.variable(0)
        return x0 * x0 * self.A + x0 * self.B + self.C

    def affine_equation(self) -> Polynomial:
        """The chart {x0 != 0}: A + B + C."""
        return self.A + self.B + self.C

    def to_json(self) -> dict:
        return {
            "A": format_poly(self.A),
            "B": format_poly(self.B),
            "C": format_poly(self.C),
            "change": [[str(c) for c in row] for row in self.change],
        }

    @staticmethod
    def from_json(data: dict) -> "NormalizedQuartic":
        from .poly import parse_coeff

        change = tuple(
            tuple(parse_coeff(c) for c in row) for row in data["change"]
        )
        return NormalizedQuartic(
            A=parse(data["A"]), B=parse(data["B"]), C=parse(data["C"]), change=change
        )


@dataclass(frozen=True)
class TangentConeForm:
    """Outcome of bringing A to x2*x3 (rank 2) or x3^2 (rank 1)."""

    rank: int
    change: tuple  # the 3x3 substitution applied to (x1, x2, x3)


def normalize_at_point(f: Polynomial, point) -> NormalizedQuartic:
    """Move ``point`` to (1:0:0:0) and split off A, B, C.

    Rejects points off the surface, nonsingular points, and points of
    multiplicity 3 or more; only double points are in the canonical range.
    """
    if f.is_zero() or not f.is_homogeneous() or f.total_degree() != 4:
        raise GeometryError("input must be a nonzero homogeneous quartic")
    point = [GaussianRational.of(c) for c in point]
    if len(point) != 4 or all(c.is_zero() for c in point):
        raise GeometryError("a projective point needs 4 coordinates, not all zero")

    pivot = next(i for i, c in enumerate(point) if not c.is_zero())
    columns = [point] + [
        [ONE if i == j else ZERO for i in range(4)] for j in range(4) if j != pivot
    ]
    matrix = tuple(tuple(columns[j][i] for j in range(4)) for i in range(4))
    moved = linear_change(f, matrix)

    parts = {}
    for mono, coeff in moved.terms.items():
        rest = (0, mono[1], mono[2], mono[3])
        parts.setdefault(mono[0], {})[rest] = coeff
    poly_parts = {d: Polynomial(t) for d, t in parts.items()}

    if 4 in poly_parts:
        raise GeometryError("the point does not lie on the quartic")
    if 3 in poly_parts:
        raise GeometryError("the point is a nonsingular point of the quartic")
    a = poly_parts.get(2, Polynomial.zero())
    if a.is_zero():
        raise GeometryError("multiplicity at the point exceeds 2")
    return NormalizedQuartic(
        A=a,
        B=poly_parts.get(1, Polynomial.zero()),
        C=poly_parts.get(0, Polynomial.zero()),
        change=matrix,
    )


def tangent_cone_rank(q: NormalizedQuartic) -> int:
    return quadratic_rank(q.A)


X2X3 = parse("x2*x3")
X3SQ = parse("x3^2")


def normal_form(q: NormalizedQuartic):
    """Bring A to literally x2*x3 (rank 2) or x3^2 (rank 1).

    Raises FieldExtensionRequired when the splitting needs a square root
    missing from Q(i).  Rank-3 inputs are returned unchanged.
    """
    rank = tangent_cone_rank(q)
    if rank == 3:
        return q, TangentConeForm(rank=3, change=mat_identity(3))
    if rank == 2:
        if q.A == X2X3:
            return q, TangentConeForm(rank=2, change=mat_identity(3))
        f, g = factor_rank2(q.A)
        # deterministic orientation: the factor with the larger leading
        # coefficient becomes x2
        lead_f = next(c for c in f if not c.is_zero())
        lead_g = next(c for c in g if not c.is_zero())
        if coeff_sort_key(lead_f) < coeff_sort_key(lead_g):
            f, g = g, f
        s3 = change_sending_forms([(f, 2), (g, 3)])
        target = X2X3
    else:
        if q.A == X3SQ:
            return q, TangentConeForm(rank=1, change=mat_identity(3))
        c, lvec = rank1_square(q.A)
        s = sqrt_if_exists(c)
        if s is None:
            raise FieldExtensionRequired(
                "the doubled line of the tangent cone is not rational over Q(i)"
            )
        form = tuple(s * v for v in lvec)
        s3 = change_sending_forms([(form, 3)])
        target = X3SQ

    m4 = extend_to_4x4(s3)
    a2 = linear_change(q.A, m4)
    if a2 != target:
        raise ValueError("internal normal form check failed")
    result = NormalizedQuartic(
        A=a2,
        B=linear_change(q.B, m4),
        C=linear_change(q.C, m4),
        change=mat_mul(q.change, m4),
    )
    return result, TangentConeForm(rank=rank, change=s3)


# -- named coefficients -----------------------------------------------------------

COEFF_NAMES = (
    "b0",
    "beta2",
    "beta3",
    "rho2",
    "rho23",
    "rho3",
    "sigma0",
    "sigma1",
    "sigma2",
    "sigma3",
    "c0",
    "delta2",
    "delta3",
    "eps2",
    "eps23",
    "eps3",
    "tau0",
    "tau1",
    "tau2",
    "tau3",
    "lam0",
    "lam1",
    "lam2",
    "lam3",
    "lam4",
)

# exponent layout (e1, e2, e3) of each named coefficient
_B_SLOTS = {
    "b0": (3, 0, 0),
    "beta2": (2, 1, 0),
    "beta3": (2, 0, 1),
    "rho2": (1, 2, 0),
    "rho23": (1, 1, 1),
    "rho3": (1, 0, 2),
    "sigma0": (0, 3, 0),
    "sigma1": (0, 2, 1),
    "sigma2": (0, 1, 2),
    "sigma3": (0, 0, 3),
}
_C_SLOTS = {
    "c0": (4, 0, 0),
    "delta2": (3, 1, 0),
    "delta3": (3, 0, 1),
    "eps2": (2, 2, 0),
    "eps23": (2, 1, 1),
    "eps3": (2, 0, 2),
    "tau0": (1, 3, 0),
    "tau1": (1, 2, 1),
    "tau2": (1, 1, 2),
    "tau3": (1, 0, 3),
    "lam0": (0, 4, 0),
    "lam1": (0, 3, 1),
    "lam2": (0, 2, 2),
    "lam3": (0, 1, 3),
    "lam4": (0, 0, 4),
}


class CoefficientTable:
    """The named coefficients of B and C in normal-form coordinates."""

    __slots__ = COEFF_NAMES

    def __init__(self, **values):
        for name in COEFF_NAMES:
            object.__setattr__(self, name, GaussianRational.of(values.get(name, 0)))

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientTable is immutable")

    def __eq__(self, other):
        if not isinstance(other, CoefficientTable):
            return NotImplemented
        return all(getattr(self, n) == getattr(other, n) for n in COEFF_NAMES)

    def __repr__(self):
        nonzero = {n: str(getattr(self, n)) for n in COEFF_NAMES if getattr(self, n)}
        return f"CoefficientTable({nonzero})"

    def as_dict(self) -> dict:
        return {n: getattr(self, n) for n in COEFF_NAMES}

    def reconstruct_b(self) -> Polynomial:
        terms = {}
        for name, (e1, e2, e3) in _B_SLOTS.items():
            terms[(0, e1, e2, e3)] = getattr(self, name)
        return Polynomial(terms)

    def reconstruct_c(self) -> Polynomial:
        terms = {}
        for name, (e1, e2, e3) in _C_SLOTS.items():
            terms[(0, e1, e2, e3)] = getattr(self, name)
        return Polynomial(terms)


def coefficients(q: NormalizedQuartic) -> CoefficientTable:
    """Extract the named coefficient table; requires normal-form A."""
    if q.A != X2X3 and q.A != X3SQ:
        raise GeometryError("coefficient table requires A = x2*x3 or A = x3^2")
    values = {}
    for name, (e1, e2, e3) in _B_SLOTS.items():
        values[name] = q.B.coefficient((0, e1, e2, e3))
    for name, (e1, e2, e3) in _C_SLOTS.items():
        values[name] = q.C.coefficient((0, e1, e2, e3))
    return CoefficientTable(**values)


def quartic_from_table(a: Polynomial, table: CoefficientTable) -> NormalizedQuartic:
    """Assemble a normal-form quartic from A and a coefficient table."""
    return NormalizedQuartic(
        A=a,
        B=table.reconstruct_b(),
        C=table.reconstruct_c(),
        change=mat_identity(4),
    )
