"""Exact rational linear algebra over inner-product spaces of signature (p, q).

Scalars are ``gmpy2.mpq``; vectors and matrices are numpy object arrays of
them.  Nothing in here ever produces a float.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np
from gmpy2 import mpq, mpz

from .errors import DependentBasis, DimensionMismatch, InputError, NotInSpan

Rational = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)


def Q(x):
    """Coerce an exact scalar (int, str "n/d", Fraction, mpq) to mpq."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, np.ndarray) and x.shape == ():
        x = x.item()
        if isinstance(x, Rational):
            return x
    if isinstance(x, (bool, float)):
        raise InputError(f"refusing inexact or boolean scalar {x!r}")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    try:
        return mpq(x)
    except TypeError as exc:
        raise InputError(f"not a rational: {x!r}") from exc


_to_q = np.frompyfunc(Q, 1, 1)


def qarray(data):
    """Object array of mpq from any nested sequence of exact scalars."""
    arr = np.asarray(data, dtype=object)
    if arr.shape == ():
        return Q(arr.item())
    return _to_q(arr).astype(object)


def zeros(*shape):
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def is_zero(a):
    return not np.any(np.asarray(a) != 0)


def is_symmetric(m):
    m = np.asarray(m, dtype=object)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and is_zero(m - m.T)


def rational_str(x):
    x = Q(x)
    return str(x)


def basis_vector(n, i):
    v = zeros(n)
    v[i] = ONE
    return v


# -- elimination ------------------------------------------------------------

def _integer_rows(m):
    rows = []
    for row in np.asarray(m, dtype=object):
        den = 1
        for x in row:
            den = lcm(den, int(Q(x).denominator))
        rows.append([mpz(Q(x) * den) for x in row])
    return rows


def rank(m):
    """Exact rank by fraction-free (Bareiss) elimination."""
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    if m.ndim == 1:
        m = m.reshape(1, -1)
    rows = _integer_rows(m)
    nrows, ncols = m.shape
    r = 0
    prev = mpz(1)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            if f == 0:
                rows[i] = [(x * p) // prev for x in ri]
            else:
                rows[i] = [(x * p - y * f) // prev for x, y in zip(ri, pr)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(m):
    """Reduced row echelon form over Q.  Returns (nonzero rows array, pivot columns)."""
    a = qarray(m).copy()
    if a.ndim == 1:
        a = a.reshape(1, -1)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, c]
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def inverse(m):
    m = qarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    red, piv = rref(np.concatenate([m, identity(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise InputError("matrix is singular")
    return red[:, n:].copy()


def congruence_diagonalize(m):
    """Lagrange reduction: invertible C and diagonal d with C.T @ m @ C == diag(d)."""
    a = qarray(m).copy()
    if not is_symmetric(a):
        raise InputError("congruence diagonalization needs a symmetric matrix")
    n = a.shape[0]
    c = identity(n)

    def add_col(src, dst, f):
        # column/row operation dst += f * src, applied as a congruence
        a[:, dst] = a[:, dst] + f * a[:, src]
        a[dst, :] = a[dst, :] + f * a[src, :]
        c[:, dst] = c[:, dst] + f * c[:, src]

    def swap(i, j):
        a[:, [i, j]] = a[:, [j, i]]
        a[[i, j], :] = a[[j, i], :]
        c[:, [i, j]] = c[:, [j, i]]

    for k in range(n):
        if a[k, k] == 0:
            j = next((j for j in range(k + 1, n) if a[j, j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k, j] != 0), None)
                if j is None:
                    continue
                add_col(j, k, ONE)
        piv = a[k, k]
        for i in range(k + 1, n):
            if a[k, i] != 0:
                add_col(k, i, -a[k, i] / piv)
    return c, [a[i, i] for i in range(n)]


def signature_of_symmetric(m):
    """Inertia (n_pos, n_neg, n_zero) of a symmetric rational matrix."""
    m = qarray(m)
    if m.ndim != 2 or not is_symmetric(m):
        raise InputError("signature_of_symmetric needs a symmetric matrix")
    _, d = congruence_diagonalize(m)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg


# -- spaces -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SignatureSpace:
    """A real vector space with a non-degenerate inner product of signature (p, q).

    ``p`` counts negative (timelike) directions and ``q`` positive (spacelike)
    ones.  The default basis is orthonormal with the timelike vectors first.
    """

    p: int
    q: int
    gram: np.ndarray

    def __post_init__(self):
        g = qarray(self.gram)
        object.__setattr__(self, "gram", g)
        n = self.p + self.q
        if g.shape != (n, n):
            raise DimensionMismatch(f"gram of shape {g.shape} for signature ({self.p},{self.q})")
        pos, neg, zero = signature_of_symmetric(g)
        if zero:
            raise InputError("gram matrix is degenerate")
        if (neg, pos) != (self.p, self.q):
            raise InputError(f"gram has signature ({neg},{pos}), not ({self.p},{self.q})")

    @classmethod
    def standard(cls, p, q):
        if p < 0 or q < 0:
            raise InputError("signature counts must be non-negative")
        g = identity(p + q)
        for i in range(p):
            g[i, i] = -ONE
        return cls(p, q, g)

    @classmethod
    def from_gram(cls, gram):
        g = qarray(gram)
        pos, neg, zero = signature_of_symmetric(g)
        if zero:
            raise InputError("gram matrix is degenerate")
        return cls(neg, pos, g)

    @property
    def dim(self):
        return self.p + self.q

    @cached_property
    def gram_inv(self):
        if self.is_standard:
            return self.gram.copy()
        return inverse(self.gram)

    @cached_property
    def is_standard(self):
        g = self.gram
        return all(g[i, j] == (0 if i != j else (-1 if i < self.p else 1))
                   for i in range(self.dim) for j in range(self.dim))

    def norm(self, v):
        return inner(self, v, v)

    def is_spacelike(self, v):
        return inner(self, v, v) > 0

    def __eq__(self, other):
        if not isinstance(other, SignatureSpace):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and is_zero(self.gram - other.gram)

    def __hash__(self):
        return hash((self.p, self.q, tuple(self.gram.ravel())))

    def __repr__(self):
        tag = "" if self.is_standard else ", custom gram"
        return f"SignatureSpace(p={self.p}, q={self.q}{tag})"


def inner(space, v1, v2):
    v1 = np.asarray(v1, dtype=object)
    v2 = np.asarray(v2, dtype=object)
    if v1.shape != (space.dim,) or v2.shape != (space.dim,):
        raise DimensionMismatch(
            f"vectors of shape {v1.shape}, {v2.shape} in a {space.dim}-dimensional space")
    return Q(v1 @ space.gram @ v2)


def gram_of(space, vectors):
    """Gram matrix of a list of vectors."""
    vs = np.array([np.asarray(v, dtype=object) for v in vectors], dtype=object)
    if vs.size == 0:
        return zeros(0, 0)
    return vs @ space.gram @ vs.T


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Matrix of a linear map between two signature spaces.

    Column ``j`` of ``matrix`` is the image of the ``j``-th domain basis vector.
    """

    domain: SignatureSpace
    codomain: SignatureSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = qarray(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionMismatch(
                f"matrix shape {m.shape} for a map {self.domain.dim} -> {self.codomain.dim}")

    @classmethod
    def endo(cls, space, matrix):
        return cls(space, space, matrix)

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=object)

    def scaled(self, c):
        return LinearMap(self.domain, self.codomain, self.matrix * Q(c))

    def __neg__(self):
        return self.scaled(-1)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and is_zero(self.matrix - other.matrix))

    __hash__ = None

    @property
    def is_endomorphism(self):
        return self.domain == self.codomain


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient held in reduced row echelon form.

    Two subspaces are equal exactly when their canonical bases are.
    """

    ambient: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def vectors(self):
        return [np.array(b, dtype=object) for b in self.basis]

    def matrix(self):
        """Basis vectors as columns."""
        if not self.basis:
            return zeros(self.ambient, 0)
        return np.array(self.basis, dtype=object).T

    def contains(self, v):
        v = qarray(v)
        if v.shape != (self.ambient,):
            raise DimensionMismatch("vector does not live in the ambient space")
        if is_zero(v):
            return True
        return span(list(self.vectors()) + [v], self.ambient).dim == self.dim

    def __repr__(self):
        rows = ["(" + ", ".join(str(x) for x in b) + ")" for b in self.basis]
        return f"Subspace(ambient={self.ambient}, basis=[{', '.join(rows)}])"


def span(vectors, ambient=None):
    vecs = [qarray(v) for v in vectors]
    if ambient is None:
        if not vecs:
            raise InputError("ambient dimension needed for an empty span")
        ambient = vecs[0].shape[0]
    if any(v.shape != (ambient,) for v in vecs):
        raise DimensionMismatch("span of vectors of mixed length")
    if not vecs:
        return Subspace(ambient, ())
    red, _ = rref(np.array(vecs, dtype=object))
    return Subspace(ambient, tuple(tuple(row) for row in red))


def zero_subspace(n):
    return Subspace(n, ())


def full_space(n):
    return span([basis_vector(n, i) for i in range(n)], n)


def kernel_basis(m):
    """Canonical basis of the null space of m (as a Subspace of Q^cols)."""
    m = qarray(m)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    ncols = m.shape[1]
    red, piv = rref(m) if m.shape[0] else (zeros(0, ncols), [])
    free = [c for c in range(ncols) if c not in piv]
    vecs = []
    for f in free:
        v = zeros(ncols)
        v[f] = ONE
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        vecs.append(v)
    return span(vecs, ncols)


def range_of(m):
    """Column space of m."""
    m = qarray(m)
    return span(list(m.T), m.shape[0])


def subspace_sum(s1, s2):
    if s1.ambient != s2.ambient:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    return span(s1.vectors() + s2.vectors(), s1.ambient)


def intersect(s1, s2):
    if s1.ambient != s2.ambient:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    n = s1.ambient
    if s1.dim == 0 or s2.dim == 0:
        return zero_subspace(n)
    b1, b2 = s1.matrix(), s2.matrix()
    ker = kernel_basis(np.concatenate([b1, -b2], axis=1))
    out = span([b1 @ k[: s1.dim] for k in ker.vectors()], n)
    total = subspace_sum(s1, s2)
    assert s1.dim + s2.dim == total.dim + out.dim, "dimension identity violated"
    return out


def solve_in_span(target, basis):
    """Coefficients c with target == sum c_i basis_i; raises NotInSpan."""
    target = qarray(target)
    vecs = [qarray(b) for b in basis]
    if not vecs:
        if is_zero(target):
            return []
        raise NotInSpan("nonzero target, empty basis")
    m = np.array(vecs, dtype=object).T
    if m.shape[0] != target.shape[0]:
        raise DimensionMismatch("target and basis lengths differ")
    k = len(vecs)
    if rank(m) < k:
        raise DependentBasis("basis vectors are linearly dependent")
    red, piv = rref(np.concatenate([m, target.reshape(-1, 1)], axis=1))
    if k in piv:
        raise NotInSpan("target is not in the span")
    return [red[i, k] for i in range(k)]
