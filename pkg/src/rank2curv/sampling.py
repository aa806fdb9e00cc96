"""Seeded generators: spacelike planes, admissible maps, spanning families.

All randomness goes through :func:`stream`, which derives an independent
Philox (counter-based) generator from ``(seed, *keys)``.  A sample's value
depends only on its seed and index, not on how a loop is scheduled.
"""

import zlib
from math import lcm

import numpy as np

from .errors import BadParams, SpanningFamilyFailed, Unsatisfiable
from .exactlin import (
    LinearMap,
    SignatureSpace,
    gram_of,
    kernel_basis,
    qarray,
    rank,
    signature_of_symmetric,
)

MAX_TRIES = 20000
PLANE_BATCH = 64


def _key(k):
    if isinstance(k, str):
        return zlib.crc32(k.encode())
    return int(k)


def stream(seed, *keys):
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(_key(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


def _ints(gen, bound, size):
    return gen.integers(-bound, bound + 1, size=size).tolist()


def is_spacelike_subspace(space, vectors):
    """True iff the vectors are independent and span a positive definite subspace."""
    g = gram_of(space, vectors)
    pos, _, _ = signature_of_symmetric(g)
    return pos == len(vectors)


def random_spacelike_vector(space, seed, bound=3, index=0, key="vector"):
    if space.q < 1:
        raise Unsatisfiable(f"signature ({space.p},{space.q}) has no spacelike vectors")
    gen = stream(seed, key, index)
    for _ in range(MAX_TRIES):
        v = qarray(_ints(gen, bound, space.dim))
        if space.norm(v) > 0:
            return v
    raise Unsatisfiable("no spacelike vector found within the retry budget")


def random_spacelike_plane(space, seed, bound=3, index=0, key="plane"):
    """Integer vectors (v1, v2) with entries in [-bound, bound] spanning a spacelike plane.

    Candidates are drawn in batches and screened in floating point; only the
    exact rational test decides acceptance.
    """
    if space.q < 2:
        raise Unsatisfiable(f"signature ({space.p},{space.q}) has no spacelike 2-planes")
    gen = stream(seed, key, index)
    g = space.gram
    gf = np.array(g, dtype=float)
    scale = max(1.0, float(np.abs(gf).max())) * bound * bound * space.dim
    tol = 1e-9 * scale * scale
    drawn = 0
    while drawn < MAX_TRIES:
        batch = gen.integers(-bound, bound + 1, size=(PLANE_BATCH, 2, space.dim))
        drawn += PLANE_BATCH
        bf = batch.astype(float)
        a = np.einsum("ki,ij,kj->k", bf[:, 0], gf, bf[:, 0])
        b = np.einsum("ki,ij,kj->k", bf[:, 0], gf, bf[:, 1])
        c = np.einsum("ki,ij,kj->k", bf[:, 1], gf, bf[:, 1])
        for k in np.flatnonzero((a > -tol) & (a * c - b * b > -tol)):
            v1, v2 = qarray(batch[k, 0].tolist()), qarray(batch[k, 1].tolist())
            ea, eb, ec = v1 @ g @ v1, v1 @ g @ v2, v2 @ g @ v2
            if ea > 0 and ea * ec - eb * eb > 0:
                return v1, v2
    raise Unsatisfiable("no spacelike plane found within the retry budget")


def random_symmetric(gen, n, bound):
    m = np.array(_ints(gen, bound, (n, n)), dtype=object)
    return qarray(np.triu(m) + np.triu(m, 1).T)


def _integer_rows(vectors):
    out = []
    for v in vectors:
        den = 1
        for x in v:
            den = lcm(den, int(x.denominator))
        out.append(qarray([x * den for x in v]))
    return out


def self_adjoint_with_kernel(space, kernel_vectors, gen, bound=3):
    """Random self-adjoint phi whose kernel is exactly span(kernel_vectors)."""
    n = space.dim
    k = len(kernel_vectors)
    if k:
        annihilator = kernel_basis(np.array(kernel_vectors, dtype=object)).vectors()
        x = np.array(_integer_rows(annihilator), dtype=object)
    else:
        x = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
        x = qarray(x)
    for _ in range(100):
        d = random_symmetric(gen, n - k, bound)
        if rank(d) == n - k:
            break
    else:
        raise Unsatisfiable("could not draw an invertible symmetric core")
    s = x.T @ d @ x
    return LinearMap.endo(space, space.gram_inv @ s)


def _kernel_candidate(space, gen, k, bound, timelike_heavy):
    vecs = []
    for _ in range(k):
        row = _ints(gen, bound, space.dim)
        if timelike_heavy:
            for i in range(space.p):
                row[i] *= 3
            for i in range(space.p, space.dim):
                row[i] = int(np.sign(row[i])) if row[i] else 0
        vecs.append(qarray(row))
    return vecs


def random_admissible_phi(p, q, kernel_dim, seed, bound=3):
    """Self-adjoint phi on R^(p,q) whose kernel has dimension kernel_dim and no spacelike vector."""
    if kernel_dim < 0 or kernel_dim > p:
        raise BadParams(f"kernel_dim must lie in [0, p={p}], got {kernel_dim}")
    space = SignatureSpace.standard(p, q)
    gen = stream(seed, "phi", p, q, kernel_dim)
    for _ in range(2000):
        ker = _kernel_candidate(space, gen, kernel_dim, bound, timelike_heavy=True)
        if kernel_dim:
            if rank(np.array(ker, dtype=object)) < kernel_dim:
                continue
            if signature_of_symmetric(gram_of(space, ker))[0] != 0:
                continue
        phi = self_adjoint_with_kernel(space, ker, gen, bound)
        if rank(phi.matrix) == space.dim - kernel_dim:
            return phi
    raise Unsatisfiable("random_admissible_phi exhausted its retries")


def random_phi_with_spacelike_kernel(p, q, kernel_dim, seed, bound=1):
    """Self-adjoint phi whose kernel (of the given dimension) contains a spacelike vector."""
    if kernel_dim < 1 or kernel_dim >= p + q:
        raise BadParams("kernel_dim must lie in [1, dim)")
    space = SignatureSpace.standard(p, q)
    gen = stream(seed, "bad-phi", p, q, kernel_dim)
    for _ in range(2000):
        ker = _kernel_candidate(space, gen, kernel_dim, bound, timelike_heavy=False)
        if rank(np.array(ker, dtype=object)) < kernel_dim:
            continue
        if signature_of_symmetric(gram_of(space, ker))[0] == 0:
            continue
        phi = self_adjoint_with_kernel(space, ker, gen, 3)
        if rank(phi.matrix) == space.dim - kernel_dim:
            return phi
    raise Unsatisfiable("random_phi_with_spacelike_kernel exhausted its retries")


def random_linear_map(domain, codomain, seed, bound=3, kernel_dim=None):
    """Random integer-built map A -> B whose kernel has no spacelike vector.

    The kernel dimension defaults to max(0, dim A - dim B) and must be at most
    p_A, the largest dimension of a subspace without spacelike vectors.
    """
    m, n = domain.dim, codomain.dim
    k = max(0, m - n) if kernel_dim is None else kernel_dim
    if k < max(0, m - n) or k > domain.p or k > m:
        raise BadParams(f"kernel_dim {k} impossible for a map {m} -> {n} with p_A = {domain.p}")
    gen = stream(seed, "map", domain.p, domain.q, codomain.p, codomain.q, k)
    for _ in range(2000):
        ker = _kernel_candidate(domain, gen, k, bound, timelike_heavy=True)
        if k:
            if rank(np.array(ker, dtype=object)) < k:
                continue
            if signature_of_symmetric(gram_of(domain, ker))[0] != 0:
                continue
            x = np.array(_integer_rows(kernel_basis(np.array(ker, dtype=object)).vectors()),
                         dtype=object)
        else:
            x = qarray(np.eye(m, dtype=int).tolist())
        y = qarray(_ints(gen, bound, (n, m - k)))
        mat = y @ x
        if rank(mat) == m - k:
            return LinearMap(domain, codomain, mat)
    raise Unsatisfiable("random_linear_map exhausted its retries")


def spanning_spacelike_family(space, seed, bound=2, max_rounds=6):
    """Spacelike basis s_1..s_n of the space with every span{s_1, s_i} spacelike.

    For a definite space this is the standard basis.  Otherwise integer
    vectors are drawn, widening the coefficient range on each failed round.
    """
    n = space.dim
    if space.p == 0 and space.is_standard:
        return [qarray([1 if i == j else 0 for j in range(n)]) for i in range(n)]
    if space.q < 2:
        raise SpanningFamilyFailed("need at least two spacelike directions")
    for rnd in range(max_rounds):
        b = bound * (rnd + 1)
        gen = stream(seed, "family", rnd)
        family = []
        for _ in range(200 * n):
            v = qarray(_ints(gen, b, n))
            if space.norm(v) <= 0:
                continue
            if rank(np.array(family + [v], dtype=object)) <= len(family):
                continue
            if family and not is_spacelike_subspace(space, [family[0], v]):
                continue
            family.append(v)
            if len(family) == n:
                return family
    raise SpanningFamilyFailed(f"no spanning spacelike family after {max_rounds} rounds")
