"""Dissipative generators in superoperator form and their Jordan structure.

Density matrices are flattened row by row, so the coherent part of the
generator is -i (H x I - I x H^T) and each jump operator G contributes
G x conj(G) - (G*G x I + I x (G*G)^T) / 2.  All structural statements --
eigenvalue curves, block signatures, adiabaticity metrics -- refer to the
Jordan decomposition of this matrix, not to its (generally incomplete)
eigenbasis.

Two bookkeeping conventions matter downstream.  Left chain vectors are the
rows of the inverse similarity, dual to the right chains under the plain
dot product, which is exactly the Hilbert-Schmidt pairing once the
conjugation is folded into the row.  And every accumulated exponent is
stored as an integral over the schedule variable s; the total time T
multiplies it only at evaluation points, so one track serves any T.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import linear_sum_assignment

from ._rk45 import integrate
from .closed import Trajectory, _grid_derivative, _validate_grid
from .errors import (
    ConditioningError,
    ConfigError,
    CrossingError,
    InputError,
)
from .numkit import (
    JordanForm,
    is_hermitian,
    jordan_decompose,
    jordan_matrix_from_blocks,
)
from .schedules import GeneratorSpec

__all__ = [
    "build_supermatrix",
    "SuperAssembler",
    "integrate_master",
    "unitary_embedding_jordan",
    "JordanTrack",
    "jordan_track",
    "JordanCoefficients",
    "expand_jordan_coefficients",
    "OpenCondition",
    "open_condition_metric",
    "condition_term_count",
    "OpenTimeCondition",
    "open_time_condition",
    "time_term_count",
    "classify_regime",
]

_EXP_CAP = 700.0  # largest real exponent handed to np.exp


def _coherent_part(H):
    D = H.shape[0]
    eye = np.eye(D)
    return -1j * (np.kron(H, eye) - np.kron(eye, H.T))


def _jump_part(G):
    D = G.shape[0]
    eye = np.eye(D)
    GG = G.conj().T @ G
    return (np.kron(G, G.conj())
            - 0.5 * np.kron(GG, eye)
            - 0.5 * np.kron(eye, GG.T))


def build_supermatrix(H, gammas=()):
    """Assemble the generator matrix from H and a list of jump operators."""
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InputError(f"Hamiltonian must be square, got shape {H.shape}")
    if not is_hermitian(H, 1e-12):
        raise InputError("Hamiltonian part must be Hermitian to 1e-12")
    L = _coherent_part(H)
    for G in gammas:
        G = np.asarray(G, dtype=complex)
        if G.shape != H.shape:
            raise InputError(
                f"jump operator shape {G.shape} does not match {H.shape}")
        L = L + _jump_part(G)
    return L


class SuperAssembler:
    """Precomputed Kronecker blocks of L(s) for one generator spec.

    Each Hamiltonian term contributes a fixed matrix scaled by its
    envelope; each jump term is quadratic in its envelope because the
    operator enters the dissipator twice.  The derivative follows by the
    product rule on the envelopes, so no supermatrix is ever differenced.
    """

    def __init__(self, spec: GeneratorSpec):
        if spec.kind != "open":
            raise ConfigError("supermatrix assembly needs an open-kind spec")
        self.spec = spec
        self.dim = spec.dimension ** 2
        self._hparts = [(env, _coherent_part(M))
                        for M, env in spec.hamiltonian_terms]
        self._jparts = [(env, _jump_part(M))
                        for M, env in spec.lindblad_terms]

    def _env_derivative(self, env, s):
        if self.spec.derivative_mode == "analytic":
            return env.derivative(s)
        h = self.spec.fd_step
        lo, hi = max(0.0, s - h), min(1.0, s + h)
        return (env.value(hi) - env.value(lo)) / (hi - lo)

    def matrix(self, s: float) -> np.ndarray:
        L = np.zeros((self.dim, self.dim), dtype=complex)
        for env, part in self._hparts:
            L += env.value(s) * part
        for env, part in self._jparts:
            L += env.value(s) ** 2 * part
        return L

    def derivative(self, s: float) -> np.ndarray:
        dL = np.zeros((self.dim, self.dim), dtype=complex)
        for env, part in self._hparts:
            dL += self._env_derivative(env, s) * part
        for env, part in self._jparts:
            dL += 2.0 * env.value(s) * self._env_derivative(env, s) * part
        return dL


def integrate_master(spec: GeneratorSpec, T: float, rho0, grid=None,
                     tol=(1e-8, 1e-10)) -> Trajectory:
    """Propagate d|rho>>/ds = T L(s) |rho>> from a validated initial state.

    The initial density matrix must be Hermitian, unit trace, and positive
    semidefinite within 1e-10; along the trajectory these properties are
    left to the integrator and can be inspected afterwards.
    """
    asm = SuperAssembler(spec)
    if not T > 0:
        raise InputError(f"total time must be positive, got {T}")
    rho0 = np.asarray(rho0, dtype=complex)
    D = spec.dimension
    if rho0.shape != (D, D):
        raise InputError(f"initial state must be {D}x{D}, got {rho0.shape}")
    if not is_hermitian(rho0, 1e-10):
        raise InputError("initial state must be Hermitian to 1e-10")
    if abs(np.trace(rho0) - 1.0) > 1e-10:
        raise InputError("initial state must have unit trace to 1e-10")
    lowest = float(np.min(np.linalg.eigvalsh(0.5 * (rho0 + rho0.conj().T))))
    if lowest < -1e-10:
        raise InputError(
            f"initial state has negative eigenvalue {lowest:.3e}")

    g = np.linspace(0.0, 1.0, 201) if grid is None else _validate_grid(grid)
    rtol, atol = tol

    def rhs(s, y):
        return T * (asm.matrix(s) @ y)

    res = integrate(rhs, rho0.reshape(-1), g, rtol=rtol, atol=atol)
    return Trajectory(g, res.y, float(T), rtol, atol, res.steps,
                      res.rhs_evals)


def unitary_embedding_jordan(spec: GeneratorSpec):
    """Analytic Jordan factory for a generator with no jump terms.

    The supermatrix of a closed system is normal, with eigenvalues
    -i (E_n - E_k) and orthonormal eigenvectors vec(|n><k|), so the
    decomposition can be written down from one Hermitian eigenproblem.
    Returns a callable s -> JordanForm for :func:`jordan_track`.
    """
    if spec.kind != "open" or spec.lindblad_terms:
        raise ConfigError(
            "the embedding factory applies to open specs without jump terms")
    asm = SuperAssembler(spec)
    D = spec.dimension

    def factory(s: float) -> JordanForm:
        H = np.zeros((D, D), dtype=complex)
        for M, env in spec.hamiltonian_terms:
            H += env.value(s) * M
        energies, vecs = np.linalg.eigh(H)
        entries = []
        for n in range(D):
            for k in range(D):
                lam = -1j * (energies[n] - energies[k])
                entries.append((lam, np.kron(vecs[:, n], vecs[:, k].conj())))
        entries.sort(key=lambda e: (-e[0].real, -e[0].imag))
        S = np.column_stack([col for _, col in entries])
        blocks = tuple((lam, 1) for lam, _ in entries)
        Sinv = S.conj().T
        J = jordan_matrix_from_blocks(blocks)
        resid = float(np.max(np.abs(Sinv @ asm.matrix(s) @ S - J)))
        return JordanForm(blocks, S, Sinv, resid)

    return factory


def _cluster_labels(lams, tol):
    """Transitive-closure grouping of eigenvalues within tol of each other."""
    n = len(lams)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(lams[a] - lams[b]) <= tol:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    roots = {}
    labels = []
    for a in range(n):
        r = find(a)
        labels.append(roots.setdefault(r, len(roots)))
    return tuple(labels)


@dataclass(frozen=True)
class JordanTrack:
    """Jordan structure of L(s) stitched into continuous curves.

    Block b keeps the same index at every grid point: ``lambdas[i, b]`` is
    its eigenvalue curve, ``forms[i]`` holds the aligned decomposition, and
    ``lamint`` accumulates the eigenvalue integrals over s.  ``clusters``
    groups blocks that share an eigenvalue everywhere; adiabaticity
    statements only compare blocks from different groups.
    """

    grid: np.ndarray
    forms: tuple
    lambdas: np.ndarray
    sizes: tuple
    clusters: tuple
    lamint: np.ndarray
    residual_max: float

    @property
    def nblocks(self) -> int:
        return len(self.sizes)

    @property
    def dim(self) -> int:
        return self.forms[0].dim

    @property
    def signature(self) -> tuple:
        return tuple(sorted(self.sizes, reverse=True))

    def omega(self, b: int, a: int) -> np.ndarray:
        """Eigenvalue difference curve lambda_b(s) - lambda_a(s)."""
        return self.lambdas[:, b] - self.lambdas[:, a]

    def omega_integral(self, b: int, a: int) -> np.ndarray:
        """Accumulated int_0^s omega ds'; multiply by T for physical time."""
        return self.lamint[:, b] - self.lamint[:, a]

    def pairs(self):
        """Ordered block pairs (a, b) whose eigenvalue groups differ."""
        for a in range(self.nblocks):
            for b in range(self.nblocks):
                if self.clusters[a] != self.clusters[b]:
                    yield a, b

    def export(self) -> dict:
        points = []
        for i, s in enumerate(self.grid):
            points.append({
                "s": float(s),
                "eigenvalues": [[float(l.real), float(l.imag)]
                                for l in self.lambdas[i]],
                "block_sizes": list(self.sizes),
                "residual": float(self.forms[i].residual),
            })
        return {"signature": list(self.signature), "points": points}


def _permute_form(jf: JordanForm, order) -> JordanForm:
    slices = [jf.block_slice(b) for b in order]
    cols = np.concatenate([np.arange(sl.start, sl.stop) for sl in slices])
    blocks = tuple(jf.blocks[b] for b in order)
    return JordanForm(blocks, jf.similarity[:, cols],
                      jf.similarity_inv[cols, :], jf.residual)


def _phase_align(jf: JordanForm, anchors) -> JordanForm:
    S = jf.similarity.copy()
    Sinv = jf.similarity_inv.copy()
    for b in range(jf.block_count):
        sl = jf.block_slice(b)
        z = np.vdot(anchors[b], S[:, sl.start])
        if abs(z) > 1e-12:
            phase = z / abs(z)
            S[:, sl] *= phase
            Sinv[sl, :] /= phase
    return JordanForm(jf.blocks, S, Sinv, jf.residual)


def _segment_collision(fa, fb, ga, gb, tol):
    """Closest approach of two eigenvalue curves over one grid interval."""
    f0, df = fa - fb, (ga - gb) - (fa - fb)
    denom = abs(df) ** 2
    t = 0.0 if denom == 0.0 else min(1.0, max(0.0, -(f0 * df.conjugate()).real
                                              / denom))
    return abs(f0 + t * df), t


def jordan_track(spec: GeneratorSpec, grid, cluster_tol: float = 1e-7,
                 rank_tol: float = 1e-9, cond_cap: float = 1e12,
                 collision_tol: float = 1e-8, analytic=None) -> JordanTrack:
    """Decompose L(s) pointwise and glue the blocks into labelled curves.

    Blocks are matched to the previous point by eigenvalue distance, with
    the block size and the overlap of leading vectors breaking ties, and
    each chain is rephased so its leading vector stays aligned.  Any change
    of block signature or eigenvalue grouping, and any close approach of
    curves from different groups, raises :class:`CrossingError` naming the
    schedule point.

    ``analytic`` may supply a callable s -> JordanForm to replace the
    numerical decomposition, for generators whose structure is known in
    closed form.
    """
    g = _validate_grid(grid)
    if analytic is None:
        asm = SuperAssembler(spec)

        def factory(s):
            return jordan_decompose(asm.matrix(s), cluster_tol=cluster_tol,
                                    rank_tol=rank_tol, cond_cap=cond_cap)
    else:
        factory = analytic

    forms = [factory(g[0])]
    sizes = forms[0].sizes
    nb = len(sizes)
    clusters = _cluster_labels(forms[0].eigenvalues, cluster_tol)

    def partition(labels):
        groups = {}
        for b, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(b)
        return {frozenset(members) for members in groups.values()}

    base_partition = partition(clusters)

    for i in range(1, g.size):
        jf = factory(g[i])
        if jf.block_count != nb:
            raise CrossingError(
                f"block count changed from {nb} to {jf.block_count} at "
                f"s = {g[i]:.6f}", s=float(g[i]))
        prev = forms[-1]
        cost = np.empty((nb, nb))
        for a in range(nb):
            la = prev.blocks[a][0]
            va = prev.similarity[:, prev.block_slice(a).start]
            for b in range(nb):
                lb = jf.blocks[b][0]
                vb = jf.similarity[:, jf.block_slice(b).start]
                mismatch = 0.0 if prev.blocks[a][1] == jf.blocks[b][1] else 1e6
                cost[a, b] = (abs(la - lb) + mismatch
                              + 1e-2 * (1.0 - abs(np.vdot(va, vb))))
        rows, cols = linear_sum_assignment(cost)
        order = [int(cols[np.nonzero(rows == a)[0][0]]) for a in range(nb)]
        jf = _permute_form(jf, order)
        if jf.sizes != sizes:
            raise CrossingError(
                f"block signature changed from {sizes} to {jf.sizes} at "
                f"s = {g[i]:.6f}", s=float(g[i]), signature=jf.sizes)
        labels = _cluster_labels(jf.eigenvalues, cluster_tol)
        if partition(labels) != base_partition:
            raise CrossingError(
                f"eigenvalue grouping changed at s = {g[i]:.6f}",
                s=float(g[i]))
        anchors = [prev.similarity[:, prev.block_slice(b).start]
                   for b in range(nb)]
        forms.append(_phase_align(jf, anchors))

    lambdas = np.array([jf.eigenvalues for jf in forms])
    for a in range(nb):
        for b in range(a + 1, nb):
            if clusters[a] == clusters[b]:
                continue
            for i in range(g.size - 1):
                dist, t = _segment_collision(lambdas[i, a], lambdas[i, b],
                                             lambdas[i + 1, a],
                                             lambdas[i + 1, b], collision_tol)
                if dist < collision_tol:
                    s_hit = float(g[i] + t * (g[i + 1] - g[i]))
                    raise CrossingError(
                        f"eigenvalue curves of blocks {a} and {b} approach "
                        f"within {dist:.2e} near s = {s_hit:.6f}",
                        s=s_hit, pair=(a, b), distance=float(dist))

    lamint = cumulative_trapezoid(lambdas, g, axis=0, initial=0.0)
    residual = float(max(jf.residual for jf in forms))
    return JordanTrack(g, tuple(forms), lambdas, sizes, clusters, lamint,
                       residual)


@dataclass(frozen=True)
class JordanCoefficients:
    """Block-resolved expansion of a state trajectory.

    ``raw[(b, j)]`` is the bare left-chain projection of |rho(s)>>;
    ``p[(b, j)]`` removes the accumulated eigenvalue exponential and doubles
    it, the quantity whose drift the time conditions bound.  Entries whose
    exponent overflows are set to inf; reconstruction uses the raw
    projections, which never involve the exponential.
    """

    grid: np.ndarray
    total_time: float
    p: dict
    raw: dict
    track: JordanTrack = field(repr=False)

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.grid.size, self.track.dim), dtype=complex)
        for (b, j), proj in self.raw.items():
            for i in range(self.grid.size):
                col = self.track.forms[i].right_vectors(b)[:, j]
                out[i] += proj[i] * col
        return out


def expand_jordan_coefficients(rho_traj: Trajectory, jtrack: JordanTrack,
                               T: float) -> JordanCoefficients:
    """Project a trajectory onto the left chains and strip the exponentials."""
    if not np.array_equal(rho_traj.grid, jtrack.grid):
        raise InputError("trajectory and track grids differ")
    raw, p = {}, {}
    for b in range(jtrack.nblocks):
        expo = -T * jtrack.lamint[:, b]
        for j in range(jtrack.sizes[b]):
            proj = np.array([
                jtrack.forms[i].left_vectors(b)[j] @ rho_traj.states[i]
                for i in range(jtrack.grid.size)
            ])
            raw[(b, j)] = proj
            grow = np.where(expo.real > _EXP_CAP, np.inf + 0j,
                            np.exp(np.where(expo.real > _EXP_CAP, 0, expo)))
            p[(b, j)] = 2.0 * grow * proj
    return JordanCoefficients(jtrack.grid, float(T), p, raw, jtrack)


def condition_term_count(n_alpha: int, i: int, j: int) -> int:
    """Number of summands in the per-pair adiabaticity metric."""
    if n_alpha < 1 or not (0 <= i < n_alpha) or j < 0:
        raise InputError(
            f"invalid chain indices n_alpha={n_alpha}, i={i}, j={j}")
    return math.comb(n_alpha - i + 1 + j, 1 + j) - 1


def time_term_count(n_alpha: int, n_beta: int, i: int, Lambda: int) -> int:
    """Number of summands in the per-coefficient time condition."""
    if min(n_alpha, n_beta) < 1 or not (0 <= i < n_alpha) or Lambda < 0:
        raise InputError(
            f"invalid indices n_alpha={n_alpha}, n_beta={n_beta}, i={i}")
    return Lambda * (math.comb(n_alpha + n_beta - i + 1, n_beta)
                     - n_beta - 1)


def _pair_elements(jtrack, dLs, a, b):
    """B[i][r, c] = (left chain r of block a) dL/ds (right chain c of b)."""
    out = []
    for i in range(jtrack.grid.size):
        jf = jtrack.forms[i]
        out.append(jf.left_vectors(a) @ dLs[i] @ jf.right_vectors(b))
    return np.array(out)


def _metric_sum(B, omega, na, ii, jj):
    """Signed nested sum for one (i, j) pair, and its largest single term.

    The tuple sums over transition multi-indices collapse to a binomial
    weight per total shift, because each summand depends on the k's only
    through their sum.
    """
    total = np.zeros(B.shape[0], dtype=complex)
    largest = 0.0
    for pp in range(1, na - ii + 1):
        for sig in range(jj + 1):
            mult = math.comb(sig + pp - 1, pp - 1)
            term = B[:, ii + pp - 1, jj - sig] / omega ** (pp + sig)
            total += mult * (-1.0) ** sig * term
            largest = max(largest, float(np.max(np.abs(term))))
    return total, largest


def _time_bracket(pcurves, B, omega, osc, grid, na, ii):
    """Boundary-minus-integral brackets for one source block.

    Returns the signed sum over chain positions and transition tuples, the
    integral part alone, the largest single bracket magnitude, and the
    number of summed terms.
    """
    npts = grid.size
    total = np.zeros(npts, dtype=complex)
    integral = np.zeros(npts, dtype=complex)
    largest = 0.0
    nterms = 0
    for jj, pcurve in enumerate(pcurves):
        for pp in range(1, na - ii + 1):
            for sig in range(jj + 1):
                mult = math.comb(sig + pp - 1, pp - 1)
                V = pcurve * B[:, ii + pp - 1, jj - sig] \
                    / omega ** (pp + sig + 1)
                dV = _grid_derivative(V, grid)
                intpart = cumulative_trapezoid(osc * dV, grid, initial=0.0)
                term = V[0] - V * osc + intpart
                sign = mult * (-1.0) ** sig
                total += sign * term
                integral += sign * intpart
                largest = max(largest, float(np.max(np.abs(term))))
                nterms += mult
    return total, integral, largest, nterms


def _require_separated(omega, a, b, grid):
    small = np.abs(omega) < 1e-10
    if np.any(small):
        i = int(np.argmax(small))
        raise ConditioningError(
            f"eigenvalue difference of blocks {b} and {a} is below 1e-10 "
            f"at s = {grid[i]:.6f}; the condition metric diverges",
            s=float(grid[i]), pair=(a, b))


@dataclass(frozen=True)
class OpenCondition:
    """Per-(alpha, beta, i, j) adiabaticity metric values and their bounds.

    ``metrics`` holds the exact nested sums, ``simplified`` the count-times-
    largest-term bound that dominates each of them, and ``counts`` the
    number of summands entering the nested sum.
    """

    metrics: dict
    simplified: dict
    counts: dict
    max_metric: float
    max_key: tuple

    def metric(self, a, b, i, j) -> float:
        return self.metrics[(a, b, i, j)]


def open_condition_metric(jtrack: JordanTrack, spec: GeneratorSpec,
                          grid=None) -> OpenCondition:
    """Evaluate the block-to-block adiabaticity metric on the track grid.

    For source block beta and target chain position i of block alpha, each
    summand couples a left chain vector of alpha to a right chain vector of
    beta through dL/ds and divides by a power of the eigenvalue difference;
    the metric is the worst absolute value of the signed sum over the grid.
    """
    g = jtrack.grid if grid is None else _validate_grid(grid)
    if not np.array_equal(g, jtrack.grid):
        raise InputError("metric grid must match the track grid")
    asm = SuperAssembler(spec)
    dLs = [asm.derivative(s) for s in g]

    metrics, simplified, counts = {}, {}, {}
    worst, worst_key = 0.0, None
    for a, b in jtrack.pairs():
        omega = jtrack.omega(b, a)
        _require_separated(omega, a, b, g)
        B = _pair_elements(jtrack, dLs, a, b)
        na, nb_ = jtrack.sizes[a], jtrack.sizes[b]
        for ii in range(na):
            for jj in range(nb_):
                total, largest = _metric_sum(B, omega, na, ii, jj)
                key = (a, b, ii, jj)
                metrics[key] = float(np.max(np.abs(total)))
                counts[key] = condition_term_count(na, ii, jj)
                simplified[key] = counts[key] * largest
                if metrics[key] >= worst:
                    worst, worst_key = metrics[key], key
    return OpenCondition(metrics, simplified, counts, worst, worst_key)


@dataclass(frozen=True)
class OpenTimeCondition:
    """Total-time bounds per coefficient (alpha, i) over a grid of T values.

    ``bounds[(a, i)][k]`` is the right-hand side the total time must beat
    at ``T_grid[k]`` (scaled by eta for the verdict), ``integral_terms``
    isolates the oscillatory integral contribution, and ``simplified`` is
    the count-times-largest-term bound.  ``threshold_T`` is the smallest
    grid value satisfying every coefficient condition; ``crossover_T`` is
    the last satisfying value before a later failure, when the condition
    holds only on a finite window.
    """

    T_grid: tuple
    eta: float
    bounds: dict
    integral_terms: dict
    simplified: dict
    satisfied: dict
    satisfied_all: tuple
    threshold_T: float
    crossover_T: float


def open_time_condition(jtrack: JordanTrack, spec: GeneratorSpec, coeffs,
                        T_grid, eta: float = 10.0) -> OpenTimeCondition:
    """Evaluate the time condition for every coefficient over T_grid.

    ``coeffs`` is either one :class:`JordanCoefficients` used for every T
    or a callable T -> JordanCoefficients for self-consistent evaluation.
    A real part of the accumulated exponent beyond the overflow cap makes
    the bound infinite rather than raising.
    """
    T_vals = tuple(float(T) for T in T_grid)
    if not T_vals or any(T <= 0 for T in T_vals):
        raise InputError("T_grid must hold positive total times")
    g = jtrack.grid
    asm = SuperAssembler(spec)
    dLs = [asm.derivative(s) for s in g]

    pair_B, pair_omega = {}, {}
    for a, b in jtrack.pairs():
        omega = jtrack.omega(b, a)
        _require_separated(omega, a, b, g)
        pair_B[(a, b)] = _pair_elements(jtrack, dLs, a, b)
        pair_omega[(a, b)] = omega

    bounds, integrals, simplified, satisfied = {}, {}, {}, {}
    coeff_keys = [(a, ii) for a in range(jtrack.nblocks)
                  for ii in range(jtrack.sizes[a])]
    for k, T in enumerate(T_vals):
        cset = coeffs(T) if callable(coeffs) else coeffs
        for a, ii in coeff_keys:
            na = jtrack.sizes[a]
            total = np.zeros(g.size, dtype=complex)
            integral = np.zeros(g.size, dtype=complex)
            largest = 0.0
            nterms = 0
            overflow = False
            for b in range(jtrack.nblocks):
                if jtrack.clusters[b] == jtrack.clusters[a]:
                    continue
                expo = T * jtrack.omega_integral(b, a)
                if np.max(expo.real) > _EXP_CAP:
                    overflow = True
                    break
                osc = np.exp(expo)
                pcurves = [cset.p[(b, jj)]
                           for jj in range(jtrack.sizes[b])]
                part, ipart, big, cnt = _time_bracket(
                    pcurves, pair_B[(a, b)], pair_omega[(a, b)], osc, g,
                    na, ii)
                total += part
                integral += ipart
                largest = max(largest, big)
                nterms += cnt
            key = (a, ii)
            if overflow:
                bounds.setdefault(key, []).append(np.inf)
                integrals.setdefault(key, []).append(np.inf)
                simplified.setdefault(key, []).append(np.inf)
                satisfied.setdefault(key, []).append(False)
            else:
                bound = float(np.max(np.abs(total)))
                bounds.setdefault(key, []).append(bound)
                integrals.setdefault(key, []).append(
                    float(np.max(np.abs(integral))))
                simplified.setdefault(key, []).append(nterms * largest)
                satisfied.setdefault(key, []).append(T >= eta * bound)

    bounds = {k: tuple(v) for k, v in bounds.items()}
    integrals = {k: tuple(v) for k, v in integrals.items()}
    simplified = {k: tuple(v) for k, v in simplified.items()}
    satisfied = {k: tuple(v) for k, v in satisfied.items()}
    sat_all = tuple(all(satisfied[k][idx] for k in satisfied)
                    for idx in range(len(T_vals)))
    threshold = next((T_vals[idx] for idx in range(len(T_vals))
                      if sat_all[idx]), None)
    crossover = None
    for idx in range(len(T_vals) - 1):
        if sat_all[idx] and not all(sat_all[idx + 1:]):
            crossover = T_vals[idx]
    return OpenTimeCondition(T_vals, float(eta), bounds, integrals,
                             simplified, satisfied, sat_all, threshold,
                             crossover)


def classify_regime(jtrack: JordanTrack, coeffs: JordanCoefficients,
                    spec: GeneratorSpec, re_tol: float = 1e-9,
                    v_tol: float = 1e-12,
                    comp_factor: float = 10.0) -> dict:
    """Label each unordered block pair by the fate of its time condition.

    oscillatory-RL   purely imaginary exponent, nonvanishing frequency:
                     the integral term dies out as T grows
    decaying         one direction has a strictly decaying exponent and
                     the growing direction carries no coupling weight
    compensated      a growing exponent offset by decaying coefficients
    finite-window    uncompensated uniform growth: the condition can hold
                     only below some crossover time
    guaranteed       no coupling at all between the blocks
    model-dependent  none of the clean shapes applies
    """
    asm = SuperAssembler(spec)
    g = jtrack.grid
    dLs = [asm.derivative(s) for s in g]
    T = coeffs.total_time

    def orientation(a, b):
        """Growth, coupling weight, and compensation for source block b."""
        rew = jtrack.omega_integral(b, a).real
        B = _pair_elements(jtrack, dLs, a, b)
        vmax = 0.0
        for jj in range(jtrack.sizes[b]):
            pmag = np.abs(coeffs.p[(b, jj)])
            finite = pmag[np.isfinite(pmag)]
            if finite.size:
                weight = float(np.max(np.abs(B[np.isfinite(pmag)][:, :, jj])
                                      * finite[:, None]))
                vmax = max(vmax, weight)
        growth = np.exp(np.minimum(T * rew, _EXP_CAP))
        q = np.zeros(g.size)
        for jj in range(jtrack.sizes[b]):
            pmag = np.abs(coeffs.p[(b, jj)])
            q = np.maximum(q, np.where(np.isfinite(pmag),
                                       pmag * growth, np.inf))
        comp = bool(np.max(q) <= comp_factor * max(q[0], 1e-300))
        uniform = bool(np.all(jtrack.omega(b, a).real >= -re_tol))
        return float(np.max(rew)), vmax, comp, uniform

    labels = {}
    for a in range(jtrack.nblocks):
        for b in range(a + 1, jtrack.nblocks):
            if jtrack.clusters[a] == jtrack.clusters[b]:
                continue
            sides = {(a, b): orientation(a, b), (b, a): orientation(b, a)}
            danger = [o for o, (rmax, vmax, comp, _) in sides.items()
                      if rmax > re_tol and vmax > v_tol and not comp]
            offset = [o for o, (rmax, vmax, comp, _) in sides.items()
                      if rmax > re_tol and vmax > v_tol and comp]
            if danger:
                uniform = all(sides[o][3] for o in danger)
                labels[(a, b)] = "finite-window" if uniform \
                    else "model-dependent"
            elif offset:
                labels[(a, b)] = "compensated"
            elif (max(np.max(np.abs(jtrack.omega_integral(b, a).real)),
                      0.0) <= re_tol
                  and np.min(np.abs(jtrack.omega(b, a).imag)) > 1e-10):
                labels[(a, b)] = "oscillatory-RL"
            elif any(np.all(jtrack.omega_integral(src, tgt).real[1:] < 0.0)
                     for tgt, src in ((a, b), (b, a))):
                labels[(a, b)] = "decaying"
            elif all(v <= v_tol for _, v, _, _ in sides.values()):
                labels[(a, b)] = "guaranteed"
            else:
                labels[(a, b)] = "model-dependent"
    return labels
