"""Mass-ladder rational functions and their partial-fraction structure.

The central object is the family of rational functions

    G_f(K, L; z) = (1/M_K) * prod_{l=K..L} 1/(1 - z/M_l)      for K <= L,
    G_f(K, L; z) = 0                                          for K >  L,

built on a ladder of distinct positive masses M_0..M_N.  The full function
(K, L) = (0, N) splits into single-pole terms with coefficients
c_K = eps_K * sigma_K**2 whose alternating signs and sum rules encode the
regularising cancellations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLadder, IndexOrder, IndexOutOfRange, PoleProximity

# Relative separation below which the residue denominators are unreliable.
SEPARATION_THRESHOLD = 1e-9
# Evaluations closer than this (relative to the mass) to a pole are refused.
POLE_GUARD = 1e-12


@dataclass(frozen=True)
class MassLadder:
    """Ordered masses M_0..M_N (natural units), all finite, positive, distinct."""

    masses: tuple

    def __post_init__(self):
        ms = tuple(float(m) for m in self.masses)
        if len(ms) == 0:
            raise ValueError("a ladder needs at least one mass")
        arr = np.array(ms)
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError(f"masses must be finite and strictly positive: {ms}")
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if abs(ms[i] - ms[j]) / max(ms[i], ms[j]) <= SEPARATION_THRESHOLD:
                    raise DegenerateLadder(
                        f"masses {ms[i]} and {ms[j]} are closer than the "
                        f"relative separation threshold {SEPARATION_THRESHOLD}"
                    )
        object.__setattr__(self, "masses", ms)

    @property
    def n_regulators(self):
        """N: the number of rungs above the physical mass."""
        return len(self.masses) - 1

    def __len__(self):
        return len(self.masses)

    def as_array(self):
        return np.array(self.masses)

    def sub(self, K, L):
        """The sub-ladder M_K..M_L (K <= L)."""
        self._check_index(K)
        self._check_index(L)
        if K > L:
            raise IndexOrder(f"sub-ladder needs K <= L, got K={K}, L={L}")
        return MassLadder(self.masses[K : L + 1])

    def _check_index(self, idx):
        if not 0 <= idx <= self.n_regulators:
            raise IndexOutOfRange(
                f"index {idx} outside 0..{self.n_regulators}"
            )


@dataclass(frozen=True, eq=False)
class PartialFractionDecomposition:
    """Single-pole coefficients c_K = eps_K * sigma_K**2 of G_f(0, N; z)."""

    coefficients: np.ndarray
    signs: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for field in ("coefficients", "signs", "weights"):
            arr = getattr(self, field)
            arr.setflags(write=False)


def _guard_poles(ladder, K, L, z):
    for l in range(K, L + 1):
        m = ladder.masses[l]
        if abs(z - m) <= POLE_GUARD * m:
            raise PoleProximity(
                f"z={z} within guard distance {POLE_GUARD:g}*M of pole M_{l}={m}"
            )


def g_f_scalar(ladder, K, L, z):
    """Evaluate G_f(K, L; z); exactly 0 for K > L."""
    ladder._check_index(K)
    ladder._check_index(L)
    if K > L:
        return 0j
    z = complex(z)
    _guard_poles(ladder, K, L, z)
    result = complex(1.0 / ladder.masses[K])
    for l in range(K, L + 1):
        result /= 1.0 - z / ladder.masses[l]
    return result


def decompose(ladder):
    """Partial fractions of G_f(0, N): c_K is the residue-at-M_K coefficient
    in sum_K c_K / (M_K - z), computed in closed form."""
    ms = ladder.as_array()
    n = ladder.n_regulators
    numer = float(np.prod(ms[1:])) if n > 0 else 1.0
    c = np.empty(n + 1)
    for K in range(n + 1):
        denom = 1.0
        for l in range(n + 1):
            if l != K:
                denom *= ms[l] - ms[K]
        if denom == 0.0:
            raise DegenerateLadder(f"coincident masses around M_{K}={ms[K]}")
        c[K] = numer / denom
    signs = np.where(c >= 0.0, 1, -1).astype(int)
    weights = np.sqrt(np.abs(c))
    return PartialFractionDecomposition(coefficients=c, signs=signs, weights=weights)


def recursion_residual(ladder, K, L, z):
    """Largest absolute defect of the two ladder recursion identities

        [(M_L - z)/M_L]     G_f(K, L; z) = G_f(K, L-1; z)
        [(M_K - z)/M_{K+1}] G_f(K, L; z) = G_f(K+1, L; z)

    The contract is max defect <= 1e-12 relative to |G_f(K, L; z)|."""
    ladder._check_index(K)
    ladder._check_index(L)
    if K >= L:
        raise IndexOrder(f"recursion needs K < L, got K={K}, L={L}")
    z = complex(z)
    _guard_poles(ladder, K, L, z)
    ms = ladder.masses
    g = g_f_scalar(ladder, K, L, z)
    r_down = abs((ms[L] - z) / ms[L] * g - g_f_scalar(ladder, K, L - 1, z))
    r_up = abs((ms[K] - z) / ms[K + 1] * g - g_f_scalar(ladder, K + 1, L, z))
    return max(r_down, r_up)


def sum_rule_residuals(pfd, ladder):
    """Normalised moments |sum_K c_K M_K^j| / sum_K |c_K| M_K^j for
    j = 0..N-1; all must vanish (to 1e-12).  Empty for N = 0."""
    ms = ladder.as_array()
    c = pfd.coefficients
    out = []
    for j in range(ladder.n_regulators):
        terms = c * ms**j
        out.append(float(abs(terms.sum()) / np.abs(terms).sum()))
    return out
