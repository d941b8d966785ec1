"""Choice of the truncation index ``k0`` from the partial-energy curve.

Two selectors are provided:

* :func:`detect_k0` locates plateaus of ``M_k`` below the onset ``k_a`` of
  the asymptotic growth and returns the upper end of the plateau closest
  to ``k_a``.
* :func:`k0_from_norm` returns the largest ``k`` with ``M_k <= C`` for a
  known squared norm ``C``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BelowFirstTermError, DomainError, NoPlateauError

FLATNESS_FLOOR = 1e-300


@dataclass(frozen=True)
class PlateauParams:
    """Knobs of the plateau detector.

    Parameters
    ----------
    delta : float
        Threshold on the relative first difference ``(M_{k+1} - M_k) / M_k``.
    L_min : int
        Plateaus with fewer samples are discarded.
    tau : float
        Asymptote-proximity factor: index ``k`` is in the asymptotic regime
        when ``M_k - M_{k-1} <= E(k) / tau``.
    """

    delta: float = 1e-3
    L_min: int = 5
    tau: float = 0.5

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if self.L_min < 1:
            raise DomainError(f"L_min must be >= 1, got {self.L_min}")
        if not 0 < self.tau <= 1:
            raise DomainError(f"tau must lie in (0, 1], got {self.tau}")


@dataclass(frozen=True)
class PlateauReport:
    """Outcome of :func:`detect_k0`.

    ``plateaus`` holds inclusive index intervals ``(lo, hi)``.  When the
    energy increments never settle onto the envelope inside the computed
    range, ``k_a_found`` is false and ``k_a`` is one past the last index.
    """

    plateaus: list
    k_a: int
    k0: int
    params: PlateauParams
    plateau_height: float
    k_a_found: bool = True
    weak: bool = False
    notes: list = field(default_factory=list)

    @property
    def chosen(self):
        return self.plateaus[-1]

    def csv_header(self):
        return ["k0", "k_a", "plateau_lo", "plateau_hi", "plateau_height"]

    def csv_row(self):
        lo, hi = self.chosen
        return [self.k0, self.k_a, lo, hi, self.plateau_height]

    def to_text(self):
        lines = [
            f"k0 = {self.k0}",
            f"k_a = {self.k_a}" + ("" if self.k_a_found else " (asymptotic onset not reached)"),
            f"plateau_height = {self.plateau_height!r}",
            "plateaus = " + ", ".join(f"[{lo}, {hi}]" for lo, hi in self.plateaus),
            f"weak_plateau = {self.weak}",
            f"delta = {self.params.delta!r}",
            f"L_min = {self.params.L_min}",
            f"tau = {self.params.tau!r}",
        ]
        lines += [f"note = {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def asymptotic_onset(M, E, tau=0.5):
    """Index from which the energy increments stay on the envelope scale.

    Returns the smallest ``k >= 1`` such that ``M_j - M_{j-1} <= E(j) / tau``
    for every ``j >= k`` in the range, or ``None`` if the last increment is
    still above that scale.
    """
    M = np.asarray(M, dtype=float)
    k = np.arange(M.size)
    env = E(k) if callable(E) else np.asarray(E, dtype=float)
    dM = np.diff(M, prepend=0.0)
    close = dM <= env / tau
    if M.size < 2 or not close[-1]:
        return None
    far = np.flatnonzero(~close[1:])
    return int(far[-1]) + 2 if far.size else 1


def find_plateaus(M, limit, delta, L_min):
    """Maximal flat runs of ``M`` using indices below ``limit``.

    A step ``k -> k+1`` is flat when ``(M_{k+1} - M_k) / max(M_k, floor)``
    is below ``delta``.  A run of flat steps from ``s`` to ``e`` is the
    plateau ``(s, e + 1)``; plateaus with fewer than ``L_min`` samples are
    dropped.
    """
    M = np.asarray(M, dtype=float)
    limit = min(limit, M.size)
    if limit < 2:
        return []
    steps = np.diff(M[:limit]) / np.maximum(M[:limit - 1], FLATNESS_FLOOR)
    flat = np.concatenate([steps < delta, [False]])
    plateaus = []
    start = None
    for k, f in enumerate(flat):
        if f and start is None:
            start = k
        elif not f and start is not None:
            lo, hi = start, k
            if hi - lo + 1 >= L_min:
                plateaus.append((lo, hi))
            start = None
    return plateaus


def detect_k0(M, E, params=None):
    """Truncation index from the plateau structure of ``M``.

    Parameters
    ----------
    M : array_like
        Non-decreasing partial energies ``M_0 .. M_K``.
    E : Envelope or array_like
        Asymptotic envelope of ``|c_k|^2``, callable on an index array or
        already tabulated.
    params : PlateauParams, optional

    Returns
    -------
    PlateauReport

    Raises
    ------
    NoPlateauError
        If no plateau of at least ``L_min`` samples lies below ``k_a``.
    """
    p = params or PlateauParams()
    M = np.asarray(M, dtype=float)
    if np.any(np.diff(M) < 0):
        raise DomainError("partial energies must be non-decreasing")
    k_a = asymptotic_onset(M, E, p.tau)
    found = k_a is not None
    if not found:
        k_a = M.size
    plateaus = find_plateaus(M, k_a, p.delta, p.L_min)
    if not plateaus:
        raise NoPlateauError(
            f"no plateau of length >= {p.L_min} below k_a = {k_a}", k_a=k_a)
    lo, hi = plateaus[-1]
    notes = []
    weak = hi - lo + 1 < 4 * p.L_min
    if weak:
        notes.append(f"chosen plateau [{lo}, {hi}] is short; k0 is uncertain")
    if len(plateaus) > 1:
        notes.append(f"{len(plateaus)} plateaus detected; the one closest to k_a was used")
    return PlateauReport(
        plateaus=plateaus, k_a=k_a, k0=hi, params=p,
        plateau_height=float(M[hi]), k_a_found=found, weak=weak, notes=notes)


def k0_from_norm(M, C):
    """Largest ``k`` with ``M_k <= C``.

    Raises
    ------
    BelowFirstTermError
        If already ``M_0 > C``.
    """
    if not C > 0:
        raise DomainError(f"norm bound must be positive, got {C}")
    M = np.asarray(M, dtype=float)
    if M[0] > C:
        raise BelowFirstTermError(f"M_0 = {M[0]!r} already exceeds C = {C!r}")
    return int(np.searchsorted(M, C, side="right")) - 1
