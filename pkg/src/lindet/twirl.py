"""Pauli twirling of superoperators and Trotterized twirled evolution.

In the Pauli transfer basis the twirl is exactly the diagonal projection, so
the cheap implementation zeroes off-diagonal entries; the brute-force average
over all 4^n Pauli conjugations is kept as an oracle for small n.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, DomainError
from .model import Lindbladian
from .paulis import chi_table
from .superop import SuperOperator, compose, diamond_bounds, exp, from_lindbladian

TWIRL_AVERAGE_MAX_QUBITS = 3


def twirl_exact(s: SuperOperator) -> SuperOperator:
    """Diagonal projection of the transfer matrix; idempotent."""
    return SuperOperator(s.n, np.diag(np.diag(s.mat)))


def twirl_average(s: SuperOperator) -> SuperOperator:
    """Uniform average over all 4^n Pauli conjugations (oracle for twirl_exact).

    Conjugating by the Pauli with index p multiplies transfer-matrix entry
    (i, j) by chi(p, i) chi(p, j), so the average is an entrywise mask.
    """
    if s.n > TWIRL_AVERAGE_MAX_QUBITS:
        raise CapacityError(
            f"brute-force twirl averages 4^n conjugations; n={s.n} exceeds "
            f"{TWIRL_AVERAGE_MAX_QUBITS}"
        )
    signs = chi_table(s.n).astype(float)
    acc = np.zeros_like(s.mat)
    for row in signs:
        acc += (row[:, None] * row[None, :]) * s.mat
    return SuperOperator(s.n, acc / signs.shape[0])


def twirled_step(
    lind: Lindbladian, tau: float, generator: SuperOperator | None = None
) -> SuperOperator:
    """One twirled short-time slice: the diagonal projection of e^(tau L).

    CPTP, since twirling is a convex mixture of unitary conjugations composed
    with a channel. A precomputed generator realization may be supplied to
    skip the rebuild (and its default capacity check).
    """
    if tau < 0:
        raise DomainError(f"slice time must be non-negative, got {tau}")
    if generator is None:
        generator = from_lindbladian(lind)
    return twirl_exact(exp(generator, tau))


def trotterized_twirled(
    lind: Lindbladian,
    tau: float,
    m: int,
    generator: SuperOperator | None = None,
) -> SuperOperator:
    """m-fold composition of the twirled slice (matrix power of its PTM)."""
    if m < 1:
        raise DomainError(f"slice count must be at least 1, got m={m}")
    step = twirled_step(lind, tau, generator)
    return SuperOperator(lind.n, np.linalg.matrix_power(step.mat, m))


def trotter_error_bound(
    lind: Lindbladian,
    tau: float,
    m: int,
    generator: SuperOperator | None = None,
) -> float:
    """Upper bound on ||(twirled slice)^m - e^(tau m T(L))||_diamond.

    Evaluates m (tau^2/2 ||T(L^2) - (T(L))^2||_dia + tau^3/3 ||L||_dia^3) with
    each diamond norm replaced by its computable upper bound, so the result
    stays a valid (looser) bound.
    """
    if tau < 0:
        raise DomainError(f"slice time must be non-negative, got {tau}")
    if m < 1:
        raise DomainError(f"slice count must be at least 1, got m={m}")
    if tau == 0:
        return 0.0
    gen = from_lindbladian(lind) if generator is None else generator
    twirled_of_square = twirl_exact(compose(gen, gen))
    square_of_twirled = compose(twirl_exact(gen), twirl_exact(gen))
    defect_ub = diamond_bounds(twirled_of_square - square_of_twirled)[1]
    gen_ub = diamond_bounds(gen)[1]
    return m * (tau**2 / 2.0 * defect_ub + tau**3 / 3.0 * gen_ub**3)
