"""Audit of the 45-entry pair-propagation table and the map built on it.

The load-bearing test here re-derives the table mechanically: the joint
map must be the tensor product of two copies of the single-partition
entry-wise map, so expanding that product term by term has to reproduce
the static table exactly, coefficient names and source indices included.
A numeric comparison on random states backs the symbolic one.
"""

import warnings

import numpy as np
import pytest

from djcm.evolution import (
    PAIR_RULES,
    identical_partitions,
    min_eigenvalue,
    propagate_pair,
)
from djcm.linalg import kron
from djcm.propagator import JcmParams, coefficients, propagate_single
from djcm.states import initial_state

P_MARKOV = JcmParams(omega0=0.0, omega=1.0, gamma0=1.0, lam=5.0)
P_MEMORY = JcmParams(omega0=0.0, omega=1.0, gamma0=1.0, lam=0.05)
P_STIFF = JcmParams(omega0=0.0, omega=50.0, gamma0=1.0, lam=5.0)

# single-partition entry-wise map, 1-based level indices
_SINGLE_RULES = {
    (1, 1): (("a11", (1, 1)),),
    (2, 2): (("a22", (2, 2)),),
    (3, 3): (("a33_11", (1, 1)), ("a33_22", (2, 2)), ("a33_33", (3, 3))),
    (1, 2): (("a12", (1, 2)),),
    (1, 3): (("a13", (1, 3)),),
    (2, 3): (("a23", (2, 3)),),
    (2, 1): (("a21", (2, 1)),),
    (3, 1): (("a31", (3, 1)),),
    (3, 2): (("a32", (3, 2)),),
}


def _derive_pair_rules():
    """Expand the tensor product of two single-partition maps."""
    derived = {}
    for ia in range(1, 4):
        for ja in range(1, 4):
            for ib in range(1, 4):
                for jb in range(1, 4):
                    row = 3 * (ia - 1) + ib
                    col = 3 * (ja - 1) + jb
                    if col < row:
                        continue  # table stores diagonal + upper triangle
                    terms = []
                    for name_a, (ka, la) in _SINGLE_RULES[(ia, ja)]:
                        for name_b, (kb, lb) in _SINGLE_RULES[(ib, jb)]:
                            src = (3 * (ka - 1) + kb, 3 * (la - 1) + lb)
                            terms.append((name_a, name_b, src))
                    derived[(row, col)] = frozenset(terms)
    return derived


def _random_state(rng, dim=9):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / rho.trace()


def test_table_matches_tensor_product_expansion():
    derived = _derive_pair_rules()
    assert set(PAIR_RULES) == set(derived)
    for key, terms in PAIR_RULES.items():
        terms = frozenset(terms)
        assert len(terms) == len(PAIR_RULES[key])  # no duplicate triples
        assert terms == derived[key], f"entry {key} disagrees with the expansion"


def test_table_action_matches_tensor_product_numerically():
    rng = np.random.default_rng(7)
    derived = _derive_pair_rules()
    for p_a, p_b, t in (
        (P_MARKOV, P_MARKOV, 0.8),
        (P_MEMORY, P_MARKOV, 2.3),
        (P_STIFF, P_MEMORY, 0.31),
    ):
        ca = coefficients(p_a, t)
        cb = coefficients(p_b, t)
        r0 = _random_state(rng)
        expected = np.zeros((9, 9), dtype=complex)
        for (i, j), terms in derived.items():
            acc = 0.0 + 0.0j
            for name_a, name_b, (k, l) in terms:
                acc += getattr(ca, name_a) * getattr(cb, name_b) * r0[k - 1, l - 1]
            expected[i - 1, j - 1] = acc
            if i != j:
                expected[j - 1, i - 1] = acc.conjugate()
        got = propagate_pair(r0, p_a, p_b, t)
        assert np.abs(got - expected).max() < 1e-14


def test_identity_at_t0():
    rng = np.random.default_rng(11)
    r0 = _random_state(rng)
    assert np.abs(propagate_pair(r0, P_MARKOV, P_MEMORY, 0.0) - r0).max() < 1e-14


def test_double_ground_is_fixed():
    r0 = np.zeros((9, 9), dtype=complex)
    r0[8, 8] = 1.0
    for t in (0.3, 4.0, 100.0):
        assert np.abs(propagate_pair(r0, P_MARKOV, P_MARKOV, t) - r0).max() == 0.0


def test_trace_and_hermiticity_preserved():
    rng = np.random.default_rng(3)
    for _ in range(5):
        r0 = _random_state(rng)
        for t in (0.2, 1.5, 9.0):
            out = propagate_pair(r0, P_MEMORY, P_STIFF, t)
            assert abs(out.trace() - 1.0) < 1e-14
            assert np.abs(out - out.conj().T).max() < 1e-12


def test_positivity_preserved_without_warning():
    # the accumulated exponents stay nonnegative even when the
    # instantaneous rate dips below zero, so the map keeps physical
    # states physical; the positivity check must therefore stay silent
    rng = np.random.default_rng(17)
    r0 = _random_state(rng)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for t in np.linspace(0.1, 12.0, 25):
            out = propagate_pair(r0, P_MEMORY, P_MEMORY, float(t), check_positivity=True)
            assert min_eigenvalue(out) > -1e-12


def test_partition_exchange_symmetry():
    # swapping the two partitions commutes with swapping the parameter sets
    perm = [0, 3, 6, 1, 4, 7, 2, 5, 8]  # (i, j) -> (j, i) on the pair index
    rng = np.random.default_rng(29)
    r0 = _random_state(rng)
    swapped = r0[np.ix_(perm, perm)]
    for t in (0.6, 2.1):
        lhs = propagate_pair(swapped, P_MEMORY, P_MARKOV, t)
        rhs = propagate_pair(r0, P_MARKOV, P_MEMORY, t)[np.ix_(perm, perm)]
        assert np.abs(lhs - rhs).max() < 1e-14


def test_product_states_factorize():
    rng = np.random.default_rng(41)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho_a = a @ a.conj().T
    rho_a /= rho_a.trace()
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho_b = b @ b.conj().T
    rho_b /= rho_b.trace()
    for t in (0.5, 3.0):
        joint = propagate_pair(kron(rho_a, rho_b), P_MARKOV, P_MEMORY, t)
        split = kron(
            propagate_single(rho_a, P_MARKOV, t),
            propagate_single(rho_b, P_MEMORY, t),
        )
        assert np.abs(joint - split).max() < 1e-14


def test_ground_population_monotone_in_markovian_regime():
    r0 = initial_state(1.0)
    ts = np.linspace(0.0, 15.0, 151)
    pops = [propagate_pair(r0, P_MARKOV, P_MARKOV, float(t))[8, 8].real for t in ts]
    assert all(b - a >= -1e-12 for a, b in zip(pops, pops[1:]))
    # the Bell start always holds one photon, so |0g 0g> is initially empty
    assert pops[0] == pytest.approx(0.0, abs=1e-14)
    assert pops[-1] > 0.998  # everything relaxes into the double ground level


def test_identical_partitions():
    assert identical_partitions(P_MARKOV, P_MARKOV)
    assert identical_partitions(
        P_MARKOV, JcmParams(omega0=0.0, omega=1.0, gamma0=1.0, lam=5.0 + 1e-15)
    )
    assert not identical_partitions(P_MARKOV, P_MEMORY)
    assert not identical_partitions(
        P_MARKOV, JcmParams(omega0=0.0, omega=1.0, gamma0=1.0, lam=5.001)
    )


def test_rejects_invalid_input():
    bad_trace = np.eye(9, dtype=complex)
    with pytest.raises(ValueError):
        propagate_pair(bad_trace, P_MARKOV, P_MARKOV, 1.0)
    non_hermitian = np.eye(9, dtype=complex) / 9.0
    non_hermitian[0, 1] = 0.5
    with pytest.raises(ValueError):
        propagate_pair(non_hermitian, P_MARKOV, P_MARKOV, 1.0)
    with pytest.raises(ValueError):
        propagate_pair(np.eye(9) / 9.0, P_MARKOV, P_MARKOV, -0.5)


def test_min_eigenvalue():
    m = np.diag([0.5, 0.3, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, -0.0]).astype(complex)
    assert min_eigenvalue(m) == pytest.approx(0.0, abs=1e-15)
    m[8, 8] = -1e-3
    assert min_eigenvalue(m) == pytest.approx(-1e-3)
