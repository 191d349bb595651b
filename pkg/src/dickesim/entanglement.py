"""Two-qubit entanglement of collective spin states.

Three pieces: the Wootters concurrence of an arbitrary two-qubit state,
the isometric embedding of a spin-1 state into the two-qubit triplet
sector, and the reduction of a permutation-symmetric N-qubit state
(stored as a (2j+1)-dimensional collective state, N = 2j) to any pair of
its constituents.  The reduction works from collective expectation
values only, so it costs d x d algebra even at j = 64; a brute-force
2^N embedding (N <= 8) serves as its oracle.

Two-qubit basis order is (|ee>, |eg>, |ge>, |gg>) with |e> first in each
factor.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CapacityError, DickeSimError, ValidationError
from .dynamics import validate_density_matrix
from .linalg import as_complex_matrix
from .settings import DEFAULT, NumericSettings
from .spin_ops import SpinQuantum, build_jminus, build_jz, expectation

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_YY = np.kron(_SY, _SY)


def validate_two_qubit_state(rho, settings: NumericSettings = DEFAULT, name="rho"):
    rho = as_complex_matrix(rho, name)
    if rho.shape != (4, 4):
        raise ValidationError(f"{name} must be 4x4, got {rho.shape}")
    return validate_density_matrix(rho, settings, name)


def concurrence(rho, settings: NumericSettings = DEFAULT) -> float:
    """Wootters concurrence C(rho) of a two-qubit state.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the descending square
    roots of the eigenvalues of rho @ rho_tilde and
    rho_tilde = (sy kron sy) rho* (sy kron sy).
    """
    rho = validate_two_qubit_state(rho, settings)
    product = rho @ (_YY @ rho.conj() @ _YY)
    evals = np.linalg.eigvals(product)
    # the product is similar to a PSD matrix, so the spectrum is real
    if np.abs(evals.imag).max() > 1e-8:
        raise DickeSimError(
            f"spectrum of rho * rho_tilde not real: max imag {np.abs(evals.imag).max():.3e}"
        )
    real = evals.real
    if real.min() < -1e-12:
        raise DickeSimError(
            f"spectrum of rho * rho_tilde not positive: min {real.min():.3e}"
        )
    lam = np.sqrt(np.clip(real, 0.0, None))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def triplet_to_two_qubit(rho3, settings: NumericSettings = DEFAULT) -> np.ndarray:
    """Embed a spin-1 state into two qubits through the triplet sector.

    Isometry: top level -> |ee>, middle -> (|eg>+|ge>)/sqrt(2),
    bottom -> |gg>.  The singlet component of the output is exactly zero.
    """
    rho3 = as_complex_matrix(rho3, "rho3")
    if rho3.shape != (3, 3):
        raise ValidationError(f"spin-1 state must be 3x3, got {rho3.shape}")
    validate_density_matrix(rho3, settings, "rho3")
    iso = np.zeros((4, 3))
    iso[0, 0] = 1.0
    iso[1, 1] = iso[2, 1] = 1.0 / np.sqrt(2.0)
    iso[3, 2] = 1.0
    return iso @ rho3 @ iso.T


def pair_reduced_state(rho, spin, settings: NumericSettings = DEFAULT) -> np.ndarray:
    """Two-qubit reduced state of a symmetric N-qubit state, N = 2j.

    Works entirely from collective moments.  Single-site moments come
    from <Jz>/N and <J+>/N; two-site moments come from <Jz^2>, <J+^2>,
    <J+J->, <J+Jz> after removing same-site contributions
    (sum_i s+_i s-_i = N/2 + Jz and s+ sz = -s+ on one site) and
    dividing by the N(N-1) ordered pairs.  The state is then assembled
    from the Pauli expansion rho2 = (1/4) sum <sa x sb> sa x sb, which
    is exchange-symmetric by construction.
    """
    s = SpinQuantum.from_j(spin)
    if s.two_j < 2:
        raise ValidationError(f"pair reduction needs j >= 1, got j = {s.j}")
    rho = as_complex_matrix(rho, "rho")
    if rho.shape[0] != s.dim:
        raise ValidationError(f"state dimension {rho.shape[0]} does not match j = {s.j}")
    validate_density_matrix(rho, settings, "rho")

    n = float(s.two_j)
    jm = build_jminus(s)
    jp = jm.conj().T
    jz = build_jz(s)

    mz = expectation(rho, jz).real
    mp = expectation(rho, jp)
    mzz = expectation(rho, jz @ jz).real
    mpp = expectation(rho, jp @ jp)
    mpm = expectation(rho, jp @ jm).real
    mpz = expectation(rho, jp @ jz)

    pairs = n * (n - 1.0)
    one_z = 2.0 * mz / n                      # <sz> on one site
    one_p = mp / n                            # <s+> on one site
    pp = mpp / pairs                          # <s+ s+> across sites
    pm = (mpm - n / 2.0 - mz) / pairs         # <s+ s-> across sites
    zz = (4.0 * mzz - n) / pairs              # <sz sz> across sites
    pz = (2.0 * mpz + mp) / pairs             # <s+ sz> across sites

    xx = 2.0 * pp.real + 2.0 * pm.real
    yy = -2.0 * pp.real + 2.0 * pm.real
    xy = 2.0 * pp.imag
    xz = 2.0 * pz.real
    yz = 2.0 * pz.imag
    x1 = 2.0 * one_p.real
    y1 = 2.0 * one_p.imag

    eye = np.eye(2, dtype=complex)
    terms = [
        (1.0, eye, eye),
        (x1, _SX, eye), (x1, eye, _SX),
        (y1, _SY, eye), (y1, eye, _SY),
        (one_z, _SZ, eye), (one_z, eye, _SZ),
        (xx, _SX, _SX), (yy, _SY, _SY), (zz.real, _SZ, _SZ),
        (xy, _SX, _SY), (xy, _SY, _SX),
        (xz, _SX, _SZ), (xz, _SZ, _SX),
        (yz, _SY, _SZ), (yz, _SZ, _SY),
    ]
    out = np.zeros((4, 4), dtype=complex)
    for coeff, a, b in terms:
        out += coeff * np.kron(a, b)
    out *= 0.25
    out = 0.5 * (out + out.conj().T)
    return validate_two_qubit_state(out, settings, "pair-reduced state")


def pair_reduced_brute_force(rho, spin, settings: NumericSettings = DEFAULT) -> np.ndarray:
    """Oracle for pair_reduced_state via the full 2^N embedding, N <= 8.

    Each collective level with k excitations is expanded into the equal
    superposition of the C(N, k) basis strings holding k excitations,
    the state is conjugated into the 2^N space, and qubits 3..N are
    traced out exactly.
    """
    s = SpinQuantum.from_j(spin)
    if s.two_j < 2:
        raise ValidationError(f"pair reduction needs j >= 1, got j = {s.j}")
    n = s.two_j
    if n > 8:
        raise CapacityError(f"brute-force embedding capped at N = 8 qubits, got N = {n}")
    rho = as_complex_matrix(rho, "rho")
    if rho.shape[0] != s.dim:
        raise ValidationError(f"state dimension {rho.shape[0]} does not match j = {s.j}")
    validate_density_matrix(rho, settings, "rho")

    embed = np.zeros((2 ** n, s.dim))
    for col in range(s.dim):
        k = s.two_j - col  # excitations at this level; |e> encodes as bit 0
        norm = 1.0 / np.sqrt(math.comb(n, k))
        for string in range(2 ** n):
            if n - bin(string).count("1") == k:
                embed[string, col] = norm
    full = embed @ rho @ embed.T
    blocks = full.reshape(4, 2 ** (n - 2), 4, 2 ** (n - 2))
    out = np.einsum("arbr->ab", blocks)
    out = 0.5 * (out + out.conj().T)
    return validate_two_qubit_state(out, settings, "pair-reduced state (brute force)")
