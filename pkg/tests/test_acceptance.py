"""Acceptance suite.

Each test is one acceptance criterion and prints a single ``PASS``/``FAIL``
line (visible even without ``-s``). Tolerances and sample counts are the
stated ones; nothing here is loosened relative to the criteria.
"""

import contextlib
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from qwp.channels import apply_matrix, gram, random_channel, validate_channel, wp_matrix
from qwp.commutativity import check_all, commutator, wp_commutes
from qwp.errors import NotPositive
from qwp.examples import example1, example2, prop7_instance, prop8_instance
from qwp.linalg import frobenius_norm, hermitian_eig, identity, loewner_leq
from qwp.predicates import OBSERVABLE, STRICT, random_density, random_hermitian, random_predicate, validate_predicate
from qwp.sysenv import extract_kraus, random_model, random_unitary, se_apply_matrix, se_wp_matrix

from conftest import fro

SWEEP_DIMS = (2, 3, 4, 8)
SWEEP_PER_DIM = 1000
SWEEP_COMMUTING = 1000


@pytest.fixture
def criterion(capsys):
    """Run a criterion body, print one verdict line, re-raise on failure."""

    @contextlib.contextmanager
    def run(number, title):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {title} [{time.perf_counter() - t0:.2f} s]")

    return run


def close(actual, expected, atol):
    return float(np.max(np.abs(np.asarray(actual) - np.asarray(expected, dtype=complex)))) <= atol


def all_four(report):
    return list(report.verdicts.values())


# --- 1, 2, 3: golden reproductions ------------------------------------------


def test_criterion_1_example1(criterion):
    with criterion(1, "Example 1 golden reproduction"):
        t0 = time.perf_counter()
        ex = example1()
        M, N = ex.M.matrix, ex.N.matrix
        A, B = wp_matrix(ex.channel, M), wp_matrix(ex.channel, N)
        assert close(A, [[0.002, 0], [0, 0]], 1e-12)
        assert close(B, [[0.003, 0], [0, 0]], 1e-12)
        assert close(M @ N, [[0.1 + 0.02j, 0.02 + 0.04j], [0.05 - 0.16j, 0.04 - 0.02j]], 1e-12)
        assert close(N @ M, [[0.1 - 0.02j, 0.05 + 0.16j], [0.02 - 0.04j, 0.04 + 0.02j]], 1e-12)
        assert all_four(check_all(A, B)) == [True] * 4
        assert all_four(check_all(M, N)) == [False] * 4
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_example2(criterion):
    with criterion(2, "Example 2 golden reproduction"):
        t0 = time.perf_counter()
        ex = example2()
        M, N = ex.M.matrix, ex.N.matrix
        A, B = wp_matrix(ex.channel, M), wp_matrix(ex.channel, N)
        assert close(A, [[0.05, 0], [0, 0]], 1e-12)
        assert close(B, [[0.103, 0.07j], [-0.07j, 0.175]], 1e-12)
        assert close(A @ B, [[0.00515, 0.0035j], [0, 0]], 1e-12)
        assert close(B @ A, [[0.00515, 0], [-0.0035j, 0]], 1e-12)
        assert all_four(check_all(A, B)) == [False] * 4
        assert all_four(check_all(M, N)) == [True] * 4
        assert time.perf_counter() - t0 < 1.0


def test_criterion_3_characteristic_polynomials(criterion):
    with criterion(3, "characteristic polynomials and sign of Example 1's N"):
        for lam in hermitian_eig(example1().M.matrix).eigenvalues:
            assert abs(lam**2 - 0.7 * lam + 0.06) <= 1e-10
        (E,) = example2().channel.operators
        for lam in hermitian_eig(identity(2) - E @ E.conj().T).eigenvalues:
            assert abs(lam**2 - 1.46 * lam + 0.5225) <= 1e-10
        N = example1().N.matrix
        assert hermitian_eig(N).eigenvalues[0] < 0
        with pytest.raises(NotPositive):
            validate_predicate(N, STRICT)
        validate_predicate(N, OBSERVABLE)


# --- 4, 5: random sweep -------------------------------------------------------


@pytest.fixture(scope="module")
def sweep():
    """Random Hermitian pairs per dimension, then constructed commuting pairs."""
    pairs = []
    for n in SWEEP_DIMS:
        rng = np.random.default_rng(1000 + n)
        pairs += [(random_hermitian(n, rng), random_hermitian(n, rng)) for _ in range(SWEEP_PER_DIM)]
    rng = np.random.default_rng(77)
    for k in range(SWEEP_COMMUTING):
        n = SWEEP_DIMS[k % len(SWEEP_DIMS)]
        U = random_unitary(n, rng)
        a, b = rng.standard_normal(n), rng.standard_normal(n)
        if k % 3 == 0:  # repeated eigenvalues in A
            a[: max(2, n // 2)] = a[0]
        if k % 5 == 0:  # and in B
            b[n // 2 :] = b[-1]
        pairs.append(((U * a) @ U.conj().T, (U * b) @ U.conj().T))
    return pairs


def test_criterion_4_consistency_sweep(criterion, sweep):
    with criterion(4, f"four verdicts agree on {len(sweep)} pairs, witnesses sound"):
        t0 = time.perf_counter()
        witnesses = commuting = 0
        for A, B in sweep:
            r = check_all(A, B)
            assert r.agree, r.verdicts
            commuting += r.commutes
            if r.witness is not None:
                U, n = r.witness.unitary, A.shape[0]
                assert fro(U.conj().T @ U, np.eye(n)) <= 1e-8
                assert fro(U.conj().T @ A @ U, np.diag(r.witness.lam)) <= 1e-8
                assert fro(U.conj().T @ B @ U, np.diag(r.witness.mu)) <= 1e-8
                witnesses += 1
        assert commuting == witnesses == SWEEP_COMMUTING
        assert time.perf_counter() - t0 < 60.0


def test_criterion_5_frobenius_trace_identity(criterion, sweep):
    with criterion(5, "Frobenius-trace identity on the sweep"):
        for A, B in sweep:
            lhs = frobenius_norm(commutator(A, B)) ** 2
            rhs = 2 * (np.trace(A @ A @ B @ B) - np.trace(A @ B @ A @ B)).real
            # relative to the size of the individual trace terms, since the
            # left side itself vanishes on commuting pairs
            scale = max(1.0, frobenius_norm(A) ** 2 * frobenius_norm(B) ** 2)
            assert abs(lhs - rhs) <= 1e-10 * scale


# --- 6, 7: channels and models -----------------------------------------------


def test_criterion_6_wp_hermitian(criterion):
    with criterion(6, "wp output Hermitian on 200 random channel/predicate pairs"):
        for seed in range(200):
            n = 2 + seed % 7
            ch = random_channel(n, 1 + seed % 4, seed)
            W = wp_matrix(ch, random_predicate(n, 10_000 + seed).matrix)
            assert frobenius_norm(W - W.conj().T) <= 1e-10


def test_criterion_7_representation_equivalence(criterion):
    with criterion(7, "system-environment wp equals Kraus wp on 50 models, duality holds"):
        t0 = time.perf_counter()
        for seed in range(50):
            s, k = 1 + seed % 3, 1 + (seed // 3) % 3
            model = random_model(s, k, seed)
            ch = extract_kraus(model)
            M = random_predicate(s, 500 + seed).matrix
            W = se_wp_matrix(model, M)
            assert fro(W, wp_matrix(ch, M)) <= 1e-10
            for j in range(100):
                rho = random_density(s, 100 * seed + j).matrix
                assert abs(np.trace(W @ rho) - np.trace(M @ se_apply_matrix(model, rho))) <= 1e-10
                assert abs(np.trace(W @ rho) - np.trace(M @ apply_matrix(ch, rho))) <= 1e-10
        assert time.perf_counter() - t0 < 30.0


# --- 8: counterexample families ------------------------------------------------


def test_criterion_8_families(criterion):
    with criterion(8, "both counterexample families for n = 2..8"):
        for n in range(2, 9):
            for inst, inputs, wps in ((prop7_instance(n), False, True), (prop8_instance(n), True, False)):
                validate_predicate(inst.M.matrix, inst.M.mode)
                validate_predicate(inst.N.matrix, inst.N.mode)
                validate_channel(list(inst.channel.operators))
                assert loewner_leq(gram(inst.channel.operators), identity(n))
                assert check_all(inst.M.matrix, inst.N.matrix).verdicts == dict.fromkeys(
                    ("direct", "hermitian_product", "trace_identity", "simultaneous_diag"), inputs
                )
                r = wp_commutes(inst.M, inst.N, inst.channel)
                assert r.agree and r.commutes == wps
        # n = 2 matches the literal example data byte for byte
        literal = {
            prop7_instance: (
                [[0.2, 0.2j], [-0.2j, 0.5]],
                [[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.0]],
                [[0.1, 0.0], [0.0, 0.0]],
            ),
            prop8_instance: ([[0.2, 0.0], [0.0, 0.0]], [[0.3, 0.0], [0.0, 0.7]], [[0.5, 0.2j], [0.0, 0.5]]),
        }
        for fam, (M, N, E) in literal.items():
            inst = fam(2)
            for got, want in ((inst.M.matrix, M), (inst.N.matrix, N), (inst.channel.operators[0], E)):
                want = np.array(want, dtype=np.complex128)
                assert got.dtype == want.dtype and got.tobytes() == want.tobytes()


# --- 9: CLI end to end ---------------------------------------------------------


def qwp(*args):
    return subprocess.run([sys.executable, "-m", "qwp", *map(str, args)], capture_output=True, text=True)


def test_criterion_9_cli(criterion, tmp_path):
    with criterion(9, "CLI end to end and bit-exact JSON round trip"):
        for name, code in (("ex1", 0), ("ex2", 4)):
            d = tmp_path / name
            assert qwp("example", name, "--out", d).returncode == 0
            proc = qwp("check-commute", d / "channel.json", d / "M.json", d / "N.json")
            assert proc.returncode == code, proc.stderr
            assert proc.returncode != 5
        # a predicate pushed through the identity channel comes back bit for bit
        rng = np.random.default_rng(9)
        M = random_predicate(4, 9).matrix * (1 + rng.uniform(-1e-3, 1e-3))
        (tmp_path / "M.json").write_text(
            json.dumps({"dim": 4, "entries": [[z.real, z.imag] for z in M.reshape(-1)]})
        )
        (tmp_path / "id.json").write_text(
            json.dumps({"dim": 4, "kraus": [[[float(i == j), 0.0] for i in range(4) for j in range(4)]]})
        )
        proc = qwp("wp", tmp_path / "id.json", tmp_path / "M.json", "--mode", "observable", "--out", tmp_path / "W.json")
        assert proc.returncode == 0, proc.stderr
        entries = json.loads((tmp_path / "W.json").read_text())["entries"]
        W = np.array([complex(re, im) for re, im in entries]).reshape(4, 4)
        assert W.tobytes() == M.tobytes()
        for re, im in entries:
            for v in (re, im):
                assert float(f"{v:.17g}") == v
