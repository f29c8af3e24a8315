import numpy as np
import pytest

from tecsim.dense import StateVector
from tecsim.pauli import PauliOperator, pauli_from_text, pauli_to_text
from tecsim.rng import philox_generator
from tecsim.tableau import tableau_init

GATE_POOL = (("H", 1), ("S", 1), ("X", 1), ("Z", 1), ("CZ", 2), ("CNOT", 2))


def random_circuit(rng, n, depth):
    ops = []
    for _ in range(depth):
        name, arity = GATE_POOL[int(rng.integers(len(GATE_POOL)))]
        if arity == 2 and n < 2:
            name, arity = "H", 1
        targets = rng.choice(n, size=arity, replace=False)
        ops.append((name, tuple(int(t) for t in targets)))
    return ops


def random_hermitian_pauli(rng, n):
    while True:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        if x or z:
            return PauliOperator(n, x, z, 2 * int(rng.integers(0, 2)))


def test_init_single_qubit():
    t = tableau_init(1)
    assert [pauli_to_text(s) for s in t.stabilizers()] == ["Z"]


def test_init_three_qubits():
    t = tableau_init(3)
    assert [pauli_to_text(s) for s in t.stabilizers()] == ["ZII", "IZI", "IIZ"]


def test_fresh_state_has_no_x_expectation():
    t = tableau_init(3)
    for q in range(3):
        assert t.expectation_pauli(PauliOperator.single(3, q, "X")) == 0
        assert t.expectation_pauli(PauliOperator.single(3, q, "Z")) == 1


def test_expectation_dimension_mismatch():
    with pytest.raises(ValueError):
        tableau_init(2).expectation_pauli(pauli_from_text("X"))


def test_init_rejects_zero_qubits():
    with pytest.raises(ValueError):
        tableau_init(0)


def test_h_on_zero_gives_x_stabilizer():
    t = tableau_init(1)
    t.apply_gate("H", 0)
    assert t.expectation_pauli(pauli_from_text("X")) == 1


def test_cz_on_plus_plus_gives_graph_state():
    t = tableau_init(2)
    t.h(0)
    t.h(1)
    t.cz(0, 1)
    assert t.expectation_pauli(pauli_from_text("XZ")) == 1
    assert t.expectation_pauli(pauli_from_text("ZX")) == 1


def test_hzh_matches_dense_oracle():
    t = tableau_init(1)
    for gate in ("H", "Z", "H"):
        t.apply_gate(gate, 0)
    s = StateVector.computational_zero(1)
    for gate in ("H", "Z", "H"):
        s.apply_gate(gate, 0)
    z = pauli_from_text("Z")
    assert t.expectation_pauli(z) == -1
    assert abs(s.expectation_pauli(z) - (-1.0)) < 1e-12
    assert t.expectation_pauli(pauli_from_text("-Z")) == 1


def test_measure_z_on_zero_is_deterministic():
    t = tableau_init(1)
    rng = philox_generator(0)
    before = [pauli_to_text(s) for s in t.stabilizers()]
    assert t.measure_pauli(pauli_from_text("Z"), rng) == 1
    assert [pauli_to_text(s) for s in t.stabilizers()] == before


def test_measure_x_reproducible_per_seed():
    outcomes = []
    for _ in range(2):
        t = tableau_init(1)
        outcomes.append(t.measure_pauli(pauli_from_text("X"), philox_generator(42)))
    assert outcomes[0] == outcomes[1]
    assert outcomes[0] in (-1, 1)


def test_measuring_current_stabilizer_returns_plus_one():
    rng = np.random.default_rng(5)
    for trial in range(30):
        n = int(rng.integers(2, 6))
        t = tableau_init(n)
        for name, targets in random_circuit(rng, n, 10):
            t.apply_gate(name, *targets)
        stabs = t.stabilizers()
        mrng = philox_generator(100 + trial)
        for s in stabs:
            if s.is_identity_string:
                continue
            assert t.measure_pauli(s, mrng) == 1
        # the stabilizer group is unchanged
        for s in stabs:
            assert t.expectation_pauli(s) == 1


def test_gate_validation():
    t = tableau_init(2)
    with pytest.raises(IndexError):
        t.apply_gate("H", 2)
    with pytest.raises(ValueError):
        t.apply_gate("CZ", 1, 1)
    with pytest.raises(ValueError):
        t.apply_gate("CZ", 0)
    with pytest.raises(ValueError):
        t.apply_gate("SWAP", 0, 1)


def test_measure_validation():
    t = tableau_init(2)
    rng = philox_generator(0)
    with pytest.raises(ValueError):
        t.measure_pauli(PauliOperator.identity(2), rng)
    with pytest.raises(ValueError):
        t.measure_pauli(pauli_from_text("iXZ"), rng)
    with pytest.raises(ValueError):
        t.measure_pauli(pauli_from_text("X"), rng)
    with pytest.raises(IndexError):
        t.measure_x(5, rng)


def test_copy_is_independent():
    t = tableau_init(2)
    dup = t.copy()
    dup.h(0)
    assert t.expectation_pauli(pauli_from_text("ZI")) == 1
    assert dup.expectation_pauli(pauli_from_text("ZI")) == 0


def test_random_circuits_agree_with_dense_oracle():
    """1000 random Clifford circuits: expectations exact, outcomes unbiased."""
    rng = np.random.default_rng(2026)
    random_plus_tab = random_plus_dense = draws = 0
    for trial in range(1000):
        n = int(rng.integers(2, 9))
        circuit = random_circuit(rng, n, 12)
        tab = tableau_init(n)
        vec = StateVector.computational_zero(n)
        for name, targets in circuit:
            tab.apply_gate(name, *targets)
            vec.apply_gate(name, *targets)
        op = random_hermitian_pauli(rng, n)
        expect_tab = tab.expectation_pauli(op)
        expect_dense = vec.expectation_pauli(op)
        assert abs(expect_dense - expect_tab) < 1e-9, (trial, pauli_to_text(op))
        out_tab = tab.measure_pauli(op, philox_generator(trial, 0))
        out_dense = vec.measure_pauli(op, philox_generator(trial, 1))
        if expect_tab != 0:
            assert out_tab == expect_tab
            assert out_dense == expect_tab
        else:
            draws += 1
            random_plus_tab += out_tab == 1
            random_plus_dense += out_dense == 1
        # post-measurement state is an eigenstate of the measured operator
        assert tab.expectation_pauli(op) == out_tab
        assert abs(vec.expectation_pauli(op) - out_dense) < 1e-9
    assert draws > 300  # random-outcome branch was exercised
    bound = 3 * 0.5 * np.sqrt(draws)
    assert abs(random_plus_tab - draws / 2) < bound
    assert abs(random_plus_dense - draws / 2) < bound


def test_graph_state_generators_all_plus_one():
    rng = np.random.default_rng(33)
    for _ in range(20):
        n = int(rng.integers(2, 11))
        edges = {
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if rng.random() < 0.4
        }
        t = tableau_init(n)
        for q in range(n):
            t.h(q)
        for a, b in edges:
            t.cz(a, b)
        for i in range(n):
            zmask = 0
            for a, b in edges:
                if a == i:
                    zmask |= 1 << b
                elif b == i:
                    zmask |= 1 << a
            k = PauliOperator(n, 1 << i, zmask, 0)
            assert t.expectation_pauli(k) == 1
