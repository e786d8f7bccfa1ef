import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entanglekit import teleport
from entanglekit.errors import AmbiguousResource, DegenerateInfoQubit, NotNormalized, Unsolvable
from entanglekit.teleport import InformationQubit, ResourceState

S2 = 1 / math.sqrt(2)


def random_instance(rng):
    th = rng.uniform(0, 2 * math.pi)
    ph = rng.uniform(0, 2 * math.pi)
    info = InformationQubit(math.cos(th), math.sin(th))
    res = ResourceState(math.cos(ph), math.sin(ph))
    return info, res


def test_validation():
    with pytest.raises(NotNormalized):
        InformationQubit(1, 1)
    with pytest.raises(NotNormalized):
        ResourceState.from_a00(1.5)
    with pytest.raises(TypeError):
        teleport.run_circuit((1, 0), (1, 0))


def test_run_circuit_examples():
    t = teleport.run_circuit(InformationQubit(1, 0), ResourceState(S2, S2))
    assert abs(t.final_state[0] - 0.5) < 1e-15

    t = teleport.run_circuit(InformationQubit(0, 1), ResourceState(1, 0))
    assert teleport.bob_stats(t, "00").m1 == 0


def test_gate_oracle(rng):
    for _ in range(1000):
        info, res = random_instance(rng)
        a = teleport.final_state_closed_form(info, res)
        b = teleport.final_state_gates(info, res)
        assert np.abs(a - b).max() < 1e-12
        assert abs(np.linalg.norm(a) - 1) < 1e-12


def test_gates_are_unitary():
    for u in (teleport.cnot_12(), teleport.hadamard_1()):
        assert np.allclose(u @ u.T, np.eye(8))


def test_bob_stats_examples():
    info, res = InformationQubit(S2, S2), ResourceState(S2, S2)
    t = teleport.run_circuit(info, res)
    s = teleport.bob_stats(t, "00")
    assert abs(s.m0 - 1 / 8) < 1e-15 and abs(s.m1 - 1 / 8) < 1e-15
    assert abs(s.product - 1 / 64) < 1e-15
    products = {round(teleport.bob_stats(t, b).product, 15) for b in teleport.BASES}
    assert products == {round(1 / 64, 15)}

    t = teleport.run_circuit(InformationQubit(1, 0), ResourceState(0.6, 0.8))
    s = teleport.bob_stats(t, "10")
    assert s.m1 == 0 and s.product == 0

    with pytest.raises(ValueError):
        teleport.bob_stats(t, "2")


def test_product_invariant(rng):
    for _ in range(1000):
        info, res = random_instance(rng)
        t = teleport.run_circuit(info, res)
        want = (info.alpha * info.beta * res.det_a) ** 2 / 4
        for b in teleport.BASES:
            s = teleport.bob_stats(t, b)
            assert abs(s.product - want) < 1e-12
            c = teleport.bob_stats_closed_form(info, res, b)
            assert abs(s.m0 - c.m0) < 1e-15 and abs(s.m1 - c.m1) < 1e-15


def test_branch_weights_sum_to_one(rng):
    info, res = random_instance(rng)
    t = teleport.run_circuit(info, res)
    total = sum(teleport.bob_stats(t, b).m0 + teleport.bob_stats(t, b).m1 for b in teleport.BASES)
    assert abs(total - 1) < 1e-12


def test_fidelity_examples():
    info = InformationQubit(0.6, 0.8)
    assert abs(teleport.fidelity(info, 0.6) - 1) < 1e-12
    assert abs(teleport.fidelity(info, 0.8) - 4 * 0.48**2) < 1e-12
    assert teleport.fidelity(InformationQubit(1, 0), 1) == 1
    with pytest.raises(ValueError):
        teleport.fidelity(info, 1.1)


def test_conditional_fidelity_is_one_with_maximal_resource(rng):
    for _ in range(50):
        info, _ = random_instance(rng)
        t = teleport.run_circuit(info, ResourceState(S2, S2))
        for b in teleport.BASES:
            assert abs(teleport.conditional_fidelity(t, b) - 1) < 1e-12


def test_fidelity_extrema_examples():
    e = teleport.fidelity_extrema(InformationQubit(S2, S2))
    assert abs(e.f1 - 1) < 1e-12 and abs(e.f2 - 1) < 1e-12

    e = teleport.fidelity_extrema(InformationQubit(math.sqrt(3) / 2, 0.5))
    assert abs(e.f1 - 0.75) < 1e-12 and e.f1_locations == (0.5, -0.5)
    assert abs(e.f2 - 1) < 1e-12
    assert e.f2_is_grid_max and e.grid_max <= 1 + 1e-12
    # along a11 = +sqrt(1 - a00^2) the curve has a single peak, so +beta is not a minimum
    assert not e.f1_is_local_min

    with pytest.raises(DegenerateInfoQubit):
        teleport.fidelity_extrema(InformationQubit(1, 0))


def test_fidelity_sign_flips(rng):
    for _ in range(200):
        info, _ = random_instance(rng)
        al, be = info.alpha, info.beta
        for s in (1, -1):
            assert abs(teleport.fidelity(info, s * al, s * be) - 1) < 1e-12
            assert abs(teleport.fidelity(info, s * be, s * al) - 4 * (al * be) ** 2) < 1e-12


def test_recover_examples():
    info = InformationQubit(0.6, 0.8)
    t = teleport.measure(teleport.run_circuit(info, ResourceState(0.8, 0.6)), "00")
    # a00 = beta makes M0 = M1, so both resource orderings explain the data
    with pytest.raises(AmbiguousResource) as exc:
        teleport.recover_information((t.bob_stats.m0, t.bob_stats.m1), 0.48)
    cands = exc.value.candidates
    assert any(abs(a - 0.6) < 1e-9 and abs(b - 0.8) < 1e-9 for a, b in cands)

    t = teleport.measure(teleport.run_circuit(info, ResourceState(0.6, 0.8)), "00")
    got = teleport.recover_information((t.bob_stats.m0, t.bob_stats.m1), 0.48)
    assert np.allclose(got, (0.6, 0.8), atol=1e-12)

    for det in (0.1, 0.3, 0.48):
        a00 = math.sqrt((1 + math.sqrt(1 - 4 * det**2)) / 2)
        got = teleport.recover_information((a00**2 / 2, 0.0), det)
        assert got == pytest.approx((1.0, 0.0), abs=1e-12)


def test_recover_rejects_tampering():
    info, res = InformationQubit(0.6, 0.8), ResourceState.from_a00(0.7)
    s = teleport.teleport(info, res, "00").bob_stats
    with pytest.raises(Unsolvable):
        teleport.recover_information((2 * s.m0, s.m1), abs(res.det_a))
    with pytest.raises(Unsolvable):
        teleport.recover_information((s.m0, s.m1), 0.0)
    with pytest.raises(Unsolvable):
        teleport.recover_information((-1, s.m1), 0.3)


def test_recover_round_trip(rng):
    for _ in range(1000):
        al, a00 = rng.uniform(0.05, 0.95, size=2)
        info, res = InformationQubit.from_alpha(al), ResourceState.from_a00(a00)
        b = teleport.BASES[rng.integers(4)]
        t = teleport.teleport(info, res, b)
        assert t.recovered is not None, t.recovery_error
        assert np.allclose(t.recovered, (info.alpha, info.beta), atol=1e-9)


def test_transcript_record():
    t = teleport.teleport(InformationQubit(0.6, 0.8), ResourceState(0.6, 0.8), "01")
    rec = json.loads(t.to_json())
    for key in ("alpha", "beta", "a00", "a11", "alice_basis", "M0", "M1", "product", "abs_det_a",
                "fidelity_paper", "fidelity_conditional"):
        assert key in rec
    assert rec["alice_basis"] == "01" and abs(rec["fidelity_paper"] - 1) < 1e-12
    assert t.classical_message == ("01", pytest.approx(0.48))


@settings(max_examples=200, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.sampled_from(teleport.BASES))
def test_conditional_fidelity_bounded(al, a00, basis):
    info, res = InformationQubit.from_alpha(al), ResourceState.from_a00(a00)
    t = teleport.measure(teleport.run_circuit(info, res), basis)
    assert -1e-12 <= t.fidelity_conditional <= 1 + 1e-12
    assert -1e-12 <= t.fidelity_paper <= 1 + 1e-12
