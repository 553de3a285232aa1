import json
import random
from fractions import Fraction

import pytest

from certmut import apply_mutation, numeric_fields
from slopewalk.eigencurve import EigencurvePointModel, annulus_index
from slopewalk.errors import ConstraintViolated, PreconditionError
from slopewalk.pingpong import (
    KIND_START,
    KIND_TWIN,
    KIND_WITHIN,
    Move,
    PingPongCertificate,
    connect,
    first_step,
    induction_step,
    verify_certificate,
    verify_certificate_json,
)
from slopewalk.weightspace import WeightCharacter


def test_first_step_examples():
    z1, z2, moves = first_step(1, 2)
    assert (z1.k, z1.slope) == (9, 2) and annulus_index(z1) == 1
    assert z2.slope == 6 and annulus_index(z2) == 3
    z1, z2, _ = first_step(5, 3)
    assert z1.k == 25 and z1.slope == 10 and annulus_index(z1) == 5
    assert z2.slope == 14 and annulus_index(z2) == 7
    with pytest.raises(ConstraintViolated):
        first_step(3, 2)  # 2^2 - 1 = 3 is not > 3
    with pytest.raises(PreconditionError):
        first_step(0, 3)


def test_first_step_lands_on_the_predicted_annuli():
    for m in range(1, 11):
        for i in range(1, min(2**m - 1, 65)):
            z1, z2, _ = first_step(i, m)
            assert annulus_index(z1) == i
            assert annulus_index(z2) == 2**m - 1
            assert 2 * z1.slope != z1.k - 1  # distinct refinement slopes


def test_induction_step_examples():
    z2, z1, moves = induction_step(3)
    assert z2.wc == WeightCharacter(2, 4) and z2.slope == Fraction(7, 8)
    assert z1.slope == Fraction(1, 8) and annulus_index(z1) == 1
    z2, z1, moves = induction_step(1)
    assert z2 == z1 and annulus_index(z1) == 1 and moves == ()
    z2, _, _ = induction_step(2)
    assert z2.slope == Fraction(3, 4) and annulus_index(z2) == 3


def test_induction_slope_strictly_inside_the_half_to_one_window():
    for m in range(2, 11):
        z2, z1, _ = induction_step(m)
        assert Fraction(1, 2) < z2.slope < 1
        assert z2.slope != Fraction(z2.k - 1, 2)
        assert annulus_index(z2) == 2**m - 1 and annulus_index(z1) == 1


def test_connect_identity_is_short():
    cert = connect(1, 1)
    assert len(cert.moves) <= 2
    assert verify_certificate(cert) == []


def test_connect_routes_verify():
    for pair in [(4, 1), (2, 5), (1, 64), (64, 63), (7, 7)]:
        cert = connect(*pair)
        assert len(cert.moves) <= 10
        assert verify_certificate(cert) == [], pair
        assert cert.endpoints == pair


def test_certificate_chain_and_endpoints():
    cert = connect(4, 1)
    for a, b in zip(cert.moves, cert.moves[1:]):
        assert a.dst == b.src
    assert annulus_index(cert.moves[0].src) == 4
    assert annulus_index(cert.moves[-1].dst) == 1


def test_assumptions_are_recorded():
    cert = connect(3, 9)
    tags = {(a.kind, a.tag) for a in cert.assumptions}
    assert ("axiom", "same_annulus_same_component") in tags
    assert ("hypothesis", "n_regular") in tags
    within_moves = [j for j, m in enumerate(cert.moves) if m.kind == KIND_WITHIN]
    logged = {a.move for a in cert.assumptions if a.tag == "n_regular"}
    assert logged == set(within_moves)


def test_json_round_trip():
    cert = connect(4, 7)
    obj = cert.to_json_obj()
    again = PingPongCertificate.from_json_obj(json.loads(json.dumps(obj)))
    assert again == cert
    assert obj["schema"] == 1


def test_tampered_slope_is_caught_and_names_the_move():
    cert = connect(4, 1).to_json_obj()
    # change one slope by 1 (numerator bump on move 3's target)
    mutated = apply_mutation(cert, ("moves", 3, "to", "slope", "num"), 1)
    violations = verify_certificate_json(mutated)
    assert violations
    assert any(v.move in (3, 4) for v in violations)


def test_twin_on_non_pc_point_is_a_violation():
    wc = WeightCharacter(5, 0)
    z = EigencurvePointModel(wc, Fraction(2), pc=False)
    z_tw = EigencurvePointModel(wc, Fraction(2), pc=False)
    cert = PingPongCertificate(
        (1, 1),
        (
            Move(KIND_START, z, z, "lem_first_step"),
            Move(KIND_TWIN, z, z_tw, "lem_slope_of_twin_point"),
        ),
        (),
    )
    codes = {v.code for v in verify_certificate(cert)}
    assert "NotPotentiallyCrystalline" in codes


def test_within_annulus_index_mismatch_is_a_violation():
    a = EigencurvePointModel(WeightCharacter(9, 0), Fraction(2))
    b = EigencurvePointModel(WeightCharacter(9, 0), Fraction(6))
    cert = PingPongCertificate(
        (1, 3),
        (
            Move(KIND_START, a, a, "lem_first_step"),
            Move(KIND_WITHIN, a, b, "lem_propagation"),
        ),
        (),
    )
    codes = {v.code for v in verify_certificate(cert)}
    assert "IndexMismatch" in codes


def test_malformed_json_is_a_violation_not_an_exception():
    assert verify_certificate_json({"schema": 1}) != []
    assert verify_certificate_json({"schema": 99, "endpoints": [1, 1], "moves": []}) != []
    cert = connect(2, 2).to_json_obj()
    cert["moves"][0]["from"]["slope"] = "1/0"
    assert verify_certificate_json(cert) != []


def test_single_field_mutations_always_caught():
    rng = random.Random(7)
    for _ in range(300):
        i, j = rng.randint(1, 32), rng.randint(1, 32)
        obj = connect(i, j).to_json_obj()
        _, path = rng.choice(numeric_fields(obj))
        delta = rng.choice([-3, -2, -1, 1, 2, 3])
        assert verify_certificate_json(apply_mutation(obj, path, delta)), (i, j, path, delta)
