from fractions import Fraction

import pytest

from slopewalk.errors import (
    IrrationalEigenvalue,
    NoUniqueSlope,
    ParityError,
    PreconditionError,
    RepeatedRoot,
)
from slopewalk.fixtures import fixture_value
from slopewalk.padic import INFINITY, newton_slopes
from slopewalk.qseries import delta, u_p
from slopewalk.serialize import rat_from_str
from slopewalk.spaces import (
    Level,
    SpaceBasis,
    build_basis,
    charpoly,
    cusp_subspace_level1,
    expected_dimension,
    extract_slope_eigenform,
    hatada_check,
    is_n_regular,
    operator_matrix,
    ratio_order,
    rational_eigenvalue_with_slope,
    refinement,
    zero_constant_slice,
)

_frozen = lambda fid: fixture_value(fid)


# -- bases ---------------------------------------------------------------------

def test_dimensions_match_monomial_counts_and_rank_oracles():
    assert build_basis(Level.SL2Z, 12).dim == 2  # E4^3, E6^2
    assert build_basis(Level.GAMMA1_4, 5).dim == _frozen("dim_gamma1_4_weight5") == 3
    assert build_basis(Level.GAMMA0_2, 8).dim == _frozen("dim_gamma0_2_weight8") == 3


def test_parity_errors():
    with pytest.raises(ParityError):
        build_basis(Level.SL2Z, 13)
    with pytest.raises(ParityError):
        build_basis(Level.SL2Z, 2)
    with pytest.raises(ParityError):
        build_basis(Level.GAMMA0_2, 7)
    with pytest.raises(ParityError):
        build_basis(Level.GAMMA1_4, 0)


def test_dimension_growth():
    # gamma0_2 and gamma1_4 dims are monotone in k; sl2z only within a
    # residue class mod 12 (dim M_12 = 2 > dim M_14 = 1)
    for level, ks in [
        (Level.GAMMA0_2, range(0, 41, 2)),
        (Level.GAMMA1_4, range(1, 31)),
    ]:
        dims = [expected_dimension(level, k) for k in ks]
        assert dims == sorted(dims)
    for residue in (0, 2, 4, 6, 8, 10):
        ks = [k for k in range(4, 80, 2) if k % 12 == residue]
        dims = [expected_dimension(Level.SL2Z, k) for k in ks]
        assert dims == sorted(dims)
    for level, ks in [
        (Level.SL2Z, [4, 6, 12, 24]),
        (Level.GAMMA0_2, [0, 2, 8, 12]),
        (Level.GAMMA1_4, [1, 2, 5, 9]),
    ]:
        for k in ks:
            assert build_basis(level, k).dim == expected_dimension(level, k)


def test_prec_hint_only_raises():
    assert build_basis(Level.SL2Z, 12, prec_hint=50).prec == 50
    assert build_basis(Level.SL2Z, 12, prec_hint=5).prec > 5


# -- cusp subspaces --------------------------------------------------------------

def test_miller_echelon_weight_12():
    cusp = cusp_subspace_level1(build_basis(Level.SL2Z, 12))
    assert cusp.dim == 1
    assert cusp.basis[0].agrees(delta(cusp.prec))


def test_no_cusp_forms_below_weight_12():
    assert cusp_subspace_level1(build_basis(Level.SL2Z, 10)).dim == 0
    assert cusp_subspace_level1(build_basis(Level.SL2Z, 4)).dim == 0


def test_miller_echelon_weight_24_matches_oracle():
    cusp = cusp_subspace_level1(build_basis(Level.SL2Z, 24))
    assert cusp.dim == 2
    expected = [[rat_from_str(s) for s in row] for row in _frozen("miller_basis_weight24_prefixes")]
    for f, exp in zip(cusp.basis, expected):
        assert list(f.coeffs[:5]) == exp
    # delta_ij normalization
    for i, f in enumerate(cusp.basis, start=1):
        for j in range(1, 3):
            assert f[j] == (1 if j == i else 0)


# -- operator matrices -----------------------------------------------------------

def test_t2_on_weight12_cusp_space():
    cusp = cusp_subspace_level1(build_basis(Level.SL2Z, 12))
    mat = operator_matrix("t2", cusp)
    assert mat.entries == ((-24,),)
    assert charpoly(mat) == [24, 1]


def test_t2_on_constants_follows_the_definition():
    # weight 0: T_2 = U_2 + 2^(k-1) V_2 has eigenvalue 1 + 1/2 on constants
    space = build_basis(Level.SL2Z, 0)
    mat = operator_matrix("t2", space)
    assert mat.entries == ((Fraction(3, 2),),)


def test_u2_requires_level_with_2_in_the_conductor():
    with pytest.raises(PreconditionError):
        operator_matrix("u2", build_basis(Level.SL2Z, 12))
    with pytest.raises(PreconditionError):
        operator_matrix("t2", build_basis(Level.GAMMA0_2, 8))


def test_operator_matrix_detects_underdetermined_solve():
    from slopewalk.errors import InsufficientPrecision

    space = build_basis(Level.GAMMA0_2, 8)
    # starve the solve: U_2 images of a prec-5 basis keep only 2 rows < dim 3
    starved = SpaceBasis(
        space.level,
        space.k,
        tuple(b.truncate(5) for b in space.basis),
        5,
        space.dim,
        space.exponents,
    )
    with pytest.raises(InsufficientPrecision):
        operator_matrix("u2", starved)


def test_u2_weight5_slice_spectrum_matches_oracle():
    slice5 = zero_constant_slice(build_basis(Level.GAMMA1_4, 5))
    assert slice5.dim == 2
    mat = operator_matrix("u2", slice5)
    cp = charpoly(mat)
    eigs = sorted(rat_from_str(s) for s in _frozen("u2_weight5_slice_eigenvalues"))
    assert eigs == [-4, 16]
    # charpoly = (X + 4)(X - 16)
    assert cp == [eigs[0] * eigs[1], -(eigs[0] + eigs[1]), 1]
    assert newton_slopes(cp, 2) == [2, 4]


def test_extract_seed_eigenform_and_verify_eigenvector():
    slice5 = zero_constant_slice(build_basis(Level.GAMMA1_4, 5))
    mat = operator_matrix("u2", slice5)
    f0 = extract_slope_eigenform(mat, 2, 2)
    expected = [rat_from_str(s) for s in _frozen("seed_form_prefix_9")]
    assert list(f0.coeffs[:9]) == expected
    # genuinely an eigenvector, at full shared precision
    assert u_p(f0, 2).agrees(f0.scalar_mul(-4))


def test_extract_slope_eigenform_error_paths():
    slice5 = zero_constant_slice(build_basis(Level.GAMMA1_4, 5))
    mat = operator_matrix("u2", slice5)
    with pytest.raises(NoUniqueSlope):
        extract_slope_eigenform(mat, 5, 2)
    # weight 24: the T_2 eigenvalues are irrational, slopes {3, 7} distinct
    cusp24 = cusp_subspace_level1(build_basis(Level.SL2Z, 24))
    t2 = operator_matrix("t2", cusp24)
    slopes = newton_slopes(charpoly(t2), 2)
    lone = [s for s in slopes if slopes.count(s) == 1]
    with pytest.raises(IrrationalEigenvalue):
        rational_eigenvalue_with_slope(t2, lone[0], 2)


def test_extract_delta_from_t2():
    cusp = cusp_subspace_level1(build_basis(Level.SL2Z, 12))
    mat = operator_matrix("t2", cusp)
    assert extract_slope_eigenform(mat, 3, 2).agrees(delta(10))


def test_t2_charpoly_weight24_matches_oracle():
    cusp = cusp_subspace_level1(build_basis(Level.SL2Z, 24))
    cp = charpoly(operator_matrix("t2", cusp))
    assert [str(Fraction(c)) for c in cp] == [
        str(rat_from_str(s)) for s in _frozen("t2_charpoly_S24")
    ]
    assert cp[0] != 0
    assert all(s > 0 for s in newton_slopes(cp, 2))


def test_hecke_operators_commute():
    from slopewalk.linalg import mat_mul

    for k in range(12, 41, 2):
        cusp = cusp_subspace_level1(build_basis(Level.SL2Z, k, prec_hint=60))
        if cusp.dim == 0:
            continue
        t2 = operator_matrix("t2", cusp).as_lists()
        t3 = operator_matrix("tp", cusp, p=3).as_lists()
        assert mat_mul(t2, t3) == mat_mul(t3, t2), f"k={k}"


def test_twin_slope_embedding_weight12_matches_oracle():
    m12 = build_basis(Level.GAMMA0_2, 12)
    slopes = newton_slopes(charpoly(operator_matrix("u2", m12)), 2)
    assert [str(s) for s in slopes] == [
        str(rat_from_str(s)) for s in _frozen("u2_slopes_gamma0_2_weight12")
    ]  # {0, 3, 8, 11}: Eisenstein 0 and k-1, refinement pair {3, 8}


# -- refinements and regularity ---------------------------------------------------

def test_refinement_examples():
    r = refinement(-24, 12, 2)
    assert (r.alpha_val, r.beta_val) == (3, 8)
    r = refinement(-4, 5, 2)
    assert (r.alpha_val, r.beta_val) == (2, 2)
    r = refinement(0, 19, 2)
    assert r.alpha_val == r.beta_val == Fraction(19 - 1, 2)


def test_ratio_order_examples():
    assert ratio_order(0, 12, 2) == 2  # alpha = -beta
    assert ratio_order(-24, 12, 2) is INFINITY  # t = 9/32
    assert ratio_order(-4, 5, 5) is INFINITY  # t = 16/625
    assert ratio_order(-4, 5, 2) == 3  # t = 1, the seed form
    with pytest.raises(RepeatedRoot):
        ratio_order(4, 3, 2)  # a^2 = 4 p^(k-1)


def test_is_n_regular():
    assert is_n_regular(-24, 12, 2, 9)
    assert not is_n_regular(0, 12, 2, 3)  # order 2 <= 2
    assert is_n_regular(-4, 5, 2, 3)  # order 3 > 2
    assert not is_n_regular(-4, 5, 2, 4)
    for n in (2, 5, 50):
        assert is_n_regular(-24, 12, 2, n)


# -- hatada -----------------------------------------------------------------------

def test_hatada_small_sweep():
    report = hatada_check([4, 12, 14, 16, 24])
    assert report.all_passed
    by_k = {e.k: e for e in report.entries}
    assert by_k[4].dim == 0  # vacuous
    assert by_k[12].charpoly == (24, 1)
    with pytest.raises(PreconditionError):
        hatada_check([13])


# -- serialization ------------------------------------------------------------------

def test_space_and_matrix_json_round_trip():
    space = build_basis(Level.GAMMA1_4, 5)
    obj = space.to_json_obj()
    back = SpaceBasis.from_json_obj(obj)
    assert back.level == space.level and back.k == space.k
    assert all(a == b for a, b in zip(back.basis, space.basis))
    mat = operator_matrix("u2", space)
    mobj = mat.to_json_obj()
    assert mobj["operator"] == "u2"
    assert mobj["matrix"] == [[f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in row] for row in mat.entries]
