import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklat import (
    Frame,
    discriminant_group,
    divisibility,
    dual,
    dual_class,
    dual_pairing,
    is_primitive,
    make_lattice,
    primal,
    primal_of_dual,
    q_eval,
    smith_normal_form,
)
from hklat.errors import (
    DegenerateFormError,
    FrameError,
    NonIntegralError,
    NonSymmetricError,
    ShapeError,
    ZeroVectorError,
)
from hklat.linalg import bareiss_det, mat_mul

from .support import (
    U_GRAM,
    conjugate,
    direct_sum,
    k3_type_gram,
    negate,
    random_nondegenerate_gram,
    random_unimodular,
    E8_GRAM,
)


def test_make_lattice_hyperbolic_plane():
    lat = make_lattice(U_GRAM)
    assert lat.rank == 2
    assert lat.signature == (1, 1)
    assert lat.det == -1


def test_make_lattice_negative_line():
    lat = make_lattice([[-2]])
    assert lat.rank == 1
    assert lat.signature == (0, 1)


def test_make_lattice_rejects_nonsymmetric():
    with pytest.raises(NonSymmetricError):
        make_lattice([[0, 1], [2, 0]])


def test_make_lattice_rejects_degenerate():
    with pytest.raises(DegenerateFormError):
        make_lattice([[1, 1], [1, 1]])


def test_make_lattice_rejects_nonsquare_and_bad_entries():
    with pytest.raises(ShapeError):
        make_lattice([[1, 0]])
    with pytest.raises(ShapeError):
        make_lattice([[True]])
    with pytest.raises(ShapeError):
        make_lattice([])


def test_q_eval_examples():
    u = make_lattice(U_GRAM)
    assert q_eval(u, primal([1, 0]), primal([0, 1])) == 1
    d = make_lattice([[2, 0], [0, -2]])
    assert q_eval(d, primal([1, 1]), primal([1, 1])) == 0
    m = make_lattice([[-2]])
    assert q_eval(m, primal([1]), primal([1])) == -2


def test_q_eval_frame_and_length_errors():
    u = make_lattice(U_GRAM)
    with pytest.raises(FrameError):
        q_eval(u, dual([1, 0]), primal([0, 1]))
    with pytest.raises(ShapeError):
        q_eval(u, primal([1, 0, 0]), primal([0, 1]))


def test_framed_vector_basics():
    v = primal([1, "1/2"])
    assert not v.is_integral()
    with pytest.raises(NonIntegralError):
        v.ints()
    with pytest.raises(TypeError):
        primal([0.5, 1])
    with pytest.raises(FrameError):
        primal([1, 0]) + dual([0, 1])


def test_smith_normal_form_examples():
    assert smith_normal_form([[2]]).diagonal == (2,)
    assert smith_normal_form([[0, 1], [1, 0]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 0], [0, 4]]).diagonal == (2, 4)


def test_smith_normal_form_postconditions_random():
    rng = random.Random(20240817)
    for _ in range(100):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        mat = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(mat)
        u = [list(r) for r in snf.left]
        v = [list(r) for r in snf.right]
        prod = mat_mul(mat_mul(u, mat), v)
        for i in range(m):
            for j in range(n):
                expected = snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
                assert prod[i][j] == expected
        assert abs(bareiss_det(u)) == 1
        assert abs(bareiss_det(v)) == 1
        nz = [d for d in snf.diagonal if d]
        assert all(d > 0 for d in nz)
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        # zeros trail the nonzero invariant factors
        assert all(d == 0 for d in snf.diagonal[len(nz):])


def test_smith_normal_form_deterministic():
    mat = [[6, 4, 2], [4, 8, 6], [2, 6, 10]]
    assert smith_normal_form(mat) == smith_normal_form(mat)


def test_discriminant_group_k3_lattice_is_unimodular():
    gram = direct_sum(U_GRAM, U_GRAM, U_GRAM, negate(E8_GRAM), negate(E8_GRAM))
    g = discriminant_group(make_lattice(gram))
    assert g.invariant_factors == ()
    assert g.order == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_discriminant_group_neg2k_plus_u(k):
    g = discriminant_group(make_lattice(direct_sum([[-2 * k]], U_GRAM)))
    assert g.invariant_factors == (2 * k,)
    assert g.order == 2 * k


def test_discriminant_group_a2():
    g = discriminant_group(make_lattice([[2, -1], [-1, 2]]))
    assert g.invariant_factors == (3,)
    assert g.order == 3


def test_dual_class_examples():
    u = make_lattice(U_GRAM)
    assert dual_class(u, primal([1, 0])).coords == (0, 1)
    assert dual_class(u, primal([1, 0])).frame is Frame.DUAL
    m = make_lattice([[-2]])
    assert dual_class(m, primal([1])).coords == (-2,)


def test_primal_of_dual_examples():
    u = make_lattice(U_GRAM)
    assert primal_of_dual(u, dual([0, 1])).coords == (1, 0)
    m = make_lattice([[-2]])
    assert primal_of_dual(m, dual([1])).coords == (Fraction(-1, 2),)
    d = make_lattice([[2, 0], [0, -2]])
    assert primal_of_dual(d, dual([0, -2])).coords == (0, 1)


def test_dual_pairing_matches_q():
    d = make_lattice([[2, 1], [1, -4]])
    x = primal([3, "1/2"])
    y = primal([-1, 2])
    assert dual_pairing(dual_class(d, x), y) == q_eval(d, x, y)


def test_divisibility_examples():
    u = make_lattice(U_GRAM)
    assert divisibility(u, primal([1, 1])) == 1
    m = make_lattice([[-2]])
    assert divisibility(m, primal([1])) == 2
    for k in (1, 3, 7):
        lk = make_lattice(direct_sum([[-2 * k]], U_GRAM))
        assert divisibility(lk, primal([1, 0, 0])) == 2 * k
    with pytest.raises(ZeroVectorError):
        divisibility(u, primal([0, 0]))


def test_is_primitive_examples():
    u = make_lattice(U_GRAM)
    assert is_primitive(u, primal([1, 0]))
    assert not is_primitive(u, primal([2, 0]))
    with pytest.raises(ZeroVectorError):
        is_primitive(u, primal([0, 0]))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_q_symmetric_and_bilinear(data):
    rank = data.draw(st.integers(1, 4), label="rank")
    seed = data.draw(st.integers(0, 10**9), label="seed")
    lat = make_lattice(random_nondegenerate_gram(random.Random(seed), rank))
    coords = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    x = primal(data.draw(st.lists(coords, min_size=rank, max_size=rank), label="x"))
    y = primal(data.draw(st.lists(coords, min_size=rank, max_size=rank), label="y"))
    c = data.draw(coords, label="c")
    assert q_eval(lat, x, y) == q_eval(lat, y, x)
    assert q_eval(lat, x.scaled(c), y) == c * q_eval(lat, x, y)
    assert q_eval(lat, x + y, y) == q_eval(lat, x, y) + q_eval(lat, y, y)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_dual_round_trip(data):
    rank = data.draw(st.integers(1, 4), label="rank")
    seed = data.draw(st.integers(0, 10**9), label="seed")
    lat = make_lattice(random_nondegenerate_gram(random.Random(seed), rank))
    coords = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    x = primal(data.draw(st.lists(coords, min_size=rank, max_size=rank), label="x"))
    assert primal_of_dual(lat, dual_class(lat, x)) == x


@given(st.integers(0, 10**9), st.integers(2, 4))
@settings(max_examples=40, deadline=None)
def test_signature_invariant_under_unimodular_change(seed, rank):
    rng = random.Random(seed)
    gram = random_nondegenerate_gram(rng, rank)
    lat = make_lattice(gram)
    t = random_unimodular(rng, rank)
    lat2 = make_lattice(conjugate(gram, t))
    assert lat.signature == lat2.signature
    assert abs(lat.det) == abs(lat2.det)


def test_k3_type_signature():
    lat = make_lattice(k3_type_gram(2))
    assert lat.rank == 23
    assert lat.signature == (3, 20)


def test_divisibility_of_basis_vector_divides_det():
    rng = random.Random(7)
    for _ in range(30):
        rank = rng.randint(1, 4)
        lat = make_lattice(random_nondegenerate_gram(rng, rank))
        for i in range(rank):
            e = [0] * rank
            e[i] = 1
            assert abs(lat.det) % divisibility(lat, primal(e)) == 0
