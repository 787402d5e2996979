from fractions import Fraction

from foldkit import ratlinalg as la


def test_rank_and_kernel():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert la.rank(m) == 2
    ker = la.kernel_basis(m)
    assert len(ker) == 1
    v = ker[0]
    assert all(sum(Fraction(m[i][j]) * v[j] for j in range(3)) == 0 for i in range(3))


def test_solve_consistent_and_inconsistent():
    m = [[2, 1], [1, 3]]
    x = la.solve(m, [5, 10])
    assert la.mat_vec(m, x) == [5, 10]
    assert la.solve([[1, 1], [1, 1]], [0, 1]) is None


def test_det_and_minors():
    m = [[2, -1], [-1, 2]]
    assert la.det(m) == 3
    assert la.leading_principal_minors(m) == [2, 3]
    assert la.det([[4, -4], [-4, 4]]) == 0


def test_definiteness():
    assert la.is_positive_definite([[2, -1], [-1, 2]])
    assert not la.is_positive_definite([[4, -4], [-4, 4]])
    assert la.is_positive_semidefinite([[4, -4], [-4, 4]])
    assert not la.is_positive_semidefinite([[2, -3], [-3, 2]])
    # zero pivot with a nonzero row is indefinite
    assert not la.is_positive_semidefinite([[0, 1], [1, 0]])


def test_primitive_integer_vector():
    v = [Fraction(1, 2), Fraction(3, 4), Fraction(-1, 4)]
    assert la.primitive_integer_vector(v) == [2, 3, -1]
    assert la.primitive_integer_vector([Fraction(-2), Fraction(-4)]) == [1, 2]


def test_inverse_roundtrip_via_solve():
    m = [[1, 2], [3, 5]]
    inv = la.transpose([la.solve(m, [1, 0]), la.solve(m, [0, 1])])
    assert la.mat_mul(m, inv) == la.identity(2)
