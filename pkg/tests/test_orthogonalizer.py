import itertools
import random
from fractions import Fraction

import pytest

from spherepoly import Polynomial, Subspace, build_form, enumerate_multiindices, orthogonal_basis, orthogonal_basis_sphere, radical, siegel_basis, subspace_height, verify_certificate
from spherepoly import linalg
from spherepoly.errors import DomainError
from spherepoly.orthogonalizer import sphere_setup, squared_height_bound

import corpus


def poly_space(*polys, M=None):
    return Subspace.from_polynomials(list(polys), M)


X1sq = Polynomial.monomial((2, 0))
X2sq = Polynomial.monomial((0, 2))
one = Polynomial.constant(2)
X1 = Polynomial.monomial((1, 0))


def minima_product_by_box_scan(vecs, box):
    lat = linalg.integer_lattice_basis(vecs)
    pts = [v for v in itertools.product(range(-box, box + 1), repeat=lat.dim) if any(v) and lat.contains(v)]
    pts.sort(key=lambda v: max(map(abs, v)))
    chosen = []
    for v in pts:
        if linalg.rank(chosen + [v]) > len(chosen):
            chosen.append(v)
    if len(chosen) < len(vecs):
        return None
    out = 1
    for v in chosen:
        out *= max(map(abs, v)) ** 2
    return out


def test_siegel_fixtures():
    res = siegel_basis([[1, 1, 0], [0, 1, 1]])
    assert res.certified and res.product_sq == 1 and res.height_sq == 3
    res = siegel_basis([[Fraction(1, 2), Fraction(1, 2)]])
    assert res.vectors == ((1, 1),) and res.height_sq == 2


def test_siegel_vectors_lie_in_lattice_and_satisfy_bound():
    rng = random.Random(21)
    for _ in range(30):
        L = rng.randint(2, 6)
        n = rng.randint(1, min(3, L))
        vecs = corpus.full_rank_vectors(rng, n, L, 3, rational_entries=True)
        lat = linalg.integer_lattice_basis(vecs)
        for strategy in ("auto", "enumerate"):
            res = siegel_basis(vecs, strategy=strategy)
            assert res.certified
            assert res.product_sq <= res.height_sq
            assert linalg.rank(res.vectors) == n
            assert all(lat.contains(v) for v in res.vectors)


def test_enumeration_reaches_successive_minima():
    rng = random.Random(22)
    checked = 0
    for _ in range(20):
        L = rng.randint(2, 4)
        n = rng.randint(1, L)
        vecs = corpus.full_rank_vectors(rng, n, L, 2)
        oracle = minima_product_by_box_scan(vecs, 3)
        if oracle is None:
            continue
        res = siegel_basis(vecs, strategy="enumerate")
        assert res.product_sq == oracle
        checked += 1
    assert checked >= 10


def test_siegel_rejects_bad_input():
    with pytest.raises(DomainError):
        siegel_basis([[1, 0]], strategy="magic")
    with pytest.raises(DomainError):
        siegel_basis([])


def test_worked_fixture_pure_squares():
    V = poly_space(X1sq, X2sq)
    cert = orthogonal_basis_sphere(V)
    Vd, B = sphere_setup(V)
    polys = {canon(Polynomial.from_vector(v, Vd.ambient)) for v in cert.vectors}
    assert polys == {canon(X1sq), canon(3 * X2sq - X1sq)}
    assert cert.form_values[0][1] == 0
    assert cert.heights == (1, 3) and cert.product_sq == 9
    assert verify_certificate(cert, Vd, B).ok


def canon(P):
    lead = P.terms[max(P.terms)]
    return P if lead > 0 else -P


def test_worked_fixture_constant_and_linear():
    V = poly_space(one, one + X1)
    cert = orthogonal_basis_sphere(V)
    Vd, B = sphere_setup(V)
    polys = {canon(Polynomial.from_vector(v, Vd.ambient)) for v in cert.vectors}
    assert polys == {canon(one), canon(X1)}


def test_sphere_radical_is_handled():
    # 1 - X1^2 - X2^2 has norm zero and is orthogonal to everything in this span
    V = poly_space(one, X1sq, X2sq)
    Vd, B = sphere_setup(V)
    rad = radical(Vd, B)
    assert len(rad) == 1
    w, _ = linalg.primitivize(rad[0])
    assert Polynomial.from_vector(w, Vd.ambient) in (one - X1sq - X2sq, X1sq + X2sq - one)
    cert = orthogonal_basis(Vd, B)
    assert cert.steps[0] == "radical"
    report = verify_certificate(cert, Vd, B)
    assert report.ok, report.failures


def test_random_integer_forms():
    rng = random.Random(23)
    for _ in range(15):
        L = rng.randint(3, 6)
        n = rng.randint(1, min(4, L))
        vecs = corpus.full_rank_vectors(rng, n, L, 3)
        A = corpus.int_matrix(rng, L, L, 3)
        B = [[A[i][j] + A[j][i] for j in range(L)] for i in range(L)]
        V = Subspace.from_vectors(vecs)
        cert = orthogonal_basis(V, B)
        report = verify_certificate(cert, V, B)
        assert report.ok, report.failures
        assert cert.orthogonal


def test_zero_form_breaks_only_the_bound():
    V = Subspace.from_vectors([[1, 2, 0], [0, 1, 1]])
    B = [[0] * 3 for _ in range(3)]
    cert = orthogonal_basis(V, B)
    assert cert.orthogonal and set(cert.steps) == {"radical"}
    assert cert.bound_sq == 0 and not cert.bound_ok


def test_verification_catches_tampering():
    V = poly_space(X1sq, X2sq)
    Vd, B = sphere_setup(V)
    cert = orthogonal_basis(Vd, B)
    bad = type(cert)(**{**cert.__dict__, "vectors": (cert.vectors[0], tuple(2 * x for x in cert.vectors[1]))})
    report = verify_certificate(bad, Vd, B)
    assert not report.checks["primitive"] and not report.checks["heights"]
    swapped = type(cert)(**{**cert.__dict__, "vectors": (cert.vectors[0], cert.vectors[0])})
    assert not verify_certificate(swapped, Vd, B).checks["span"]


def test_form_must_be_symmetric_and_sized():
    V = Subspace.from_vectors([[1, 0], [0, 1]])
    with pytest.raises(DomainError):
        orthogonal_basis(V, [[1, 2], [3, 4]])
    with pytest.raises(DomainError):
        orthogonal_basis(V, [[1]])


def test_bound_formula():
    assert squared_height_bound(6, 2, Fraction(1), Fraction(1)) == 6**18
    assert squared_height_bound(3, 1, Fraction(2), Fraction(5)) == (27 * 2) ** 2 * 5


def test_certificate_serializes_polynomials():
    V = poly_space(X1sq, X2sq)
    Vd, B = sphere_setup(V)
    doc = orthogonal_basis(Vd, B).to_dict(Vd.ambient)
    assert doc["M"] == 2 and doc["N"] == 2 and len(doc["polynomials"]) == 2
    assert doc["verdict"] is True


def test_radical_fixtures():
    V = Subspace.from_vectors([[1, 0, 0], [0, 1, 0]])
    assert radical(V, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]) == [[0, 1, 0]]
    assert len(radical(V, [[0] * 3 for _ in range(3)])) == 2
    assert radical(V, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []


def test_sphere_form_skips_radical_on_random_corpus():
    rng = random.Random(24)
    for _ in range(20):
        N, d = rng.choice([(2, 2), (2, 3), (3, 2)])
        V = Subspace.from_vectors(corpus.poly_subspace_vectors(rng, N, d, rng.randint(1, 3)), enumerate_multiindices(d, N))
        Vd, B = sphere_setup(V)
        if not radical(Vd, B):
            assert "radical" not in orthogonal_basis(Vd, B).steps
