#include "irrforge/similarity.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace irrforge;
using namespace irrforge::similarity;
using numkernel::Projection;

namespace {

CMatrix cdiag(std::initializer_list<cplx> d) {
  CVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (cplx z : d) v(i++) = z;
  return v.asDiagonal();
}

CMatrix upper3() {
  CMatrix t(3, 3);
  t << 1, 1, 1, 0, 2, 0, 0, 0, 3;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// word-algebra oracle and random instances
// ---------------------------------------------------------------------------

TEST_CASE("word_algebra_dim on basic families") {
  auto r1 = oracle::word_algebra_dim({cdiag({1, 2, 3})}, 20);
  CHECK(r1.final_dim == 3);
  CHECK(r1.stabilized);

  CMatrix e1(2, 2), f1(2, 2);
  e1 << 1, 0, 0, 0;
  f1 << 0.5, 0.5, 0.5, 0.5;
  auto r2 = oracle::word_algebra_dim({e1, f1}, 20);
  CHECK(r2.final_dim == 4);

  auto r3 = oracle::word_algebra_dim({upper3()}, 30);
  CHECK(r3.final_dim == 9);

  for (size_t i = 1; i < r3.dims.size(); ++i) CHECK(r3.dims[i] >= r3.dims[i - 1]);
  CHECK_THROWS_AS(oracle::word_algebra_dim({upper3()}, 1), NotStabilized);
}

TEST_CASE("random_normal spectrum, normality, determinism") {
  CMatrix z = oracle::random_normal({cplx(0)}, {3}, {11});
  CHECK(fnorm(z) == 0.0);

  CMatrix n = oracle::random_normal({cplx(1), cplx(2)}, {1, 1}, {42});
  CHECK(fnorm(n.adjoint() * n - n * n.adjoint()) <= 1e-12);
  auto sd = numkernel::normal_eig(n);
  REQUIRE(sd.count() == 2);
  CHECK(std::abs(sd.values[0] - cplx(1)) < 1e-10);
  CHECK(std::abs(sd.values[1] - cplx(2)) < 1e-10);

  CMatrix n2 = oracle::random_normal({cplx(1), cplx(2)}, {1, 1}, {42});
  CHECK((n.array() == n2.array()).all());  // bit-identical for equal seeds
  CMatrix n3 = oracle::random_normal({cplx(1), cplx(2)}, {1, 1}, {43});
  CHECK(fnorm(n - n3) > 1e-8);
}

TEST_CASE("random_invertible condition bounds") {
  CMatrix u = oracle::random_invertible(3, 1.0, {5});
  CHECK(fnorm(u.adjoint() * u - identity(3)) <= 1e-12);
  CMatrix x = oracle::random_invertible(4, 100.0, {7});
  CHECK(numkernel::condition_number(x) <= 100.0 + 1e-6);
  CHECK(numkernel::singular_values(x)(3) > 0.0);
}

TEST_CASE("certify agrees on reducible and irreducible instances") {
  auto c1 = oracle::certify(CMatrix(2.0 * identity(2)));
  CHECK(c1.verdict == staralg::Verdict::Reducible);
  auto c2 = oracle::certify(cdiag({1, 2}));
  CHECK(c2.commutant_dim == 2);
  CHECK(c2.word_dim == 2);
  auto c3 = oracle::certify(upper3());
  CHECK(c3.verdict == staralg::Verdict::Irreducible);
  CHECK(c3.word_dim == 9);
}

// ---------------------------------------------------------------------------
// partition3
// ---------------------------------------------------------------------------

TEST_CASE("partition3 greedy walk on distinct eigenvalues") {
  auto sd = numkernel::normal_eig(cdiag({1, 2, 3}));
  auto part = partition3(sd);
  CHECK(part.P1.rank == 1);
  CHECK(part.P2.rank == 1);
  CHECK(part.P3.rank == 1);
  CHECK(fnorm(part.P1.matrix - cdiag({1, 0, 0})) < 1e-12);
  CHECK(fnorm(part.P2.matrix - cdiag({0, 1, 0})) < 1e-12);
}

TEST_CASE("partition3 on doubled spectrum") {
  auto sd = numkernel::normal_eig(cdiag({1, 1, 2, 2, 3, 3}));
  auto part = partition3(sd);
  CHECK(part.P1.rank == 2);
  CHECK(part.P2.rank == 2);
  CHECK(part.P3.rank == 2);
}

TEST_CASE("partition3 half-rank branch") {
  auto sd = numkernel::normal_eig(cdiag({1, 1, 2, 3}));
  auto part = partition3(sd);
  CHECK(part.P1.rank == 2);
  CHECK(fnorm(part.P1.matrix - cdiag({1, 1, 0, 0})) < 1e-12);
  CHECK(part.P2.rank == 1);
  CHECK(part.P3.rank == 1);
}

TEST_CASE("partition3 hypothesis violations") {
  CHECK_THROWS_AS(partition3(numkernel::normal_eig(cdiag({1, 1, 1, 2}))),
                  HypothesisViolated);
  CHECK_THROWS_AS(partition3(numkernel::normal_eig(cdiag({1, 2}))), HypothesisViolated);
}

// ---------------------------------------------------------------------------
// irreducible_upper_triangular
// ---------------------------------------------------------------------------

TEST_CASE("upper-triangular model in M3 with unit ranks") {
  auto sd = numkernel::normal_eig(cdiag({1, 2, 3}));
  auto part = partition3(sd);
  auto model = irreducible_upper_triangular(part);
  // standard-basis partition: the model is literally upper triangular
  CHECK(std::abs(model.T(0, 0) - cplx(1)) < 1e-12);
  CHECK(std::abs(model.T(1, 1) - cplx(2)) < 1e-12);
  CHECK(std::abs(model.T(2, 2) - cplx(3)) < 1e-12);
  CHECK(model.T(0, 1).real() > 0);
  CHECK(model.T(0, 2).real() > 0);
  CHECK(std::abs(model.T(1, 0)) < 1e-14);
  CHECK(std::abs(model.T(2, 0)) < 1e-14);
  CHECK(std::abs(model.T(2, 1)) < 1e-14);
  CHECK(model.certificate.verdict == staralg::Verdict::Irreducible);
  auto word = oracle::word_algebra_dim({model.T}, 30);
  CHECK(word.final_dim == 9);

  // the perturbation is exactly nilpotent of order 2
  CMatrix w = model.X - identity(3);
  CHECK(fnorm(w * w) == 0.0);
  CHECK(fnorm(model.X * model.S * model.Xinv - model.T) <= 1e-12 * fnorm(model.T));
}

TEST_CASE("upper-triangular model on mixed ranks") {
  auto sd = numkernel::normal_eig(cdiag({1, 1, 1, 2, 2, 3}));
  auto part = partition3(sd);
  auto model = irreducible_upper_triangular(part);
  CHECK(model.certificate.verdict == staralg::Verdict::Irreducible);
  CMatrix w = model.X - identity(6);
  CHECK(fnorm(w * w) <= 1e-14);
}

// ---------------------------------------------------------------------------
// similar_to_irreducible_normal
// ---------------------------------------------------------------------------

TEST_CASE("normal pipeline succeeds on diag(1,2,3)") {
  CMatrix n = cdiag({1, 2, 3});
  auto out = similar_to_irreducible_normal(n);
  auto& res = std::get<SimilarityResult>(out);
  CHECK(res.certificate.commutant_dim == 1);
  CHECK(res.certificate.word_dim == 9);
  CHECK(fnorm(res.X * n * res.Xinv - res.conjugated) <= 1e-9);
  CHECK(fnorm(res.Xinv * res.conjugated * res.X - n) <= 1e-9 * res.cond);
  CHECK(fnorm(res.X * res.Xinv - identity(3)) <= 1e-12 * res.cond);
}

TEST_CASE("normal pipeline obstruction: large eigenspace") {
  auto out = similar_to_irreducible_normal(cdiag({1, 1, 2}));
  auto& ob = std::get<Obstruction>(out);
  CHECK(ob.kind == Obstruction::Kind::EigMultiplicityTooLarge);
  CHECK(std::abs(ob.lambda - cplx(1)) < 1e-10);
  // witness re-verifies: rank(lambda I - N) < n/2
  Index r = numkernel::numeric_rank(ob.lambda * identity(3) - cdiag({1, 1, 2}));
  CHECK(2 * r < 3);
}

TEST_CASE("normal pipeline obstruction: quadratic dependence") {
  CMatrix n = cdiag({1, 1, 2, 2});
  auto out = similar_to_irreducible_normal(n);
  auto& ob = std::get<Obstruction>(out);
  CHECK(ob.kind == Obstruction::Kind::QuadraticDependence);
  CMatrix resid = ob.coeffs[0] * identity(4) + ob.coeffs[1] * n + ob.coeffs[2] * n * n;
  CHECK(fnorm(resid) <= 1e-9 * (1.0 + fnorm(n) * fnorm(n)));
  cplx scale = ob.coeffs[0] / 2.0;
  CHECK(std::abs(ob.coeffs[1] - scale * (-3.0)) < 1e-9);
  CHECK(std::abs(ob.coeffs[2] - scale) < 1e-9);
}

TEST_CASE("normal pipeline 1x1 and 2x2 boundary") {
  auto out1 = similar_to_irreducible_normal(CMatrix(cplx(7) * identity(1)));
  CHECK(std::get<SimilarityResult>(out1).certificate.commutant_dim == 1);

  auto out2 = similar_to_irreducible_normal(cdiag({1, 2}));
  auto& res2 = std::get<SimilarityResult>(out2);
  CHECK(res2.certificate.commutant_dim == 1);
  CHECK(res2.certificate.word_dim == 4);

  auto out3 = similar_to_irreducible_normal(CMatrix(cplx(0, 2) * identity(2)));
  auto& ob3 = std::get<Obstruction>(out3);
  CHECK(ob3.kind == Obstruction::Kind::ScalarIn2x2);

  CMatrix rot(2, 2);
  rot << 0, -1, 1, 0;  // normal, eigenvalues +-i
  auto out4 = similar_to_irreducible_normal(rot);
  CHECK(std::get<SimilarityResult>(out4).certificate.commutant_dim == 1);

  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  CHECK_THROWS_AS(similar_to_irreducible_normal(j), NotNormal);
}

// ---------------------------------------------------------------------------
// strong reducibility detection and witnesses
// ---------------------------------------------------------------------------

TEST_CASE("strong_reducibility_detect") {
  auto d1 = strong_reducibility_detect(cdiag({1, 1, 2}));
  CHECK(d1.kind == Detection::Kind::Condition1);
  CHECK(std::abs(d1.lambda - cplx(1)) < 1e-10);

  auto d2 = strong_reducibility_detect(cdiag({1, 1, 0, 0}));
  CHECK(d2.kind == Detection::Kind::Condition2);

  auto d3 = strong_reducibility_detect(upper3());
  CHECK(d3.kind == Detection::Kind::None);

  CHECK_THROWS_AS(strong_reducibility_detect(cdiag({1, 2})), std::invalid_argument);
}

TEST_CASE("reducing projection witness, condition 1 at X = I") {
  CMatrix t = cdiag({1, 1, 2});
  auto det = strong_reducibility_detect(t);
  auto q = reducing_projection_witness(t, identity(3), det);
  CHECK(q.rank == 1);
  CHECK(fnorm(q.matrix - cdiag({0, 0, 1})) <= 1e-12);
  CHECK(fnorm(q.matrix * t - t * q.matrix) == 0.0);
}

TEST_CASE("reducing projection witness for a scalar") {
  CMatrix t = cplx(2, 1) * identity(3);
  Detection det;
  det.kind = Detection::Kind::Condition2;
  det.coeffs = {cplx(-2, -1) / std::sqrt(std::norm(cplx(2, 1)) + 1.0),
                cplx(1) / std::sqrt(std::norm(cplx(2, 1)) + 1.0), cplx(0)};
  CMatrix x = oracle::random_invertible(3, 10, {17});
  auto q = reducing_projection_witness(t, x, det);
  CHECK(q.rank == 1);
}

TEST_CASE("reducing projection witness, condition 2 under random similarities") {
  CMatrix t = cdiag({1, 1, 2, 2});
  auto det = strong_reducibility_detect(t);
  REQUIRE(det.kind == Detection::Kind::Condition2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    CMatrix x = oracle::random_invertible(4, 100, {900 + s});
    auto q = reducing_projection_witness(t, x, det);
    CHECK(q.rank > 0);
    CHECK(q.rank < 4);
    Eigen::PartialPivLU<CMatrix> lu(x);
    CMatrix sconj = x * t * lu.solve(identity(4));
    CHECK(fnorm(q.matrix * sconj - sconj * q.matrix) <= 1e-9 * fnorm(t));
  }
}

TEST_CASE("reducing projection witness requires a detection") {
  CHECK_THROWS_AS(reducing_projection_witness(upper3(), identity(3), Detection{}),
                  NotApplicableError);
}

// ---------------------------------------------------------------------------
// rank similarity unitary
// ---------------------------------------------------------------------------

TEST_CASE("rank_similarity_unitary") {
  CMatrix t = cdiag({1, 0, 0, 2, 0});
  oracle::Rng rng({31});
  CMatrix xu = oracle::haar_unitary(5, rng);
  CMatrix u = rank_similarity_unitary(t, xu);
  auto rt = numkernel::range_projection(t);
  CMatrix s = xu * t * xu.adjoint();
  auto rs = numkernel::range_projection(s);
  CHECK(fnorm(rs.matrix - u.adjoint() * rt.matrix * u) <= 1e-9);

  CHECK(fnorm(rank_similarity_unitary(CMatrix::Zero(2, 2), identity(2)) - identity(2)) ==
        0.0);

  CMatrix x = oracle::random_invertible(5, 100, {32});
  CMatrix u2 = rank_similarity_unitary(t, x);
  Eigen::PartialPivLU<CMatrix> lu(x);
  CMatrix s2 = x * t * lu.solve(identity(5));
  auto rs2 = numkernel::range_projection(s2);
  CHECK(rs2.rank == rt.rank);
  CHECK(fnorm(rs2.matrix - u2.adjoint() * rt.matrix * u2) <= 1e-9);
  CHECK(fnorm(u2.adjoint() * u2 - identity(5)) <= 1e-12);
}

// ---------------------------------------------------------------------------
// Dunford split
// ---------------------------------------------------------------------------

TEST_CASE("jordan_chevalley on explicit 2x2 inputs") {
  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  auto dp = jordan_chevalley(j);
  CHECK(fnorm(dp.S - identity(2)) <= 1e-12);
  CHECK(std::abs(dp.K(0, 1) - cplx(1)) <= 1e-12);

  CMatrix d(2, 2);
  d << 1, 1, 0, 2;
  auto dp2 = jordan_chevalley(d);
  CHECK(fnorm(dp2.K) <= 1e-12);
  CHECK(fnorm(dp2.S - d) <= 1e-12);
}

TEST_CASE("jordan_chevalley on assembled Jordan data") {
  CMatrix jform = CMatrix::Zero(3, 3);
  jform(0, 0) = 1;
  jform(0, 1) = 1;
  jform(1, 1) = 1;
  jform(2, 2) = 3;
  CMatrix y = oracle::random_invertible(3, 50, {1001});
  Eigen::PartialPivLU<CMatrix> lu(y);
  CMatrix t = y * jform * lu.solve(identity(3));
  auto dp = jordan_chevalley(t);
  CHECK(fnorm(dp.S + dp.K - t) <= 1e-8 * (1.0 + fnorm(t)));
  CHECK(fnorm(dp.S * dp.K - dp.K * dp.S) <= 1e-8 * (1.0 + fnorm(t) * fnorm(t)));
  CHECK(fnorm(CMatrix(dp.K * dp.K)) <= 1e-8 * (1.0 + fnorm(dp.K)) * (1.0 + fnorm(dp.K)));

  auto full = dunford_full(t);
  for (const auto& pi : full.idempotents)
    CHECK(fnorm(pi * pi - pi) <= 1e-8 * (1.0 + fnorm(pi) * fnorm(pi)));
}

TEST_CASE("jordan_chevalley rejects clustered spectra") {
  CHECK_THROWS_AS(jordan_chevalley(cdiag({0, 1e-7})), SpectrumTooClustered);
}

// ---------------------------------------------------------------------------
// spectral pipeline
// ---------------------------------------------------------------------------

TEST_CASE("spectral pipeline success on a diagonalizable instance") {
  CMatrix d = cdiag({1, 2, 3});
  CMatrix y = oracle::random_invertible(3, 50, {2002});
  Eigen::PartialPivLU<CMatrix> lu(y);
  CMatrix t = y * d * lu.solve(identity(3));
  auto out = similar_to_irreducible_spectral(t);
  auto& res = std::get<SimilarityResult>(out);
  CHECK(res.certificate.commutant_dim == 1);
  CHECK(fnorm(res.Xinv * res.conjugated * res.X - t) <= 1e-8 * res.cond * (1.0 + fnorm(t)));
}

TEST_CASE("spectral pipeline on nonscalar 2x2 inputs succeeds") {
  CMatrix j(2, 2);
  j << 1, 1, 0, 1;
  auto out = similar_to_irreducible_spectral(j);
  auto& res = std::get<SimilarityResult>(out);
  CHECK(res.certificate.commutant_dim == 1);

  CMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  auto out2 = similar_to_irreducible_spectral(nil);
  CHECK(std::get<SimilarityResult>(out2).certificate.commutant_dim == 1);

  auto out3 = similar_to_irreducible_spectral(CMatrix(cplx(3) * identity(2)));
  CHECK(std::get<Obstruction>(out3).kind == Obstruction::Kind::ScalarIn2x2);
}

TEST_CASE("spectral pipeline inconclusive case") {
  CMatrix t(3, 3);
  t << 1, 1, 0, 0, 1, 0, 0, 0, 2;
  auto out = similar_to_irreducible_spectral(t);
  CHECK(std::holds_alternative<Inconclusive>(out));
}

TEST_CASE("spectral pipeline obstruction when the input itself trips a detector") {
  auto out = similar_to_irreducible_spectral(cdiag({1, 1, 2}));
  auto& ob = std::get<Obstruction>(out);
  CHECK(ob.kind == Obstruction::Kind::EigMultiplicityTooLarge);

  auto out2 = similar_to_irreducible_spectral(cdiag({1, 1, 2, 2}));
  CHECK(std::get<Obstruction>(out2).kind == Obstruction::Kind::QuadraticDependence);
}

// ---------------------------------------------------------------------------
// abelian-commutant pipeline
// ---------------------------------------------------------------------------

TEST_CASE("abelian pipeline: already irreducible nilpotent Jordan block") {
  CMatrix j3 = CMatrix::Zero(3, 3);
  j3(0, 1) = 1;
  j3(1, 2) = 1;
  auto out = abelian_commutant_pipeline(j3);
  REQUIRE(out.has_value());
  CHECK(out->certificate.word_dim == 9);
  CHECK(fnorm(out->X - identity(3)) == 0.0);
}

TEST_CASE("abelian pipeline: distinct diagonal goes through the model") {
  CMatrix t = cdiag({1, 2, 3});
  auto out = abelian_commutant_pipeline(t);
  REQUIRE(out.has_value());
  CHECK(out->certificate.commutant_dim == 1);
  CHECK(fnorm(out->Xinv * out->conjugated * out->X - t) <= 1e-8 * out->cond);
}

TEST_CASE("abelian pipeline: 2x2 corner branch") {
  CMatrix t = cdiag({1, 2});
  auto out = abelian_commutant_pipeline(t);
  REQUIRE(out.has_value());
  CHECK(out->certificate.commutant_dim == 1);
  CHECK(fnorm(out->Xinv * out->conjugated * out->X - t) <= 1e-8 * out->cond);
}

TEST_CASE("abelian pipeline: not applicable when the commutant is non-abelian") {
  CHECK_FALSE(abelian_commutant_pipeline(identity(2)).has_value());
  CHECK_FALSE(abelian_commutant_pipeline(cdiag({1, 1, 2})).has_value());
}
