#pragma once

// Similarity-to-irreducible machinery: the three-projection partition, the
// upper-triangular irreducible model with its explicit similarity, the
// decision pipeline for normal matrices with machine-checkable obstructions,
// strong-reducibility detection with witness projections, rank invariance
// under similarity, the semisimple/nilpotent (Dunford) split, the spectral
// pipeline, and the abelian-commutant pipeline.

#include "irrforge/generators.hpp"
#include "irrforge/oracle.hpp"

#include <variant>

namespace irrforge::similarity {

using numkernel::Projection;
using numkernel::SpectralDecomposition;
using staralg::IrreducibilityCertificate;
using staralg::Verdict;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Three orthogonal nonzero projections summing to I, each weaker than its
/// complement, with three separated scalars attached.
struct Partition3 {
  Projection P1, P2, P3;
  std::array<cplx, 3> alphas{cplx(1), cplx(2), cplx(3)};
};

struct SimilarityResult {
  CMatrix X;
  CMatrix Xinv;
  CMatrix conjugated;  // X * input * X^-1
  double cond = 1.0;
  IrreducibilityCertificate certificate;
};

/// Machine-checkable reason a decision procedure answered "no": either an
/// eigenvalue whose eigenspace is too large, a certified quadratic
/// dependence, or a 2x2 scalar.
struct Obstruction {
  enum class Kind { EigMultiplicityTooLarge, QuadraticDependence, ScalarIn2x2 };
  Kind kind;
  cplx lambda{};
  std::array<cplx, 3> coeffs{};
};

struct Inconclusive {
  std::string reason;
};

using NormalOutcome = std::variant<SimilarityResult, Obstruction>;
using SpectralOutcome = std::variant<SimilarityResult, Obstruction, Inconclusive>;

/// Semisimple + nilpotent split T = S + K with SK = KS.
struct DunfordPair {
  CMatrix S;
  CMatrix K;
};

/// Full Dunford data: T = Y * blockdiag * Yinv, S = Y diag(values) Yinv,
/// Riesz idempotents per eigenvalue cluster.
struct DunfordFull {
  CMatrix S, K, Y, Yinv;
  std::vector<cplx> values;
  std::vector<Index> mults;
  std::vector<CMatrix> idempotents;
};

/// Outcome of the strong-reducibility detectors (sufficient conditions only;
/// None is not a claim of non-strong-reducibility).
struct Detection {
  enum class Kind { None, Condition1, Condition2 };
  Kind kind = Kind::None;
  cplx lambda{};
  std::array<cplx, 3> coeffs{};
  bool detected() const { return kind != Kind::None; }
};

struct UpperTriangularModel {
  CMatrix T;     // the irreducible upper-triangular operator
  CMatrix S;     // sum alpha_j E_j, similar to T via X
  CMatrix X;     // X S X^-1 = T, with (X - I)^2 = 0
  CMatrix Xinv;  // 2I - X
  IrreducibilityCertificate certificate;
};

// ---------------------------------------------------------------------------
// Partition into three comparable projections
// ---------------------------------------------------------------------------

/// Core of the partition lemma, on an ordered list of orthogonal projections
/// partitioning I, each of rank <= n/2.
inline Partition3 partition3_from_projections(const std::vector<Projection>& projs,
                                              const Tolerances& tol = {}) {
  (void)tol;
  if (projs.size() < 3)
    throw HypothesisViolated("partition3: fewer than three distinct spectral parts");
  const Index n = projs.front().dim();
  for (const auto& p : projs)
    if (2 * p.rank > n)
      throw HypothesisViolated("partition3: a spectral projection has rank > n/2");

  auto sum_range = [&](size_t lo, size_t hi) {
    CMatrix m = CMatrix::Zero(n, n);
    Index r = 0;
    for (size_t i = lo; i < hi; ++i) {
      m += projs[i].matrix;
      r += projs[i].rank;
    }
    return numkernel::projection_unchecked(std::move(m), r);
  };

  Partition3 out;
  // First branch: an exactly-half-rank part becomes P1, the rest splits.
  for (size_t k = 0; k < projs.size(); ++k) {
    if (2 * projs[k].rank == n) {
      out.P1 = projs[k];
      std::vector<Projection> rest;
      for (size_t i = 0; i < projs.size(); ++i)
        if (i != k) rest.push_back(projs[i]);
      out.P2 = rest.front();
      CMatrix m = CMatrix::Zero(n, n);
      Index r = 0;
      for (size_t i = 1; i < rest.size(); ++i) {
        m += rest[i].matrix;
        r += rest[i].rank;
      }
      out.P3 = numkernel::projection_unchecked(std::move(m), r);
      return out;
    }
  }
  // Greedy walk: accumulate while the total stays <= n/2.
  size_t idx = 0;
  Index cum = 0;
  while (idx < projs.size() && 2 * (cum + projs[idx].rank) <= n) {
    cum += projs[idx].rank;
    ++idx;
  }
  if (idx == 0 || idx + 1 >= projs.size())
    throw Error("partition3: greedy walk failed");  // unreachable under the preconditions
  out.P1 = sum_range(0, idx);
  out.P2 = projs[idx];
  out.P3 = sum_range(idx + 1, projs.size());
  return out;
}

inline Partition3 partition3(const SpectralDecomposition& sd, const Tolerances& tol = {}) {
  return partition3_from_projections(sd.projections, tol);
}

// ---------------------------------------------------------------------------
// The upper-triangular irreducible model
// ---------------------------------------------------------------------------

/// Builds T = sum alpha_j E_j + A V12 + B V13 in upper-triangular form with
/// A, B positive on sub-corners of the largest block and jointly generating
/// that corner, so that T is irreducible, together with the explicit
/// similarity X = I + A V12/(a2-a1) + B V13/(a3-a1) carrying the diagonal
/// part S onto T. The perturbation X - I squares to zero, so X^-1 = 2I - X.
inline UpperTriangularModel irreducible_upper_triangular(const Partition3& part,
                                                         const Tolerances& tol = {}) {
  struct Entry {
    const Projection* p;
    cplx alpha;
  };
  std::array<Entry, 3> e{Entry{&part.P1, part.alphas[0]}, Entry{&part.P2, part.alphas[1]},
                         Entry{&part.P3, part.alphas[2]}};
  std::stable_sort(e.begin(), e.end(),
                   [](const Entry& a, const Entry& b) { return a.p->rank > b.p->rank; });
  const Index r1 = e[0].p->rank, r2 = e[1].p->rank, r3 = e[2].p->rank;
  const Index n = e[0].p->dim();
  if (r3 < 1) throw ShapeInfeasible("irreducible_upper_triangular: empty part");
  if (r1 > r2 + r3)
    throw ShapeInfeasible("irreducible_upper_triangular: largest part exceeds the rest");
  const cplx a1 = e[0].alpha, a2 = e[1].alpha, a3 = e[2].alpha;

  CMatrix b1 = orthonormal_range_basis(e[0].p->matrix, r1);
  CMatrix b2 = orthonormal_range_basis(e[1].p->matrix, r2);
  CMatrix b3 = orthonormal_range_basis(e[2].p->matrix, r3);
  CMatrix theta(n, n);
  theta << b1, b2, b3;

  // Corner data on ran E1: F1 on the first r2 diagonal slots, G1' on the
  // last r3; their union covers the corner since r2 + r3 >= r1.
  CMatrix ahat, bhat, ucorner;
  if (r1 == 1) {
    ahat = CMatrix::Identity(1, 1);
    bhat = CMatrix::Identity(1, 1);
    ucorner = CMatrix::Identity(1, 1);
  } else {
    Index f0_lo, f0_hi;
    if (r2 < r1) {
      f0_lo = r2;  // F0 = E1 - F1, contained in G1'
      f0_hi = r1;
    } else {
      Index f0rank = std::min(r3, r1 / 2);
      f0_lo = r1 - r3;
      f0_hi = f0_lo + f0rank;
    }
    CMatrix f0 = CMatrix::Zero(r1, r1);
    for (Index i = f0_lo; i < f0_hi; ++i) f0(i, i) = 1.0;
    generators::MasaResult masa = generators::masa_complement_generator(
        identity(r1), numkernel::projection_unchecked(std::move(f0), f0_hi - f0_lo), tol);
    ucorner = masa.U;

    ahat = CMatrix::Zero(r1, r1);
    for (Index i = 0; i < r2; ++i) ahat(i, i) = 1.0 / static_cast<double>(i + 1);
    CMatrix bdiag = CMatrix::Zero(r1, r1);
    for (Index j = 0; j < r3; ++j)
      bdiag(r1 - r3 + j, r1 - r3 + j) = 1.0 / static_cast<double>(j + 1);
    bhat = ucorner.adjoint() * bdiag * ucorner;

    auto [cok, ccb] = staralg::generates(r1, {ahat, bhat}, tol);
    if (!cok)
      throw CertificationFailed(
          "irreducible_upper_triangular: corner pair does not generate");
  }

  CMatrix v12 = CMatrix::Zero(r1, r2);
  for (Index i = 0; i < r2; ++i) v12(i, i) = 1.0;
  CMatrix w13 = CMatrix::Zero(r1, r3);
  for (Index j = 0; j < r3; ++j) w13(r1 - r3 + j, j) = 1.0;
  CMatrix av12 = ahat * v12;
  CMatrix bv13 = bhat * (ucorner.adjoint() * w13);

  CMatrix that = CMatrix::Zero(n, n);
  that.topLeftCorner(r1, r1) = a1 * CMatrix::Identity(r1, r1);
  that.block(r1, r1, r2, r2) = a2 * CMatrix::Identity(r2, r2);
  that.block(r1 + r2, r1 + r2, r3, r3) = a3 * CMatrix::Identity(r3, r3);
  that.block(0, r1, r1, r2) = av12;
  that.block(0, r1 + r2, r1, r3) = bv13;

  CMatrix xhat = CMatrix::Identity(n, n);
  xhat.block(0, r1, r1, r2) = av12 / (a2 - a1);
  xhat.block(0, r1 + r2, r1, r3) = bv13 / (a3 - a1);

  UpperTriangularModel model;
  model.T = theta * that * theta.adjoint();
  CMatrix shat = CMatrix::Zero(n, n);
  shat.topLeftCorner(r1, r1) = a1 * CMatrix::Identity(r1, r1);
  shat.block(r1, r1, r2, r2) = a2 * CMatrix::Identity(r2, r2);
  shat.block(r1 + r2, r1 + r2, r3, r3) = a3 * CMatrix::Identity(r3, r3);
  model.S = theta * shat * theta.adjoint();
  model.X = theta * xhat * theta.adjoint();
  model.Xinv = 2.0 * identity(n) - model.X;

  if (fnorm(model.X * model.S * model.Xinv - model.T) >
      tol.cert_tol * (1.0 + fnorm(model.T)))
    throw Error("irreducible_upper_triangular: X S X^-1 = T residual too large");
  model.certificate = staralg::is_irreducible(model.T, tol);
  if (model.certificate.verdict != Verdict::Irreducible)
    throw CertificationFailed("irreducible_upper_triangular: model not certified");
  return model;
}

// ---------------------------------------------------------------------------
// Decision pipeline for normal matrices
// ---------------------------------------------------------------------------

namespace detail {

inline std::array<cplx, 3> scalar_relation(const CMatrix& t, const Tolerances& tol) {
  auto dep = staralg::dependence_I_T_T2(t, tol);
  if (dep) return *dep;
  return {cplx(0), cplx(1), cplx(0)};
}

}  // namespace detail

/// Decides whether the normal matrix N is similar to an irreducible matrix;
/// on success returns the explicit similarity with a dual-oracle certificate,
/// otherwise an obstruction whose witness re-verifies numerically.
inline NormalOutcome similar_to_irreducible_normal(const CMatrix& nmat,
                                                   const Tolerances& tol = {}) {
  require_square_finite(nmat, "similar_to_irreducible_normal");
  const Index n = nmat.rows();
  double nn = fnorm(nmat);
  if (fnorm(nmat.adjoint() * nmat - nmat * nmat.adjoint()) >
      tol.cert_tol * nn * nn + 1e-300)
    throw NotNormal("similar_to_irreducible_normal: input is not normal");

  if (n == 1) {
    SimilarityResult res{identity(1), identity(1), nmat, 1.0,
                         oracle::certify(nmat, tol)};
    return res;
  }

  if (n == 2) {
    cplx mu = nmat.trace() / 2.0;
    if (fnorm(nmat - mu * identity(2)) <= tol.cert_tol * (1.0 + nn))
      return Obstruction{Obstruction::Kind::ScalarIn2x2, mu,
                         detail::scalar_relation(nmat, tol)};
    SpectralDecomposition sd = numkernel::normal_eig(nmat, tol);
    if (sd.count() != 2)
      throw CertificationFailed(
          "similar_to_irreducible_normal: nonscalar 2x2 did not split into two "
          "eigenvalues");
    cplx mu1 = sd.values[0], mu2 = sd.values[1];
    CMatrix uev(2, 2);
    uev.col(0) = orthonormal_range_basis(sd.projections[0].matrix, 1);
    uev.col(1) = orthonormal_range_basis(sd.projections[1].matrix, 1);
    CMatrix m = identity(2);
    m(0, 1) = 1.0 / (mu2 - mu1);
    CMatrix x = m * uev.adjoint();
    CMatrix xinv = uev * (2.0 * identity(2) - m);
    SimilarityResult res;
    res.X = x;
    res.Xinv = xinv;
    res.conjugated = x * nmat * xinv;
    res.cond = numkernel::condition_number(x);
    res.certificate = oracle::certify(res.conjugated, tol);
    if (res.certificate.verdict != Verdict::Irreducible)
      throw CertificationFailed("similar_to_irreducible_normal: 2x2 conjugate "
                                "not certified irreducible");
    return res;
  }

  SpectralDecomposition sd = numkernel::normal_eig(nmat, tol);
  for (Index k = 0; k < sd.count(); ++k)
    if (2 * sd.mults[static_cast<size_t>(k)] > n)
      return Obstruction{Obstruction::Kind::EigMultiplicityTooLarge,
                         sd.values[static_cast<size_t>(k)], {}};
  if (auto dep = staralg::dependence_I_T_T2(nmat, tol))
    return Obstruction{Obstruction::Kind::QuadraticDependence, cplx(0), *dep};
  if (sd.count() < 3)
    throw CertificationFailed(
        "similar_to_irreducible_normal: spectrum clusters to fewer than three "
        "values but no certified quadratic dependence");

  Partition3 part = partition3(sd, tol);
  UpperTriangularModel model = irreducible_upper_triangular(part, tol);

  SimilarityResult res;
  res.X = model.X;
  res.Xinv = model.Xinv;
  res.conjugated = model.X * nmat * model.Xinv;
  res.cond = numkernel::condition_number(model.X);
  res.certificate = oracle::certify(res.conjugated, tol);
  if (res.certificate.verdict != Verdict::Irreducible)
    throw CertificationFailed(
        "similar_to_irreducible_normal: conjugated output not certified");
  return res;
}

// ---------------------------------------------------------------------------
// Strong reducibility: detection and witnesses
// ---------------------------------------------------------------------------

/// Sufficient conditions for strong reducibility: (1) some eigenvalue lambda
/// with rank(lambda I - T) < n/2, tested at the clustered eigenvalues of T;
/// (2) {I, T, T^2} linearly dependent. NotDetected decides nothing.
inline Detection strong_reducibility_detect(const CMatrix& t, const Tolerances& tol = {}) {
  require_square_finite(t, "strong_reducibility_detect");
  const Index n = t.rows();
  if (n < 3)
    throw std::invalid_argument("strong_reducibility_detect: requires n >= 3");
  Eigen::ComplexSchur<CMatrix> schur(t, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw Error("strong_reducibility_detect: Schur failed");
  std::vector<cplx> raw(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = schur.matrixT()(i, i);
  Clustering cl = cluster_points(raw, tol.cluster_tol * (1.0 + fnorm(t)));
  for (const cplx& lambda : cl.reps) {
    Index r = numkernel::numeric_rank(lambda * identity(n) - t, tol);
    if (2 * r < n) {
      Detection d;
      d.kind = Detection::Kind::Condition1;
      d.lambda = lambda;
      return d;
    }
  }
  if (auto dep = staralg::dependence_I_T_T2(t, tol)) {
    Detection d;
    d.kind = Detection::Kind::Condition2;
    d.coeffs = *dep;
    return d;
  }
  return Detection{};
}

/// Produces a nontrivial projection commuting with X T X^-1, following the
/// witness constructions of the two detection branches.
inline Projection reducing_projection_witness(const CMatrix& t, const CMatrix& x,
                                              const Detection& det,
                                              const Tolerances& tol = {}) {
  if (!det.detected())
    throw NotApplicableError("reducing_projection_witness: no detection reason");
  require_square_finite(t, "reducing_projection_witness");
  require_same_dim(t, x, "reducing_projection_witness");
  const Index n = t.rows();
  Eigen::PartialPivLU<CMatrix> lu(x);
  CMatrix s = x * t * lu.solve(identity(n));
  double tn = fnorm(t);

  auto fixed_rank1 = [&]() {
    CMatrix m = CMatrix::Zero(n, n);
    m(0, 0) = 1.0;
    return numkernel::projection_unchecked(std::move(m), 1);
  };

  Projection q;
  if (det.kind == Detection::Kind::Condition1) {
    CMatrix shift = s - det.lambda * identity(n);
    if (fnorm(shift) <= tol.cert_tol * (1.0 + tn)) return fixed_rank1();
    q = staralg::proj_join(numkernel::range_projection(shift, tol),
                           numkernel::range_projection(shift.adjoint(), tol), tol);
  } else {
    const auto& c = det.coeffs;
    if (std::abs(c[2]) <= 1e-12) return fixed_rank1();  // degree-1 relation: scalar
    cplx p = c[1] / c[2], qq = c[0] / c[2];
    cplx disc = std::sqrt(p * p - 4.0 * qq);
    cplx l1 = (-p - disc) / 2.0, l2 = (-p + disc) / 2.0;
    if (lex_less(l2, l1)) std::swap(l1, l2);
    Projection p1 = numkernel::range_projection(s - l2 * identity(n), tol);
    if (p1.rank == 0 || p1.rank == n) return fixed_rank1();  // s is scalar
    Projection p2 = numkernel::projection_unchecked(identity(n) - p1.matrix, n - p1.rank);
    CMatrix d = p1.matrix * s * p2.matrix;
    Projection rd = numkernel::range_projection(d, tol);
    Projection rds = numkernel::range_projection(d.adjoint(), tol);
    if (p1.rank - rd.rank > 0) {
      q = numkernel::make_projection(p1.matrix - rd.matrix, tol);
    } else if (p2.rank - rds.rank > 0) {
      q = numkernel::make_projection(p2.matrix - rds.matrix, tol);
    } else {
      auto [vi, h] = numkernel::polar(d, tol);
      CMatrix bp2 = orthonormal_range_basis(p2.matrix, p2.rank);
      CMatrix hc = bp2.adjoint() * h * bp2;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (hc + hc.adjoint()));
      std::vector<cplx> raw(static_cast<size_t>(hc.rows()));
      for (Index i = 0; i < hc.rows(); ++i) raw[static_cast<size_t>(i)] = es.eigenvalues()(i);
      Clustering cl = cluster_points(raw, tol.cluster_tol * (1.0 + fnorm(h)));
      CMatrix q2;
      Index q2rank;
      if (cl.members.size() >= 2) {
        const auto& g = cl.members.front();
        CMatrix cols(hc.rows(), static_cast<Index>(g.size()));
        for (size_t j = 0; j < g.size(); ++j)
          cols.col(static_cast<Index>(j)) = es.eigenvectors().col(g[j]);
        CMatrix full = bp2 * cols;
        q2 = full * full.adjoint();
        q2rank = static_cast<Index>(g.size());
      } else {  // positive part is scalar on the corner; any subprojection works
        CVector col = bp2.col(0);
        q2 = col * col.adjoint();
        q2rank = 1;
      }
      CMatrix qm = vi.matrix * q2 * vi.matrix.adjoint() + q2;
      q = numkernel::make_projection(qm, tol);
      (void)q2rank;
    }
  }
  if (q.rank == 0 || q.rank == n)
    throw Error("reducing_projection_witness: witness degenerated");
  if (fnorm(q.matrix * s - s * q.matrix) > 1e-6 * (1.0 + tn))
    throw Error("reducing_projection_witness: witness does not commute");
  return q;
}

/// Unitary U with R(X T X^-1) = U* R(T) U, built from deterministic
/// orthonormal bases of the two equal-rank ranges and their complements.
inline CMatrix rank_similarity_unitary(const CMatrix& t, const CMatrix& x,
                                       const Tolerances& tol = {}) {
  require_square_finite(t, "rank_similarity_unitary");
  require_same_dim(t, x, "rank_similarity_unitary");
  const Index n = t.rows();
  Eigen::PartialPivLU<CMatrix> lu(x);
  CMatrix s = x * t * lu.solve(identity(n));
  Projection pt = numkernel::range_projection(t, tol);
  Projection ps = numkernel::range_projection(s, tol);
  if (pt.rank != ps.rank)
    throw Error("rank_similarity_unitary: similarity changed the numeric rank");
  CMatrix bp = pt.rank > 0 ? orthonormal_range_basis(pt.matrix, pt.rank) : CMatrix(n, 0);
  CMatrix bq = ps.rank > 0 ? orthonormal_range_basis(ps.matrix, ps.rank) : CMatrix(n, 0);
  CMatrix cp = orthonormal_complement_basis(bp, n);
  CMatrix cq = orthonormal_complement_basis(bq, n);
  return bp * bq.adjoint() + cp * cq.adjoint();
}

// ---------------------------------------------------------------------------
// Dunford (Jordan-Chevalley) split
// ---------------------------------------------------------------------------

namespace detail {

/// Solve A Y - Y B = C for upper-triangular A (m x m) and B (r x r) with
/// disjoint spectra, column by column with triangular backsolves.
inline CMatrix sylvester_triangular(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const Index m = a.rows(), r = b.rows();
  CMatrix y(m, r);
  for (Index j = 0; j < r; ++j) {
    CVector rhs = c.col(j);
    for (Index l = 0; l < j; ++l) rhs += y.col(l) * b(l, j);
    CMatrix shifted = a - b(j, j) * CMatrix::Identity(m, m);
    for (Index i = 0; i < m; ++i)
      if (std::abs(shifted(i, i)) < 1e-300)
        throw SpectrumTooClustered("sylvester_triangular: coincident eigenvalues");
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return y;
}

/// Unitary swap of adjacent diagonal entries of a Schur triangle.
inline void swap_schur_adjacent(CMatrix& r, CMatrix& u, Index i) {
  cplx a = r(i, i), b = r(i, i + 1), d = r(i + 1, i + 1);
  cplx v0 = b, v1 = d - a;
  double nv = std::sqrt(std::norm(v0) + std::norm(v1));
  if (nv == 0.0) return;
  v0 /= nv;
  v1 /= nv;
  CMatrix g(2, 2);
  g << v0, -std::conj(v1), v1, std::conj(v0);
  r.middleCols(i, 2) = (r.middleCols(i, 2) * g).eval();
  r.middleRows(i, 2) = (g.adjoint() * r.middleRows(i, 2)).eval();
  u.middleCols(i, 2) = (u.middleCols(i, 2) * g).eval();
  r(i + 1, i) = 0.0;
}

}  // namespace detail

/// Full Dunford data via Schur form, cluster reordering, and block
/// upper-triangular elimination through Sylvester solves.
inline DunfordFull dunford_full(const CMatrix& t, const Tolerances& tol = {}) {
  require_square_finite(t, "dunford_full");
  const Index n = t.rows();
  Eigen::ComplexSchur<CMatrix> schur(t, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw Error("dunford_full: Schur failed");
  CMatrix r = schur.matrixT();
  CMatrix u = schur.matrixU();

  std::vector<cplx> raw(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = r(i, i);
  Clustering cl = cluster_points(raw, tol.cluster_tol * (1.0 + fnorm(t)));
  for (size_t a = 0; a < cl.reps.size(); ++a)
    for (size_t b = a + 1; b < cl.reps.size(); ++b)
      if (std::abs(cl.reps[a] - cl.reps[b]) <= tol.gap_min)
        throw SpectrumTooClustered(
            "dunford_full: eigenvalue clusters separated by less than gap_min");

  // Reorder the Schur triangle so clusters occupy contiguous blocks, in
  // representative-lex order, by bubbling with unitary adjacent swaps.
  std::vector<Index> cid(static_cast<size_t>(n));
  for (size_t c = 0; c < cl.members.size(); ++c)
    for (Index i : cl.members[c]) cid[static_cast<size_t>(i)] = static_cast<Index>(c);
  std::vector<Index> desired;
  for (size_t c = 0; c < cl.members.size(); ++c)
    desired.insert(desired.end(), cl.members[c].size(), static_cast<Index>(c));
  for (Index target = 0; target < n; ++target) {
    Index p = target;
    while (cid[static_cast<size_t>(p)] != desired[static_cast<size_t>(target)]) ++p;
    for (; p > target; --p) {
      detail::swap_schur_adjacent(r, u, p - 1);
      std::swap(cid[static_cast<size_t>(p - 1)], cid[static_cast<size_t>(p)]);
    }
  }

  std::vector<Index> sizes;
  for (const auto& g : cl.members) sizes.push_back(static_cast<Index>(g.size()));

  CMatrix z = identity(n), zinv = identity(n);
  Index off = 0;
  for (size_t k = 0; k + 1 < sizes.size(); ++k) {
    Index mk = sizes[k], rest = n - off - mk;
    CMatrix a = r.block(off, off, mk, mk);
    CMatrix b = r.block(off + mk, off + mk, rest, rest);
    CMatrix c = r.block(off, off + mk, mk, rest);
    CMatrix y = detail::sylvester_triangular(a, b, -c);
    CMatrix g = identity(n), ginv = identity(n);
    g.block(off, off + mk, mk, rest) = y;
    ginv.block(off, off + mk, mk, rest) = -y;
    r = ginv * r * g;
    r.block(off, off + mk, mk, rest).setZero();
    z = z * g;
    zinv = ginv * zinv;
    off += mk;
  }

  DunfordFull out;
  out.Y = u * z;
  out.Yinv = zinv * u.adjoint();
  out.values = cl.reps;
  out.mults = sizes;
  CVector dvec(n);
  Index pos = 0;
  for (size_t k = 0; k < sizes.size(); ++k)
    for (Index i = 0; i < sizes[k]; ++i) dvec(pos++) = cl.reps[k];
  out.S = out.Y * dvec.asDiagonal() * out.Yinv;
  out.K = t - out.S;
  pos = 0;
  for (size_t k = 0; k < sizes.size(); ++k) {
    CMatrix ek = CMatrix::Zero(n, n);
    for (Index i = 0; i < sizes[k]; ++i) ek(pos + i, pos + i) = 1.0;
    out.idempotents.push_back(out.Y * ek * out.Yinv);
    pos += sizes[k];
  }
  return out;
}

inline DunfordPair jordan_chevalley(const CMatrix& t, const Tolerances& tol = {}) {
  DunfordFull full = dunford_full(t, tol);
  return DunfordPair{std::move(full.S), std::move(full.K)};
}

// ---------------------------------------------------------------------------
// Spectral pipeline
// ---------------------------------------------------------------------------

/// Pipeline for matrices with a certified semisimple/nilpotent split: run the
/// normal decision on the diagonalized semisimple part and transfer the
/// similarity. One-directional for non-normal inputs: if the semisimple part
/// fails a condition, an Obstruction is returned only when the input itself
/// trips a strong-reducibility detector, otherwise Inconclusive.
inline SpectralOutcome similar_to_irreducible_spectral(const CMatrix& t,
                                                       const Tolerances& tol = {}) {
  require_square_finite(t, "similar_to_irreducible_spectral");
  const Index n = t.rows();
  if (n == 1)
    return SimilarityResult{identity(1), identity(1), t, 1.0, oracle::certify(t, tol)};

  DunfordFull full = dunford_full(t, tol);

  auto finish = [&](const CMatrix& x, const CMatrix& xinv) {
    SimilarityResult res;
    res.X = x;
    res.Xinv = xinv;
    res.conjugated = x * t * xinv;
    res.cond = numkernel::condition_number(x);
    res.certificate = oracle::certify(res.conjugated, tol);
    if (res.certificate.verdict != Verdict::Irreducible)
      throw CertificationFailed(
          "similar_to_irreducible_spectral: conjugated output not certified");
    return res;
  };

  if (n == 2) {
    cplx mu = t.trace() / 2.0;
    if (fnorm(t - mu * identity(2)) <= tol.cert_tol * (1.0 + fnorm(t)))
      return Obstruction{Obstruction::Kind::ScalarIn2x2, mu,
                         detail::scalar_relation(t, tol)};
    if (full.values.size() == 2) {
      cplx mu1 = full.values[0], mu2 = full.values[1];
      CMatrix m = identity(2);
      m(0, 1) = 1.0 / (mu2 - mu1);
      CMatrix x = m * full.Yinv;
      CMatrix xinv = full.Y * (2.0 * identity(2) - m);
      return finish(x, xinv);
    }
    // Single eigenvalue cluster with a nonzero nilpotent part: rescale the
    // Schur corner entry to 1.
    CMatrix rtri = full.Yinv * t * full.Y;
    cplx c = rtri(0, 1);
    if (std::abs(c) <= tol.cert_tol * (1.0 + fnorm(t)))
      throw CertificationFailed(
          "similar_to_irreducible_spectral: 2x2 corner too small to conjugate");
    CMatrix d1 = identity(2);
    d1(1, 1) = c;
    CMatrix d1inv = identity(2);
    d1inv(1, 1) = 1.0 / c;
    return finish(d1 * full.Yinv, full.Y * d1inv);
  }

  bool mult_ok = true;
  cplx bad_lambda{};
  for (size_t k = 0; k < full.mults.size(); ++k)
    if (2 * full.mults[k] > n) {
      mult_ok = false;
      bad_lambda = full.values[k];
    }
  bool indep_ok = full.values.size() >= 3;

  if (mult_ok && indep_ok) {
    CVector dvec(n);
    Index pos = 0;
    for (size_t k = 0; k < full.mults.size(); ++k)
      for (Index i = 0; i < full.mults[k]; ++i) dvec(pos++) = full.values[k];
    CMatrix dmat = dvec.asDiagonal();
    NormalOutcome inner = similar_to_irreducible_normal(dmat, tol);
    if (!std::holds_alternative<SimilarityResult>(inner))
      throw CertificationFailed(
          "similar_to_irreducible_spectral: semisimple part unexpectedly obstructed");
    const SimilarityResult& xd = std::get<SimilarityResult>(inner);
    return finish(xd.X * full.Yinv, full.Y * xd.Xinv);
  }

  Detection det = strong_reducibility_detect(t, tol);
  if (det.kind == Detection::Kind::Condition1)
    return Obstruction{Obstruction::Kind::EigMultiplicityTooLarge, det.lambda, {}};
  if (det.kind == Detection::Kind::Condition2)
    return Obstruction{Obstruction::Kind::QuadraticDependence, cplx(0), det.coeffs};
  std::string reason = mult_ok
      ? "semisimple part has fewer than three distinct eigenvalues"
      : "semisimple part has an eigenvalue of multiplicity greater than n/2";
  (void)bad_lambda;
  return Inconclusive{reason};
}

// ---------------------------------------------------------------------------
// Abelian-commutant pipeline
// ---------------------------------------------------------------------------

/// If the commutant of {T} (no adjoints) is abelian, T is similar to an
/// irreducible matrix; returns the explicit certified similarity, or nullopt
/// when the commutant is not abelian.
inline std::optional<SimilarityResult> abelian_commutant_pipeline(const CMatrix& t,
                                                                  const Tolerances& tol = {}) {
  require_square_finite(t, "abelian_commutant_pipeline");
  const Index n = t.rows();
  staralg::CommutantBasis ct = staralg::commutant(n, {t}, /*include_adjoints=*/false, tol);
  if (!staralg::is_abelian(ct, tol)) return std::nullopt;

  IrreducibilityCertificate cert0 = oracle::certify(t, tol);
  if (cert0.verdict == Verdict::Irreducible)
    return SimilarityResult{identity(n), identity(n), t, 1.0, cert0};

  staralg::CommutantBasis nstar =
      staralg::commutant(n, {t}, /*include_adjoints=*/true, tol);
  std::vector<Projection> minimal = staralg::minimal_projections(n, nstar, tol);
  Index rank_sum = 0;
  for (const auto& q : minimal) {
    rank_sum += q.rank;
    if (fnorm(q.matrix * t - t * q.matrix) > 1e3 * tol.cert_tol * (1.0 + fnorm(t)))
      throw CertificationFailed(
          "abelian_commutant_pipeline: minimal projection fails to commute");
  }
  if (rank_sum != n)
    throw CertificationFailed("abelian_commutant_pipeline: minimal projections "
                              "do not partition the identity");

  // Branch 1: a minimal projection at least as large as its complement.
  for (const auto& q : minimal) {
    if (2 * q.rank < n) continue;
    const Index rr = q.rank;
    double lambda = fnorm(t) + 1.0;
    CMatrix bp = orthonormal_range_basis(q.matrix, rr);
    CMatrix bc = orthonormal_complement_basis(bp, n);  // basis of ran(I - P)
    CMatrix v = bc * bp.leftCols(n - rr).adjoint();    // VV* = I-P, V*V <= P
    CMatrix corner = bp.adjoint() * (t + lambda * identity(n)) * bp;
    CMatrix corner_inv = Eigen::PartialPivLU<CMatrix>(corner).solve(
        CMatrix(CMatrix::Identity(rr, rr)));
    CMatrix bfull = bp * corner_inv * bp.adjoint();
    CMatrix x0 = identity(n) + v * bfull;
    CMatrix x0inv = identity(n) - v * bfull;

    CMatrix tprime = t * q.matrix + v + lambda * q.matrix;
    CMatrix core = t * q.matrix + lambda * q.matrix;
    if (fnorm(x0 * core * x0inv - tprime) > 1e-8 * (1.0 + fnorm(tprime)))
      throw Error("abelian_commutant_pipeline: block similarity residual too large");
    IrreducibilityCertificate cprime = oracle::certify(tprime, tol);
    if (cprime.verdict != Verdict::Irreducible)
      throw CertificationFailed(
          "abelian_commutant_pipeline: TP + V + lambda P not certified irreducible");

    SimilarityResult res;
    res.X = x0;
    res.Xinv = x0inv;
    res.conjugated = x0 * t * x0inv;
    res.cond = numkernel::condition_number(x0);
    res.certificate = oracle::certify(res.conjugated, tol);
    if (res.certificate.verdict != Verdict::Irreducible)
      throw CertificationFailed(
          "abelian_commutant_pipeline: conjugated output not certified");
    return res;
  }

  // Branch 2: every minimal projection is strictly small; partition and use
  // the upper-triangular model.
  Partition3 part = partition3_from_projections(minimal, tol);
  UpperTriangularModel model = irreducible_upper_triangular(part, tol);
  SimilarityResult res;
  res.X = model.X;
  res.Xinv = model.Xinv;
  res.conjugated = model.X * t * model.Xinv;
  res.cond = numkernel::condition_number(model.X);
  res.certificate = oracle::certify(res.conjugated, tol);
  if (res.certificate.verdict != Verdict::Irreducible)
    throw CertificationFailed(
        "abelian_commutant_pipeline: conjugated output not certified");
  return res;
}

}  // namespace irrforge::similarity
