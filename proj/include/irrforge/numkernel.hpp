#pragma once

// Deterministic dense complex linear-algebra kernels with an explicit,
// centralized tolerance policy. Everything downstream builds on these.

#include "irrforge/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <utility>

namespace irrforge::numkernel {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Hermitian idempotent with cached rank.
struct Projection {
  CMatrix matrix;
  Index rank = 0;

  Index dim() const { return matrix.rows(); }
};

/// Partial isometry V together with its initial (V*V) and final (VV*)
/// projections; initial and final always have equal rank.
struct PartialIsometry {
  CMatrix matrix;
  Projection initial;
  Projection final;
};

/// Distinct eigenvalues of a normal matrix with multiplicities and
/// orthogonal eigenprojections, sorted lexicographically by (re, im).
struct SpectralDecomposition {
  std::vector<cplx> values;
  std::vector<Index> mults;
  std::vector<Projection> projections;

  Index dim() const { return projections.empty() ? 0 : projections.front().dim(); }
  Index count() const { return static_cast<Index>(values.size()); }
};

// ---------------------------------------------------------------------------
// Singular values and rank
// ---------------------------------------------------------------------------

inline Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd(0);
  if (m.rows() * m.cols() <= 64 * 64)
    return Eigen::JacobiSVD<CMatrix>(m).singularValues();
  return Eigen::BDCSVD<CMatrix>(m).singularValues();
}

/// Count of singular values > rank_tol * sigma_max; 0 for the zero matrix.
inline Index numeric_rank(const CMatrix& m, const Tolerances& tol = {}) {
  Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax <= 0.0) return 0;
  double cut = tol.rank_tol * smax;
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

/// Frobenius condition-number estimate sigma_max/sigma_min (inf if singular).
inline double condition_number(const CMatrix& m) {
  Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0) return 1.0;
  double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : kInf;
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

/// Validates the projection invariants (Hermitian, idempotent, spectrum near
/// {0,1}) and caches the rank = number of eigenvalues in [3/4, 5/4].
inline Projection make_projection(const CMatrix& p, const Tolerances& tol = {}) {
  require_square_finite(p, "make_projection");
  double scale = 1.0 + fnorm(p);
  if (fnorm(p - p.adjoint()) > tol.cert_tol * scale)
    throw NotHermitian("make_projection: matrix is not Hermitian");
  if (fnorm(p * p - p) > tol.cert_tol * scale)
    throw Error("make_projection: matrix is not idempotent");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()),
                                            Eigen::EigenvaluesOnly);
  Index rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i);
    if (ev >= 0.75 && ev <= 1.25) ++rank;
    if (std::min(std::abs(ev), std::abs(ev - 1.0)) > 0.25)
      throw Error("make_projection: eigenvalue away from {0,1}");
  }
  return Projection{p, rank};
}

/// For matrices that are projections by construction (sums of q q* over
/// orthonormal columns); skips the eigenvalue scan.
inline Projection projection_unchecked(CMatrix p, Index rank) {
  return Projection{std::move(p), rank};
}

inline Projection zero_projection(Index n) { return Projection{CMatrix::Zero(n, n), 0}; }
inline Projection identity_projection(Index n) { return Projection{identity(n), n}; }

/// Orthogonal projection onto the numerical column space of T.
inline Projection range_projection(const CMatrix& t, const Tolerances& tol = {}) {
  require_square_finite(t, "range_projection");
  Index r = numeric_rank(t, tol);
  if (r == 0) return zero_projection(t.rows());
  CMatrix b = orthonormal_range_basis(t, r);
  return projection_unchecked(b * b.adjoint(), r);
}

// ---------------------------------------------------------------------------
// Eigenstructure of Hermitian and normal matrices
// ---------------------------------------------------------------------------

namespace detail {

/// Shared clustering postlude: groups raw eigenvalues, rejects ambiguous
/// cluster separations, builds eigenprojections from unitary columns.
inline SpectralDecomposition build_decomposition(const std::vector<cplx>& raw,
                                                 const CMatrix& vectors,
                                                 double radius,
                                                 const Tolerances& tol) {
  Clustering cl = cluster_points(raw, radius);
  for (size_t a = 0; a < cl.reps.size(); ++a)
    for (size_t b = a + 1; b < cl.reps.size(); ++b)
      if (std::abs(cl.reps[a] - cl.reps[b]) < tol.gap_min)
        throw ClusterAmbiguous(
            "eigenvalue cluster representatives closer than gap_min");
  SpectralDecomposition out;
  for (size_t k = 0; k < cl.members.size(); ++k) {
    const auto& g = cl.members[k];
    CMatrix cols(vectors.rows(), static_cast<Index>(g.size()));
    for (size_t j = 0; j < g.size(); ++j) cols.col(static_cast<Index>(j)) = vectors.col(g[j]);
    out.values.push_back(cl.reps[k]);
    out.mults.push_back(static_cast<Index>(g.size()));
    out.projections.push_back(
        projection_unchecked(cols * cols.adjoint(), static_cast<Index>(g.size())));
  }
  return out;
}

}  // namespace detail

/// Spectral decomposition of a Hermitian matrix: eigenvalues single-linkage
/// clustered with radius cluster_tol*(1+|H|), representatives = cluster
/// means, sorted ascending.
inline SpectralDecomposition hermitian_eig(const CMatrix& h, const Tolerances& tol = {}) {
  require_square_finite(h, "hermitian_eig");
  double scale = fnorm(h);
  if (fnorm(h - h.adjoint()) > tol.cert_tol * std::max(scale, 1e-300))
    throw NotHermitian("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed");
  std::vector<cplx> raw(static_cast<size_t>(h.rows()));
  for (Index i = 0; i < h.rows(); ++i) raw[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return detail::build_decomposition(raw, es.eigenvectors(),
                                     tol.cluster_tol * (1.0 + scale), tol);
}

/// Spectral decomposition of a normal matrix via complex Schur form (which is
/// diagonal for normal inputs); same clustering policy as hermitian_eig.
inline SpectralDecomposition normal_eig(const CMatrix& n, const Tolerances& tol = {}) {
  require_square_finite(n, "normal_eig");
  double s2 = fnorm(n) * fnorm(n);
  if (fnorm(n.adjoint() * n - n * n.adjoint()) > tol.cert_tol * std::max(s2, 1e-300))
    throw NotNormal("normal_eig: input is not normal");
  Eigen::ComplexSchur<CMatrix> schur(n, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw Error("normal_eig: Schur failed");
  std::vector<cplx> raw(static_cast<size_t>(n.rows()));
  for (Index i = 0; i < n.rows(); ++i) raw[static_cast<size_t>(i)] = schur.matrixT()(i, i);
  return detail::build_decomposition(raw, schur.matrixU(),
                                     tol.cluster_tol * (1.0 + fnorm(n)), tol);
}

/// Sum lambda_k P_k; the reconstruction counterpart of the decompositions.
inline CMatrix reassemble(const SpectralDecomposition& sd) {
  CMatrix out = CMatrix::Zero(sd.dim(), sd.dim());
  for (Index k = 0; k < sd.count(); ++k)
    out += sd.values[static_cast<size_t>(k)] * sd.projections[static_cast<size_t>(k)].matrix;
  return out;
}

// ---------------------------------------------------------------------------
// Polar decomposition and PSD square root
// ---------------------------------------------------------------------------

/// T = V H with H = (T*T)^{1/2} PSD and V a partial isometry whose initial
/// projection is R(T*) and final projection is R(T).
inline std::pair<PartialIsometry, CMatrix> polar(const CMatrix& t, const Tolerances& tol = {}) {
  require_square_finite(t, "polar");
  const Index n = t.rows();
  Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank_tol * smax && smax > 0.0) ++r;
  CMatrix u = svd.matrixU().leftCols(r);
  CMatrix v = svd.matrixV().leftCols(r);
  CMatrix w = u * v.adjoint();
  CMatrix h = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
  PartialIsometry pi{w, projection_unchecked(v * v.adjoint(), r),
                     projection_unchecked(u * u.adjoint(), r)};
  (void)n;
  return {std::move(pi), std::move(h)};
}

/// PSD square root; rejects inputs with an eigenvalue below
/// -cert_tol*(1+|H|), clamps roundoff negatives to zero.
inline CMatrix sqrt_psd(const CMatrix& h, const Tolerances& tol = {}) {
  require_square_finite(h, "sqrt_psd");
  double scale = 1.0 + fnorm(h);
  if (fnorm(h - h.adjoint()) > tol.cert_tol * scale)
    throw NotHermitian("sqrt_psd: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw Error("sqrt_psd: eigensolver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol.cert_tol * scale)
      throw NotPSD("sqrt_psd: negative eigenvalue beyond tolerance");
    ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Commutation superoperator
// ---------------------------------------------------------------------------

/// Stacked blocks, one per member X of S, each representing A -> AX - XA
/// under column-major vectorization: vec(AX - XA) = (X^T (x) I - I (x) X) vec A.
/// The null space of the stack is the commutant of S as a set.
inline CMatrix commutation_superoperator(const std::vector<CMatrix>& s) {
  if (s.empty()) throw DimensionMismatch("commutation_superoperator: empty family");
  const Index n = s.front().rows();
  for (const auto& x : s) {
    require_square_finite(x, "commutation_superoperator");
    if (x.rows() != n)
      throw DimensionMismatch("commutation_superoperator: members differ in dimension");
  }
  const Index n2 = n * n;
  CMatrix eye = identity(n);
  CMatrix out(static_cast<Index>(s.size()) * n2, n2);
  for (size_t k = 0; k < s.size(); ++k)
    out.middleRows(static_cast<Index>(k) * n2, n2) =
        kron(s[k].transpose(), eye) - kron(eye, s[k]);
  return out;
}

}  // namespace irrforge::numkernel
