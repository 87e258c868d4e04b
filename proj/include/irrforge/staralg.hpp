#pragma once

// The *-algebra calculus: commutants and their certified dimensions,
// irreducibility certificates, Murray-von Neumann rank comparison, the
// projection lattice, matrix units, and quadratic-dependence detection.

#include "irrforge/numkernel.hpp"

#include <array>
#include <optional>

namespace irrforge::staralg {

using numkernel::Projection;
using numkernel::SpectralDecomposition;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Trace-orthonormal basis of a commutant, with the singular-value data that
/// certifies its dimension. `margin` is the smallest kept singular value of
/// the commutation superoperator relative to the largest (the scale-free gap
/// compared against gap_min); `margin_abs` is the unnormalized value;
/// `gap_ratio` is smallest-kept / largest-dropped at the dimension cut.
struct CommutantBasis {
  Index dim = 0;
  std::vector<CMatrix> basis;
  double margin = kInf;
  double margin_abs = kInf;
  double gap_ratio = kInf;
};

enum class Verdict { Irreducible, Reducible };

/// Outcome of the irreducibility decision. word_dim = 0 means the
/// word-algebra oracle was not run; when it was, commutant_dim == 1 holds
/// exactly when word_dim == n^2.
struct IrreducibilityCertificate {
  Index commutant_dim = 0;
  double margin = 0.0;
  Index word_dim = 0;
  Verdict verdict = Verdict::Reducible;
};

/// A 2x2 system of matrix units between two orthogonal equal-rank
/// projections: E12 E21 = E11, E21 E12 = E22, E12* = E21.
struct MatrixUnits2 {
  Projection E11, E22;
  CMatrix E12, E21;
};

enum class MvOrder { StrictlyWeaker, Equivalent, StrictlyStronger };

// ---------------------------------------------------------------------------
// Commutants
// ---------------------------------------------------------------------------

/// Orthonormal null-space basis of the commutation superoperator of
/// S (union S* when include_adjoints). The dimension decision is certified:
/// the relative margin at the cut must be >= gap_min and the ratio between
/// the first kept and last dropped singular value must be >= 10, otherwise
/// MarginTooSmall is thrown.
inline CommutantBasis commutant(Index n, const std::vector<CMatrix>& s,
                                bool include_adjoints, const Tolerances& tol = {}) {
  if (n < 1) throw std::invalid_argument("commutant: dimension must be >= 1");
  CommutantBasis out;
  const Index n2 = n * n;
  if (s.empty()) {
    out.dim = n2;
    out.basis.reserve(static_cast<size_t>(n2));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        CMatrix e = CMatrix::Zero(n, n);
        e(i, j) = 1.0;
        out.basis.push_back(std::move(e));
      }
    return out;
  }
  std::vector<CMatrix> fam = s;
  if (include_adjoints)
    for (const auto& x : s) fam.push_back(x.adjoint());
  CMatrix super = numkernel::commutation_superoperator(fam);
  Eigen::BDCSVD<CMatrix> svd(super, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index null_count;
  if (smax <= 0.0) {
    null_count = n2;
  } else {
    double cut = tol.rank_tol * smax;
    Index keep = 0;
    while (keep < sv.size() && sv(keep) > cut) ++keep;
    null_count = n2 - keep;
    if (keep > 0) {
      out.margin_abs = sv(keep - 1);
      out.margin = sv(keep - 1) / smax;
      out.gap_ratio = (keep < sv.size() && sv(keep) > 0.0) ? sv(keep - 1) / sv(keep) : kInf;
      if (out.margin < tol.gap_min || out.gap_ratio < 10.0)
        throw MarginTooSmall("commutant: singular-value gap at the dimension cut "
                             "too small; dimension decision unreliable");
    }
  }
  out.dim = null_count;
  out.basis.reserve(static_cast<size_t>(null_count));
  for (Index k = n2 - null_count; k < n2; ++k)
    out.basis.push_back(unvec(svd.matrixV().col(k), n));
  return out;
}

/// Relative commutant of {T} union {T*}; dim 1 certifies irreducibility.
/// For n >= 2 a scalar multiple of I is Reducible (commutant dim n^2).
inline IrreducibilityCertificate is_irreducible(const CMatrix& t, const Tolerances& tol = {}) {
  require_square_finite(t, "is_irreducible");
  CommutantBasis cb = commutant(t.rows(), {t}, /*include_adjoints=*/true, tol);
  IrreducibilityCertificate cert;
  cert.commutant_dim = cb.dim;
  cert.margin = cb.margin;
  cert.verdict = cb.dim == 1 ? Verdict::Irreducible : Verdict::Reducible;
  return cert;
}

/// True iff the self-adjoint family generated by S is all of M_n
/// (trivial relative commutant, by the double-commutant theorem).
inline std::pair<bool, CommutantBasis> generates(Index n, const std::vector<CMatrix>& s,
                                                 const Tolerances& tol = {}) {
  CommutantBasis cb = commutant(n, s, /*include_adjoints=*/true, tol);
  return {cb.dim == 1, std::move(cb)};
}

// ---------------------------------------------------------------------------
// Projection lattice and comparison
// ---------------------------------------------------------------------------

inline Projection proj_join(const Projection& p, const Projection& q,
                            const Tolerances& tol = {}) {
  require_same_dim(p.matrix, q.matrix, "proj_join");
  return numkernel::range_projection(p.matrix + q.matrix, tol);
}

inline Projection proj_meet(const Projection& p, const Projection& q,
                            const Tolerances& tol = {}) {
  require_same_dim(p.matrix, q.matrix, "proj_meet");
  const Index n = p.matrix.rows();
  Projection cp = numkernel::projection_unchecked(identity(n) - p.matrix, n - p.rank);
  Projection cq = numkernel::projection_unchecked(identity(n) - q.matrix, n - q.rank);
  Projection j = proj_join(cp, cq, tol);
  return numkernel::projection_unchecked(identity(n) - j.matrix, n - j.rank);
}

/// Murray-von Neumann comparison; in M_n this is exactly rank comparison.
inline MvOrder mv_compare(const Projection& p, const Projection& q) {
  require_same_dim(p.matrix, q.matrix, "mv_compare");
  if (p.rank < q.rank) return MvOrder::StrictlyWeaker;
  if (p.rank > q.rank) return MvOrder::StrictlyStronger;
  return MvOrder::Equivalent;
}

/// Identity of the smallest weak-operator closed self-adjoint algebra
/// containing S (possibly without the ambient identity): the join of the
/// range projections of all members and their adjoints.
inline Projection w0_identity(Index n, const std::vector<CMatrix>& s,
                              const Tolerances& tol = {}) {
  Projection acc = numkernel::zero_projection(n);
  for (const auto& t : s) {
    require_square_finite(t, "w0_identity");
    if (t.rows() != n) throw DimensionMismatch("w0_identity: dimension mismatch");
    acc = proj_join(acc, numkernel::range_projection(t, tol), tol);
    acc = proj_join(acc, numkernel::range_projection(t.adjoint(), tol), tol);
  }
  return acc;
}

/// Matrix units between two orthogonal projections of equal rank, built from
/// deterministic orthonormal bases of their ranges.
inline MatrixUnits2 matrix_units(const Projection& p, const Projection& q,
                                 const Tolerances& tol = {}) {
  require_same_dim(p.matrix, q.matrix, "matrix_units");
  if (p.rank != q.rank || p.rank < 1)
    throw RankMismatch("matrix_units: projections must have equal rank >= 1");
  if (fnorm(p.matrix * q.matrix) > tol.cert_tol)
    throw NotOrthogonal("matrix_units: projections must have orthogonal ranges");
  CMatrix bp = orthonormal_range_basis(p.matrix, p.rank);
  CMatrix bq = orthonormal_range_basis(q.matrix, q.rank);
  CMatrix e12 = bp * bq.adjoint();
  return MatrixUnits2{p, q, e12, e12.adjoint()};
}

// ---------------------------------------------------------------------------
// Quadratic dependence and abelianness
// ---------------------------------------------------------------------------

/// Nontrivial (a,b,c) with a I + b T + c T^2 = 0 within
/// cert_tol*(1+|T|^2), if one exists. Coefficients are unit-norm with the
/// first nonzero entry real positive. Degenerate (multi-dimensional) kernels
/// resolve to the lowest-degree relation.
inline std::optional<std::array<cplx, 3>> dependence_I_T_T2(const CMatrix& t,
                                                            const Tolerances& tol = {}) {
  require_square_finite(t, "dependence_I_T_T2");
  const Index n = t.rows();
  CMatrix t2 = t * t;
  double scale = 1.0 + fnorm(t) * fnorm(t);

  auto phase_fix = [](std::array<cplx, 3> v) {
    double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    for (auto& c : v) c /= norm;
    for (const auto& c : v)
      if (std::abs(c) > 1e-12) {
        cplx ph = std::conj(c) / std::abs(c);
        for (auto& d : v) d *= ph;
        // clean up the pivot's imaginary dust so it is exactly real
        break;
      }
    return v;
  };

  // Degree-1 relation first: a I + b T = 0 (covers scalars and T = 0).
  {
    CMatrix w(n * n, 2);
    w.col(0) = vec(identity(n));
    w.col(1) = vec(t);
    Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullV);
    if (svd.singularValues()(1) <= tol.cert_tol * scale) {
      CVector v = svd.matrixV().col(1);
      auto out = phase_fix({v(0), v(1), cplx(0)});
      return out;
    }
  }

  CMatrix w(n * n, 3);
  w.col(0) = vec(identity(n));
  w.col(1) = vec(t);
  w.col(2) = vec(t2);
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullV);
  if (svd.singularValues()(2) > tol.cert_tol * scale) return std::nullopt;
  CVector v = svd.matrixV().col(2);
  return phase_fix({v(0), v(1), v(2)});
}

/// True iff all pairwise commutators of the basis elements are within
/// cert_tol. Basis elements are trace-orthonormal, so the bound is absolute.
inline bool is_abelian(const CommutantBasis& b, const Tolerances& tol = {}) {
  for (size_t i = 0; i < b.basis.size(); ++i)
    for (size_t j = i + 1; j < b.basis.size(); ++j)
      if (fnorm(b.basis[i] * b.basis[j] - b.basis[j] * b.basis[i]) > tol.cert_tol)
        return false;
  return true;
}

// ---------------------------------------------------------------------------
// Minimal projections of an abelian self-adjoint commutant
// ---------------------------------------------------------------------------

/// Joint eigenspace refinement: decomposes C^n into the common eigenspaces of
/// the (abelian, *-closed) algebra spanned by `b`, returning its minimal
/// projections in a deterministic order.
inline std::vector<Projection> minimal_projections(Index n, const CommutantBasis& b,
                                                   const Tolerances& tol = {}) {
  // Invariant: `blocks` holds orthonormal bases of mutually orthogonal
  // subspaces jointly invariant for all elements processed so far.
  std::vector<CMatrix> blocks{identity(n)};
  auto refine_by = [&](const CMatrix& h) {
    double scale = fnorm(h);
    std::vector<CMatrix> next;
    for (const auto& blk : blocks) {
      if (blk.cols() == 1) {
        next.push_back(blk);
        continue;
      }
      CMatrix comp = blk.adjoint() * h * blk;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (comp + comp.adjoint()));
      std::vector<cplx> raw(static_cast<size_t>(comp.rows()));
      for (Index i = 0; i < comp.rows(); ++i) raw[static_cast<size_t>(i)] = es.eigenvalues()(i);
      Clustering cl = cluster_points(raw, tol.cluster_tol * (1.0 + scale));
      for (const auto& g : cl.members) {
        CMatrix cols(comp.rows(), static_cast<Index>(g.size()));
        for (size_t j = 0; j < g.size(); ++j)
          cols.col(static_cast<Index>(j)) = es.eigenvectors().col(g[j]);
        next.push_back(blk * cols);
      }
    }
    blocks = std::move(next);
  };
  for (const auto& m : b.basis) {
    refine_by(0.5 * (m + m.adjoint()));
    refine_by(cplx(0, -0.5) * (m - m.adjoint()));
  }
  std::vector<Projection> out;
  out.reserve(blocks.size());
  for (const auto& blk : blocks)
    out.push_back(numkernel::projection_unchecked(blk * blk.adjoint(), blk.cols()));
  return out;
}

}  // namespace irrforge::staralg
