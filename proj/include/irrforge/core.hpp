#pragma once

// Shared core for the irrforge library: matrix aliases, the centralized
// tolerance policy, the error taxonomy, and the small deterministic helpers
// (clustering, pivoted orthonormal bases, vectorization) every module builds
// on. All residual thresholds in this project are Frobenius-norm based.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace irrforge {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Centralized tolerance policy.
///
/// rank_tol and cluster_tol are relative factors (scaled by the magnitude of
/// the quantity they gate), cert_tol bounds residuals of algebraic
/// identities, gap_min is the minimum admissible spectral or singular-value
/// gap for a decision to count as certified. Defaults keep two orders of
/// magnitude between decision thresholds and double-precision noise.
struct Tolerances {
  double rank_tol = 1e-10;    // singular values below rank_tol*sigma_max are null
  double cluster_tol = 1e-8;  // eigenvalue grouping radius factor, scaled by (1+norm)
  double cert_tol = 1e-9;     // residual bound for algebraic identities
  double gap_min = 1e-6;      // minimum admissible spectral gap

  static Tolerances defaults() { return {}; }

  /// Tight preset selected by IRRFORGE_TOL_PROFILE=strict.
  static Tolerances strict() { return {1e-12, 1e-10, 1e-11, 1e-8}; }

  void validate() const {
    if (rank_tol < 0 || cluster_tol < 0 || cert_tol < 0 || gap_min < 0)
      throw std::invalid_argument("Tolerances: all fields must be >= 0");
    if (rank_tol >= 1 || cert_tol >= 1)
      throw std::invalid_argument("Tolerances: rank_tol and cert_tol must be < 1");
  }
};

// ---------------------------------------------------------------------------
// Error taxonomy. Each decision procedure failure mode gets its own type so
// callers (and the CLI exit-code mapper) can dispatch on it.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numkernel
struct NotHermitian : Error { using Error::Error; };
struct ClusterAmbiguous : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// staralg
struct MarginTooSmall : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };

// generators
struct CertificationFailed : Error { using Error::Error; };
struct InvalidRanks : Error { using Error::Error; };
struct CornerGenerationFailed : Error { using Error::Error; };
struct PartitionInvalid : Error { using Error::Error; };
struct PNotInMasa : Error { using Error::Error; };
struct RankCondition : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };
struct ConstructionInfeasible : Error { using Error::Error; };
struct ScalarInput : Error { using Error::Error; };

/// Violation of one of the three necessary conditions for the
/// conjugation-generator construction; names which one failed.
struct NecessityViolated : Error {
  enum class Which { TooFewParts, PartExceedsP0, P0ExceedsComplement };
  Which which;
  NecessityViolated(Which w, const std::string& msg) : Error(msg), which(w) {}
};

// similarity
struct HypothesisViolated : Error { using Error::Error; };
struct ShapeInfeasible : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct SpectrumTooClustered : Error { using Error::Error; };
struct NotApplicableError : Error { using Error::Error; };

// oracle
struct NotStabilized : Error { using Error::Error; };
struct OracleDisagreement : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Basic helpers
// ---------------------------------------------------------------------------

inline double fnorm(const CMatrix& m) { return m.norm(); }

inline CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

inline bool all_finite(const CMatrix& m) { return m.allFinite(); }

inline void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(what) + ": matrix must be square");
  if (!all_finite(m))
    throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
}

inline void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

/// Column-major vectorization, fixed project-wide.
inline CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Index n) {
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Lexicographic (real, imag) order used wherever eigenvalues are sorted.
inline bool lex_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// ---------------------------------------------------------------------------
// Single-linkage clustering of points in the complex plane.
// Order-independent: clusters are the connected components of the
// "distance <= radius" graph; representatives are arithmetic means; clusters
// are emitted sorted lexicographically by representative.
// ---------------------------------------------------------------------------

struct Clustering {
  std::vector<std::vector<Index>> members;
  std::vector<cplx> reps;
};

inline Clustering cluster_points(const std::vector<cplx>& pts, double radius) {
  const Index n = static_cast<Index>(pts.size());
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[i] != i) { parent[i] = parent[parent[i]]; i = parent[i]; }
    return i;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(pts[i] - pts[j]) <= radius) {
        Index ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }

  std::vector<std::vector<Index>> groups;
  std::vector<Index> root_to_group(n, -1);
  for (Index i = 0; i < n; ++i) {
    Index r = find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[root_to_group[r]].push_back(i);
  }

  Clustering out;
  out.members = std::move(groups);
  out.reps.reserve(out.members.size());
  for (const auto& g : out.members) {
    cplx s = 0;
    for (Index i : g) s += pts[i];
    out.reps.push_back(s / static_cast<double>(g.size()));
  }
  std::vector<Index> order(out.members.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return lex_less(out.reps[a], out.reps[b]); });
  Clustering sorted;
  for (Index k : order) {
    sorted.members.push_back(out.members[k]);
    sorted.reps.push_back(out.reps[k]);
  }
  return sorted;
}

// ---------------------------------------------------------------------------
// Deterministic orthonormal bases.
// Pivoted modified Gram-Schmidt over the columns: pivot = largest remaining
// column norm, ties broken by lowest index; one reorthogonalization pass per
// accepted vector. Reproducible bit-for-bit for identical inputs.
// ---------------------------------------------------------------------------

inline CMatrix orthonormal_range_basis(const CMatrix& m, Index rank) {
  const Index n = m.rows();
  CMatrix work = m;
  CMatrix basis(n, rank);
  std::vector<bool> used(static_cast<size_t>(work.cols()), false);
  for (Index k = 0; k < rank; ++k) {
    Index pivot = -1;
    double best = -1.0;
    for (Index j = 0; j < work.cols(); ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      double nj = work.col(j).squaredNorm();
      if (nj > best + 0.0) {  // strict: ties keep the lowest index
        best = nj;
        pivot = j;
      }
    }
    if (pivot < 0 || best <= 0.0)
      throw Error("orthonormal_range_basis: rank exceeds numerical column space");
    used[static_cast<size_t>(pivot)] = true;
    CVector q = work.col(pivot);
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < k; ++i) q -= basis.col(i).dot(q) * basis.col(i);
    double qn = q.norm();
    if (qn <= 0.0)
      throw Error("orthonormal_range_basis: column collapsed during orthogonalization");
    basis.col(k) = q / qn;
    for (Index j = 0; j < work.cols(); ++j)
      if (!used[static_cast<size_t>(j)])
        work.col(j) -= basis.col(k).dot(work.col(j)) * basis.col(k);
  }
  return basis;
}

/// Orthonormal basis of the orthocomplement of the span of `basis` in C^n.
inline CMatrix orthonormal_complement_basis(const CMatrix& basis, Index n) {
  const Index r = basis.cols();
  if (r >= n) return CMatrix(n, 0);
  CMatrix proj = identity(n);
  if (r > 0) proj -= basis * basis.adjoint();
  return orthonormal_range_basis(proj, n - r);
}

}  // namespace irrforge
