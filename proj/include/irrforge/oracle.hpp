#pragma once

// Independent brute-force verification oracles and seeded instance
// generators. The word-algebra oracle shares no code path with the
// commutant-nullspace route it cross-checks.

#include "irrforge/staralg.hpp"

#include <cmath>
#include <random>

namespace irrforge::oracle {

using staralg::CommutantBasis;
using staralg::IrreducibilityCertificate;
using staralg::Verdict;

struct Seed {
  std::uint64_t value = 0;
};

/// Dimension of the span of all words of length <= L in S union S* union {I},
/// per length, until stabilization.
struct WordAlgebraReport {
  std::vector<Index> dims;
  bool stabilized = false;
  Index final_dim = 0;
};

// ---------------------------------------------------------------------------
// Portable seeded randomness.
//
// Generator: std::mt19937_64 seeded with the raw 64-bit value. Uniform
// doubles are (x >> 11) * 2^-53 in [0,1). Gaussians are Box-Muller:
// z = sqrt(-2 ln(1-u1)) * cos(2 pi u2), one fresh pair of uniforms per call.
// Complex Gaussians are (g1 + i g2)/sqrt(2). Every step is pinned so a port
// in another language reproduces the stream bit-for-bit.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(Seed seed) : eng_(seed.value) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return eng_(); }

  double gauss() {
    double u1 = uniform01(), u2 = uniform01();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
  }

  cplx cgauss() {
    double a = gauss(), b = gauss();
    return cplx(a, b) / std::sqrt(2.0);
  }

 private:
  std::mt19937_64 eng_;
};

/// n x n matrix of iid standard complex Gaussians (Ginibre ensemble),
/// filled column-major.
inline CMatrix ginibre(Index n, Rng& rng) {
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.cgauss();
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal's
/// phases folded into Q.
inline CMatrix haar_unitary(Index n, Rng& rng) {
  CMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

/// U diag(values per mults) U* with Haar U; exact prescribed spectrum.
inline CMatrix random_normal(const std::vector<cplx>& values,
                             const std::vector<Index>& mults, Seed seed) {
  if (values.size() != mults.size() || values.empty())
    throw std::invalid_argument("random_normal: values/mults size mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw std::invalid_argument("random_normal: values must be distinct");
  Index n = 0;
  for (Index m : mults) {
    if (m < 1) throw std::invalid_argument("random_normal: multiplicities must be >= 1");
    n += m;
  }
  CVector d(n);
  Index pos = 0;
  for (size_t k = 0; k < values.size(); ++k)
    for (Index i = 0; i < mults[k]; ++i) d(pos++) = values[k];
  Rng rng(seed);
  CMatrix u = haar_unitary(n, rng);
  return u * d.asDiagonal() * u.adjoint();
}

/// Seeded invertible matrix with condition number <= cond_max, via
/// U Sigma V* with log-uniform singular values in [1/sqrt(c), sqrt(c)].
inline CMatrix random_invertible(Index n, double cond_max, Seed seed) {
  if (n < 1) throw std::invalid_argument("random_invertible: n must be >= 1");
  if (cond_max < 1.0) throw std::invalid_argument("random_invertible: cond_max must be >= 1");
  Rng rng(seed);
  CMatrix u = haar_unitary(n, rng);
  CMatrix v = haar_unitary(n, rng);
  Eigen::VectorXd sigma(n);
  double half = 0.5 * std::log(cond_max);
  for (Index i = 0; i < n; ++i) sigma(i) = std::exp(rng.uniform(-half, half));
  return u * sigma.asDiagonal() * v.adjoint();
}

// ---------------------------------------------------------------------------
// Word-algebra dimension oracle
// ---------------------------------------------------------------------------

/// Span dimension of words in S union S* union {I} per word length, tracked
/// with a re-orthogonalized Gram-Schmidt basis of vectorized words. A
/// candidate counts as a new direction when its residual after normalization
/// and two orthogonalization passes exceeds 1e-7. final_dim == n^2 exactly
/// when the self-adjoint algebra generated by S is all of M_n.
inline WordAlgebraReport word_algebra_dim(const std::vector<CMatrix>& s, Index max_len,
                                          const Tolerances& tol = {}) {
  (void)tol;
  if (s.empty()) throw std::invalid_argument("word_algebra_dim: empty family");
  if (max_len < 1) throw std::invalid_argument("word_algebra_dim: max_len must be >= 1");
  const Index n = s.front().rows();
  std::vector<CMatrix> gens;
  for (const auto& x : s) {
    require_square_finite(x, "word_algebra_dim");
    if (x.rows() != n) throw DimensionMismatch("word_algebra_dim: dimension mismatch");
    double nx = fnorm(x);
    CMatrix xs = nx > 0.0 ? CMatrix(x / nx) : x;
    gens.push_back(xs);
    gens.push_back(xs.adjoint());
  }

  std::vector<CMatrix> basis_mats;
  std::vector<CVector> basis_vecs;
  auto try_add = [&](const CMatrix& cand) {
    double cn = fnorm(cand);
    if (cn <= 0.0) return;
    CVector v = vec(cand) / cn;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_vecs) v -= b.dot(v) * b;
    double res = v.norm();
    if (res > 1e-7) {
      v /= res;
      basis_vecs.push_back(v);
      basis_mats.push_back(unvec(v, n));
    }
  };

  try_add(identity(n));
  for (const auto& g : gens) try_add(g);

  WordAlgebraReport rep;
  rep.dims.push_back(static_cast<Index>(basis_vecs.size()));
  for (Index len = 2; len <= max_len; ++len) {
    size_t prev_count = basis_mats.size();
    for (size_t i = 0; i < prev_count; ++i)
      for (const auto& g : gens) try_add(basis_mats[i] * g);
    rep.dims.push_back(static_cast<Index>(basis_vecs.size()));
    if (rep.dims.back() == rep.dims[rep.dims.size() - 2]) {
      rep.stabilized = true;
      break;
    }
  }
  rep.final_dim = rep.dims.back();
  if (!rep.stabilized)
    throw NotStabilized("word_algebra_dim: dimension did not stabilize within max_len");
  return rep;
}

// ---------------------------------------------------------------------------
// Dual-route certification
// ---------------------------------------------------------------------------

/// Runs both irreducibility oracles (commutant nullspace and word algebra)
/// and errors if they disagree; disagreement is always a bug or a tolerance
/// failure, never silently resolved.
inline IrreducibilityCertificate certify(const CMatrix& t, const Tolerances& tol = {},
                                         Index max_len = 0) {
  require_square_finite(t, "certify");
  const Index n = t.rows();
  if (max_len <= 0) max_len = 2 * n * n + 4;
  CommutantBasis cb = staralg::commutant(n, {t}, /*include_adjoints=*/true, tol);
  WordAlgebraReport war = word_algebra_dim({t}, max_len, tol);
  bool comm_irr = cb.dim == 1;
  bool word_irr = war.final_dim == n * n;
  if (comm_irr != word_irr)
    throw OracleDisagreement("certify: commutant-nullspace and word-algebra "
                             "oracles disagree");
  IrreducibilityCertificate cert;
  cert.commutant_dim = cb.dim;
  cert.margin = cb.margin;
  cert.word_dim = war.final_dim;
  cert.verdict = comm_irr ? Verdict::Irreducible : Verdict::Reducible;
  return cert;
}

}  // namespace irrforge::oracle
