#pragma once

// Constructive generator machinery for M_n(C): families of minimal
// projections that generate, rank-prescribed positive generators, the
// partial-isometry key construction, unitary-conjugation generation,
// MASA-complement generators, real-part-of-generator synthesis, and the
// ceiling-bound projection configuration.

#include "irrforge/staralg.hpp"

#include <cmath>

namespace irrforge::generators {

using numkernel::Projection;
using staralg::CommutantBasis;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Two families of rank-one projections in M_{n1+n2}, orthogonal within each
/// family, which jointly generate the full matrix algebra.
struct PairFamilies {
  Index n1 = 0, n2 = 0;
  std::vector<Projection> E;
  std::vector<Projection> F;
  CommutantBasis certificate;
};

/// Positive matrices with prescribed ranks whose self-adjoint algebra is all
/// of M_n, with the certifying commutant basis.
struct GeneratorBundle {
  std::vector<CMatrix> matrices;
  std::vector<Index> ranks;
  CommutantBasis certificate;
};

/// Output of the key construction: the partial isometry V with VV* = P0,
/// its initial projection P0' = V*V, a unitary U with U*P0U = P0', and the
/// corner-invertible positive block A0.
struct KeyConstructionResult {
  numkernel::PartialIsometry V;
  Projection P0prime;
  CMatrix U;
  CMatrix A0;
  CommutantBasis certificate;
};

struct ConjugationResult {
  CMatrix U;
  CommutantBasis certificate;
  KeyConstructionResult key;
};

struct MasaResult {
  CMatrix U;
  std::vector<CMatrix> generating_set;
  CommutantBasis certificate;
};

struct RealPartResult {
  CMatrix B;  // Hermitian partner
  CMatrix G;  // the generator, G = A + iB
  CommutantBasis certificate;
};

struct CeilingPlan {
  Index m = 0;
  Projection P;
  std::vector<Projection> Q;
  CommutantBasis certificate;
};

// ---------------------------------------------------------------------------
// Pair families
// ---------------------------------------------------------------------------

namespace detail {

/// Grows one family by a dimension bump: embeds everything as X (+) 0 and
/// appends (u+e)(u+e)*/2 where u is a deterministic unit vector in the old
/// block orthogonal to the family and e is the new coordinate.
inline void grow_family(std::vector<Projection>& fam, std::vector<Projection>& other) {
  const Index n = fam.front().dim();
  CMatrix comp = identity(n);
  for (const auto& p : fam) comp -= p.matrix;
  CVector u_old = orthonormal_range_basis(comp, 1).col(0);

  auto pad = [&](const Projection& p) {
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = p.matrix;
    return numkernel::projection_unchecked(std::move(m), p.rank);
  };
  for (auto& p : fam) p = pad(p);
  for (auto& p : other) p = pad(p);

  CVector w = CVector::Zero(n + 1);
  w.head(n) = u_old;
  w(n) = 1.0;
  w /= std::sqrt(2.0);
  fam.push_back(numkernel::projection_unchecked(w * w.adjoint(), 1));
}

}  // namespace detail

/// Minimal projections {E_i}_{i<=n1}, {F_j}_{j<=n2} in M_{n1+n2}, orthogonal
/// within each family, generating the full algebra. Built inductively from
/// the explicit 2x2 base E1 = diag(1,0), F1 = [[1,1],[1,1]]/2; generation is
/// certified before returning.
inline PairFamilies pair_families(Index n1, Index n2, const Tolerances& tol = {}) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("pair_families: n1, n2 must be >= 1");
  PairFamilies pf;
  pf.n1 = n1;
  pf.n2 = n2;
  CMatrix e1(2, 2), f1(2, 2);
  e1 << 1, 0, 0, 0;
  f1 << 0.5, 0.5, 0.5, 0.5;
  pf.E.push_back(numkernel::projection_unchecked(e1, 1));
  pf.F.push_back(numkernel::projection_unchecked(f1, 1));
  while (static_cast<Index>(pf.E.size()) < n1) detail::grow_family(pf.E, pf.F);
  while (static_cast<Index>(pf.F.size()) < n2) detail::grow_family(pf.F, pf.E);

  std::vector<CMatrix> all;
  for (const auto& p : pf.E) all.push_back(p.matrix);
  for (const auto& p : pf.F) all.push_back(p.matrix);
  auto [ok, cb] = staralg::generates(n1 + n2, all, tol);
  if (!ok)
    throw CertificationFailed("pair_families: commutant dimension is not 1");
  pf.certificate = std::move(cb);
  return pf;
}

// ---------------------------------------------------------------------------
// Rank-prescribed generators
// ---------------------------------------------------------------------------

/// Positive {A_j} with rank(A_j) = ranks[j] generating M_n, n = sum(ranks).
/// A_1 carries the E family with weights 1,2,...; the F family splits into
/// groups with weights 1, 1/2, 1/3, ... so every projection is recoverable
/// as a spectral projection of its carrier.
inline GeneratorBundle rank_prescribed_generators(const std::vector<Index>& ranks,
                                                  const Tolerances& tol = {}) {
  if (ranks.size() < 2)
    throw InvalidRanks("rank_prescribed_generators: need at least two ranks");
  Index n = 0;
  for (Index r : ranks) {
    if (r < 1) throw InvalidRanks("rank_prescribed_generators: ranks must be >= 1");
    n += r;
  }
  PairFamilies pf = pair_families(ranks[0], n - ranks[0], tol);

  GeneratorBundle gb;
  CMatrix a1 = CMatrix::Zero(n, n);
  for (Index i = 0; i < ranks[0]; ++i)
    a1 += static_cast<double>(i + 1) * pf.E[static_cast<size_t>(i)].matrix;
  gb.matrices.push_back(std::move(a1));
  Index offset = 0;
  for (size_t k = 1; k < ranks.size(); ++k) {
    CMatrix ak = CMatrix::Zero(n, n);
    for (Index j = 0; j < ranks[k]; ++j)
      ak += (1.0 / static_cast<double>(j + 1)) * pf.F[static_cast<size_t>(offset + j)].matrix;
    offset += ranks[k];
    gb.matrices.push_back(std::move(ak));
  }
  gb.ranks = ranks;
  for (size_t k = 0; k < ranks.size(); ++k)
    if (numkernel::numeric_rank(gb.matrices[k], tol) != ranks[k])
      throw Error("rank_prescribed_generators: rank postcondition failed");
  auto [ok, cb] = staralg::generates(n, gb.matrices, tol);
  if (!ok)
    throw CertificationFailed("rank_prescribed_generators: commutant dimension is not 1");
  gb.certificate = std::move(cb);
  return gb;
}

// ---------------------------------------------------------------------------
// Key construction
// ---------------------------------------------------------------------------

namespace detail {

inline void check_partition(const Projection& p0, const std::vector<Projection>& parts,
                            const Tolerances& tol, const char* who) {
  const Index n = p0.dim();
  double scale = 1.0 + std::sqrt(static_cast<double>(n));
  CMatrix sum = p0.matrix;
  Index rank_sum = p0.rank;
  for (const auto& p : parts) {
    if (p.dim() != n) throw DimensionMismatch(std::string(who) + ": dimension mismatch");
    if (p.rank < 1) throw PartitionInvalid(std::string(who) + ": parts must be nonzero");
    sum += p.matrix;
    rank_sum += p.rank;
  }
  if (rank_sum != n || fnorm(sum - identity(n)) > tol.cert_tol * scale)
    throw PartitionInvalid(std::string(who) + ": projections do not partition the identity");
  std::vector<const Projection*> all{&p0};
  for (const auto& p : parts) all.push_back(&p);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (fnorm(all[i]->matrix * all[j]->matrix) > tol.cert_tol * scale)
        throw PartitionInvalid(std::string(who) + ": parts are not pairwise orthogonal");
}

/// Unitary carrying ran(P) onto ran(Q) and ran(P)^perp onto ran(Q)^perp for
/// equal-rank projections: U* P U = Q.
inline CMatrix connecting_unitary(const Projection& p, const Projection& q) {
  const Index n = p.dim();
  CMatrix bp = p.rank > 0 ? orthonormal_range_basis(p.matrix, p.rank) : CMatrix(n, 0);
  CMatrix bq = q.rank > 0 ? orthonormal_range_basis(q.matrix, q.rank) : CMatrix(n, 0);
  CMatrix cp = orthonormal_complement_basis(bp, n);
  CMatrix cq = orthonormal_complement_basis(bq, n);
  return bp * bq.adjoint() + cp * cq.adjoint();
}

}  // namespace detail

/// The partial-isometry construction: given a partition {P0} + parts of I
/// and positive corner generators {A_k} with rank(A_k) = rank(parts[k]) whose
/// self-adjoint algebra is the full P0 corner, rescales |A_k| <= 2^-k,
/// forms A0 = (P0 - sum A_k^2)^{1/2} and V = A0 + sum A_k E12^{(k)}, so that
/// VV* = P0 exactly; returns a unitary U with U*P0U = V*V and certifies that
/// {U*P0U} together with the parts generates M_n.
inline KeyConstructionResult key_construction(const Projection& p0,
                                              const std::vector<Projection>& parts,
                                              std::vector<CMatrix> gens,
                                              const Tolerances& tol = {}) {
  const Index n = p0.dim();
  if (parts.size() < 2)
    throw PartitionInvalid("key_construction: at least two parts are required");
  detail::check_partition(p0, parts, tol, "key_construction");
  if (gens.size() != parts.size())
    throw RankMismatch("key_construction: one generator per part is required");

  const Index r0 = p0.rank;
  CMatrix b0 = orthonormal_range_basis(p0.matrix, r0);
  for (size_t k = 0; k < gens.size(); ++k) {
    const CMatrix& g = gens[k];
    require_square_finite(g, "key_construction");
    double scale = 1.0 + fnorm(g);
    if (fnorm(g - g.adjoint()) > tol.cert_tol * scale ||
        fnorm(g - p0.matrix * g * p0.matrix) > tol.cert_tol * scale)
      throw Error("key_construction: generators must be positive and supported "
                  "in the P0 corner");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol.cert_tol * scale)
      throw Error("key_construction: generators must be positive");
    if (numkernel::numeric_rank(g, tol) != parts[k].rank)
      throw RankMismatch("key_construction: generator rank does not match its part");
  }

  // Corner generation certificate: the compressed generators must have a
  // trivial relative commutant inside the r0 x r0 corner.
  if (r0 == 1) {
    bool any = false;
    for (const auto& g : gens) any = any || fnorm(g) > tol.cert_tol;
    if (!any) throw CornerGenerationFailed("key_construction: zero corner generators");
  } else {
    std::vector<CMatrix> compressed;
    compressed.reserve(gens.size());
    for (const auto& g : gens) compressed.push_back(b0.adjoint() * g * b0);
    CommutantBasis corner = staralg::commutant(r0, compressed, true, tol);
    if (corner.dim != 1)
      throw CornerGenerationFailed(
          "key_construction: generators do not generate the P0 corner");
  }

  for (size_t k = 0; k < gens.size(); ++k)
    gens[k] *= std::pow(2.0, -static_cast<double>(k + 1)) / fnorm(gens[k]);

  CMatrix deficit = p0.matrix;
  for (const auto& g : gens) deficit -= g * g;
  CMatrix a0 = numkernel::sqrt_psd(deficit, tol);

  CMatrix v = a0;
  for (size_t k = 0; k < gens.size(); ++k) {
    Projection rk = numkernel::range_projection(gens[k], tol);
    staralg::MatrixUnits2 mu = staralg::matrix_units(rk, parts[k], tol);
    v += gens[k] * mu.E12;
  }
  if (fnorm(v * v.adjoint() - p0.matrix) > tol.cert_tol)
    throw Error("key_construction: VV* = P0 identity failed numerically");

  Projection p0prime = numkernel::make_projection(v.adjoint() * v, tol);
  if (p0prime.rank != r0)
    throw Error("key_construction: V*V rank mismatch");
  CMatrix u = detail::connecting_unitary(p0, p0prime);

  std::vector<CMatrix> final_set{u.adjoint() * p0.matrix * u};
  for (const auto& p : parts) final_set.push_back(p.matrix);
  auto [ok, cb] = staralg::generates(n, final_set, tol);
  if (!ok)
    throw CertificationFailed("key_construction: final generation certificate failed");

  KeyConstructionResult out;
  out.V = numkernel::PartialIsometry{v, p0prime, p0};
  out.P0prime = p0prime;
  out.U = std::move(u);
  out.A0 = std::move(a0);
  out.certificate = std::move(cb);
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation generator
// ---------------------------------------------------------------------------

/// Given a partition {P_j}_{j=0..N} of I with N >= 2 and
/// rank(P_j) <= rank(P0) <= n - rank(P0), produces a unitary U such that
/// {U*P0U, P_1, ..., P_N} generates M_n. The three preconditions are each
/// necessary; violations name the failing one.
inline ConjugationResult conjugation_generator(const std::vector<Projection>& partition,
                                               const Tolerances& tol = {}) {
  if (partition.empty())
    throw PartitionInvalid("conjugation_generator: empty partition");
  const Projection& p0 = partition.front();
  std::vector<Projection> parts(partition.begin() + 1, partition.end());
  const Index n = p0.dim();
  const Index r0 = p0.rank;
  detail::check_partition(p0, parts, tol, "conjugation_generator");

  if (2 * r0 > n)
    throw NecessityViolated(NecessityViolated::Which::P0ExceedsComplement,
                            "conjugation_generator: P0 is not weaker than I - P0");
  for (const auto& p : parts)
    if (p.rank > r0)
      throw NecessityViolated(NecessityViolated::Which::PartExceedsP0,
                              "conjugation_generator: a part is not weaker than P0");
  if (parts.size() < 2)
    throw NecessityViolated(NecessityViolated::Which::TooFewParts,
                            "conjugation_generator: at least two parts (N >= 2) required");

  // Greedy rank allocation: largest remaining first, ties by index; keeps at
  // least two positive allocations whenever the corner has dimension >= 2.
  const size_t nn = parts.size();
  std::vector<size_t> order(nn);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (parts[a].rank != parts[b].rank) return parts[a].rank > parts[b].rank;
    return a < b;
  });
  std::vector<Index> alloc(nn, 0);
  Index rem = r0;
  for (size_t idx : order) {
    Index take = std::min(parts[idx].rank, rem);
    alloc[idx] = take;
    rem -= take;
    if (rem == 0) break;
  }
  if (rem != 0)
    throw Error("conjugation_generator: allocation failed");  // unreachable given checks
  if (r0 >= 2) {
    size_t positive = 0;
    for (Index a : alloc) positive += a > 0 ? 1 : 0;
    if (positive == 1) {
      alloc[order[0]] -= 1;
      alloc[order[1]] += 1;
    }
  }

  CMatrix b0 = orthonormal_range_basis(p0.matrix, r0);
  std::vector<CMatrix> corner_gens(nn, CMatrix::Zero(r0, r0));
  if (r0 == 1) {
    for (size_t idx : order)
      if (alloc[idx] > 0) corner_gens[idx] = CMatrix::Identity(1, 1);
  } else {
    std::vector<Index> pos_ranks;
    std::vector<size_t> pos_idx;
    for (size_t idx : order)
      if (alloc[idx] > 0) {
        pos_ranks.push_back(alloc[idx]);
        pos_idx.push_back(idx);
      }
    GeneratorBundle gb = rank_prescribed_generators(pos_ranks, tol);
    for (size_t i = 0; i < pos_idx.size(); ++i) corner_gens[pos_idx[i]] = gb.matrices[i];
  }

  // Pad each corner generator up to the rank of its part with a spectrally
  // separated projection orthogonal to its range.
  std::vector<CMatrix> gens(nn);
  for (size_t k = 0; k < nn; ++k) {
    CMatrix bhat = corner_gens[k];
    Index deficiency = parts[k].rank - alloc[k];
    CMatrix full = b0 * bhat * b0.adjoint();
    if (deficiency > 0) {
      CMatrix rb = alloc[k] > 0 ? orthonormal_range_basis(bhat, alloc[k]) : CMatrix(r0, 0);
      CMatrix comp = orthonormal_complement_basis(rb, r0);
      CMatrix cols = comp.leftCols(deficiency);
      full += (fnorm(bhat) + 1.0) * (b0 * cols) * (b0 * cols).adjoint();
    }
    gens[k] = std::move(full);
  }

  KeyConstructionResult key = key_construction(p0, parts, std::move(gens), tol);
  ConjugationResult out;
  out.U = key.U;
  out.certificate = key.certificate;
  out.key = std::move(key);
  return out;
}

// ---------------------------------------------------------------------------
// MASA complement generator
// ---------------------------------------------------------------------------

/// Theorem-of-the-MASA construction: for a MASA A = W D_n W* and a projection
/// P in A with 1 <= rank(P) <= n - rank(P), returns a unitary U with
/// W*(U*PU, A(I-P)) = M_n, certified on the generating set
/// {U*PU} + minimal projections of A(I-P) grouped as parts.
inline MasaResult masa_complement_generator(const CMatrix& diagonal_basis,
                                            const Projection& p,
                                            const Tolerances& tol = {}) {
  const Index n = p.dim();
  require_square_finite(diagonal_basis, "masa_complement_generator");
  if (diagonal_basis.rows() != n)
    throw DimensionMismatch("masa_complement_generator: basis dimension mismatch");
  double scale = 1.0 + std::sqrt(static_cast<double>(n));
  if (fnorm(diagonal_basis.adjoint() * diagonal_basis - identity(n)) > tol.cert_tol * scale)
    throw Error("masa_complement_generator: diagonal_basis must be unitary");

  const CMatrix& w = diagonal_basis;
  CMatrix phat = w.adjoint() * p.matrix * w;
  CMatrix offdiag = phat;
  offdiag.diagonal().setZero();
  if (fnorm(offdiag) > tol.cert_tol * scale)
    throw PNotInMasa("masa_complement_generator: P does not commute with the MASA");
  std::vector<Index> ones, zeros;
  for (Index i = 0; i < n; ++i) {
    double d = phat(i, i).real();
    if (std::abs(d - 1.0) < 0.25)
      ones.push_back(i);
    else if (std::abs(d) < 0.25)
      zeros.push_back(i);
    else
      throw PNotInMasa("masa_complement_generator: P is not a projection in the MASA");
  }
  const Index k = static_cast<Index>(ones.size());
  if (k != p.rank) throw PNotInMasa("masa_complement_generator: rank mismatch in the MASA");
  if (k < 1 || 2 * k > n)
    throw RankCondition("masa_complement_generator: need 1 <= rank(P) <= n - rank(P)");

  auto diag_proj = [&](const std::vector<Index>& idx) {
    CMatrix m = CMatrix::Zero(n, n);
    for (Index i : idx) m(i, i) = 1.0;
    return numkernel::projection_unchecked(std::move(m), static_cast<Index>(idx.size()));
  };

  if (n == 2) {
    CMatrix uhat(2, 2);
    const double c = 1.0 / std::sqrt(2.0);
    uhat << c, -c, c, c;
    CMatrix u = w * uhat * w.adjoint();
    std::vector<CMatrix> set{u.adjoint() * p.matrix * u,
                             w * diag_proj(zeros).matrix * w.adjoint()};
    auto [ok, cb] = staralg::generates(2, set, tol);
    if (!ok) throw CertificationFailed("masa_complement_generator: 2x2 case failed");
    return MasaResult{std::move(u), std::move(set), std::move(cb)};
  }

  // Split I - P inside the MASA into N >= 2 groups of size <= rank(P).
  std::vector<std::vector<Index>> groups;
  const Index z = static_cast<Index>(zeros.size());
  if (z > k) {
    for (Index start = 0; start < z; start += k) {
      std::vector<Index> g;
      for (Index i = start; i < std::min(start + k, z); ++i)
        g.push_back(zeros[static_cast<size_t>(i)]);
      groups.push_back(std::move(g));
    }
  } else {  // z == k >= 2 here since n >= 3
    Index half = (z + 1) / 2;
    groups.emplace_back(zeros.begin(), zeros.begin() + half);
    groups.emplace_back(zeros.begin() + half, zeros.end());
  }

  std::vector<Projection> partition{diag_proj(ones)};
  for (const auto& g : groups) partition.push_back(diag_proj(g));
  ConjugationResult conj = conjugation_generator(partition, tol);

  CMatrix u = w * conj.U * w.adjoint();
  std::vector<CMatrix> set{u.adjoint() * p.matrix * u};
  for (size_t j = 1; j < partition.size(); ++j)
    set.push_back(w * partition[j].matrix * w.adjoint());
  auto [ok, cb] = staralg::generates(n, set, tol);
  if (!ok)
    throw CertificationFailed("masa_complement_generator: generation certificate failed");
  return MasaResult{std::move(u), std::move(set), std::move(cb)};
}

// ---------------------------------------------------------------------------
// Real part of a generator
// ---------------------------------------------------------------------------

/// For Hermitian A not a scalar multiple of I, produces Hermitian B such that
/// G = A + iB generates M_n (so A is the real part of a generator), with the
/// generation certificate. The low-multiplicity spectral projection of A and
/// the MASA refined from its eigenbasis drive the construction.
inline RealPartResult real_part_generator(const CMatrix& a, const Tolerances& tol = {}) {
  require_square_finite(a, "real_part_generator");
  const Index n = a.rows();
  double scale = 1.0 + fnorm(a);
  if (fnorm(a - a.adjoint()) > tol.cert_tol * scale)
    throw NotHermitian("real_part_generator: input is not Hermitian");
  cplx mu = a.trace() / static_cast<double>(n);
  if (fnorm(a - mu * identity(n)) <= tol.cert_tol * scale)
    throw ScalarInput("real_part_generator: input is a scalar multiple of I");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success) throw Error("real_part_generator: eigensolver failed");
  const CMatrix& w = es.eigenvectors();
  std::vector<cplx> raw(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = es.eigenvalues()(i);
  Clustering cl = cluster_points(raw, tol.cluster_tol * (1.0 + fnorm(a)));
  if (cl.members.size() < 2)
    throw ScalarInput("real_part_generator: spectrum clusters to a single point");

  size_t pick = 0;
  for (size_t c = 1; c < cl.members.size(); ++c)
    if (cl.members[c].size() < cl.members[pick].size()) pick = c;

  CMatrix phat = CMatrix::Zero(n, n);
  for (Index i : cl.members[pick]) phat(i, i) = 1.0;
  Projection p = numkernel::projection_unchecked(
      w * phat * w.adjoint(), static_cast<Index>(cl.members[pick].size()));

  MasaResult masa = masa_complement_generator(w, p, tol);

  CVector weights = CVector::Zero(n);
  double next = 1.0;
  for (Index i = 0; i < n; ++i) {
    bool in_p = false;
    for (Index j : cl.members[pick]) in_p = in_p || j == i;
    if (!in_p) {
      weights(i) = next;
      next = 1.0 / (1.0 / next + 1.0);  // 1, 1/2, 1/3, ...
    }
  }
  CMatrix b = masa.U * (w * weights.asDiagonal() * w.adjoint()) * masa.U.adjoint();
  b = 0.5 * (b + b.adjoint());
  CMatrix g = a + cplx(0, 1) * b;

  auto [ok, cb] = staralg::generates(n, {g}, tol);
  if (!ok)
    throw CertificationFailed("real_part_generator: G does not generate M_n");
  return RealPartResult{std::move(b), std::move(g), std::move(cb)};
}

// ---------------------------------------------------------------------------
// Ceiling-bound configuration
// ---------------------------------------------------------------------------

/// Smallest admissible number of complement parts for a rank-k projection in
/// M_n: m = max(2, ceil(n/k) - 1).
inline Index ceiling_m(Index n, Index k) {
  if (k < 1 || 2 * k > n)
    throw KTooLarge("ceiling_m: need 1 <= k <= n/2");
  Index c = (n + k - 1) / k;
  return std::max<Index>(2, c - 1);
}

/// A configuration with m' parts exists iff there are at least two parts,
/// each part can be nonzero, and m' parts of rank <= k can cover rank n - k.
inline bool ceiling_feasible(Index n, Index k, Index m_parts) {
  if (k < 1 || 2 * k > n) return false;
  return m_parts >= 2 && m_parts <= n - k && m_parts * k >= n - k;
}

/// Builds the extremal configuration: P of rank k and m pairwise orthogonal
/// parts Q_j with sum rank(Q_j) = n - k, each rank <= k, such that
/// {P} + {Q_j} generates M_n.
inline CeilingPlan ceiling_plan(Index n, Index k, const Tolerances& tol = {}) {
  Index m = ceiling_m(n, k);
  if (!ceiling_feasible(n, k, m))
    throw ConstructionInfeasible(
        "ceiling_plan: no valid configuration in this dimension (n=2, k=1)");
  auto diag_proj = [&](Index lo, Index hi) {
    CMatrix p = CMatrix::Zero(n, n);
    for (Index i = lo; i < hi; ++i) p(i, i) = 1.0;
    return numkernel::projection_unchecked(std::move(p), hi - lo);
  };
  std::vector<Projection> partition{diag_proj(0, k)};
  Index base = (n - k) / m, extra = (n - k) % m, pos = k;
  for (Index j = 0; j < m; ++j) {
    Index sz = base + (j < extra ? 1 : 0);
    partition.push_back(diag_proj(pos, pos + sz));
    pos += sz;
  }
  ConjugationResult conj = conjugation_generator(partition, tol);

  CeilingPlan plan;
  plan.m = m;
  plan.P = numkernel::make_projection(
      conj.U.adjoint() * partition.front().matrix * conj.U, tol);
  plan.Q.assign(partition.begin() + 1, partition.end());
  plan.certificate = std::move(conj.certificate);
  return plan;
}

}  // namespace irrforge::generators
