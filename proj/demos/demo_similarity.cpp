// Walkthrough: decide similarity-to-irreducible for a seeded normal matrix,
// print the similarity, the certificate, and an obstruction example.

#include "irrforge/irrforge.hpp"

#include <iostream>

using namespace irrforge;

int main() {
  // A normal 4x4 with spectrum {1 (x2), 2, 3+i}: multiplicities stay <= n/2
  // and there are three distinct eigenvalues, so a similarity must exist.
  CMatrix n = oracle::random_normal({cplx(1), cplx(2), cplx(3, 1)}, {2, 1, 1}, {7});
  std::cout << "input N (normal, spectrum {1,1,2,3+i}):\n" << n << "\n\n";

  auto out = similarity::similar_to_irreducible_normal(n);
  const auto& res = std::get<similarity::SimilarityResult>(out);
  std::cout << "X N X^-1 =\n" << res.conjugated << "\n\n";
  std::cout << "certificate: commutant dim = " << res.certificate.commutant_dim
            << ", word-algebra dim = " << res.certificate.word_dim
            << ", margin = " << res.certificate.margin << ", cond(X) = " << res.cond
            << "\n";
  std::cout << "round trip |X^-1 (XNX^-1) X - N| = "
            << fnorm(res.Xinv * res.conjugated * res.X - n) << "\n\n";

  // An obstructed instance: an eigenvalue with multiplicity above n/2.
  CMatrix bad = oracle::random_normal({cplx(0), cplx(1)}, {3, 1}, {8});
  auto out2 = similarity::similar_to_irreducible_normal(bad);
  const auto& ob = std::get<similarity::Obstruction>(out2);
  std::cout << "spectrum {0,0,0,1}: obstruction at lambda = " << ob.lambda
            << " (eigenspace larger than its complement)\n";

  // The witness projection commutes with every similarity of the input.
  auto det = similarity::strong_reducibility_detect(bad);
  CMatrix x = oracle::random_invertible(4, 50, {9});
  auto q = similarity::reducing_projection_witness(bad, x, det);
  Eigen::PartialPivLU<CMatrix> lu(x);
  CMatrix s = x * bad * lu.solve(identity(4));
  std::cout << "witness rank " << q.rank
            << ", commutator residual = " << fnorm(q.matrix * s - s * q.matrix) << "\n";
  return 0;
}
