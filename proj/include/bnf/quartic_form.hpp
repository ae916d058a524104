#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

namespace bnf {

// Exponent pair (alpha, beta) of a monomial z^alpha * zbar^beta in two
// complex variables.
struct MultiIndexPair {
  std::array<int, 2> alpha{};
  std::array<int, 2> beta{};

  friend auto operator<=>(const MultiIndexPair&,
                          const MultiIndexPair&) = default;

  int degree() const {
    return alpha[0] + alpha[1] + beta[0] + beta[1];
  }
  bool diagonal() const { return alpha == beta; }
};

// Real coefficient table of a polynomial in (z, zbar). The ordered map makes
// every summation over keys deterministic.
using QuarticForm = std::map<MultiIndexPair, double>;

// All 35 exponent pairs of total degree 4.
const std::vector<MultiIndexPair>& degree4_keys();

// The two exponent pairs whose small divisor vanishes at 3:1 resonance.
const std::array<MultiIndexPair, 2>& resonant_keys();

struct PolyNorms {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_star = 0.0;
};

// Weighted coefficient norms P^(j) = sum over keys of alpha_j * |c| and
// their maximum P* (the bound on a Hamiltonian vector-field component over
// the unit polydisc, scaled by r^3 on radius-r polydiscs).
PolyNorms polynomial_norms(const QuarticForm& p);

}  // namespace bnf
