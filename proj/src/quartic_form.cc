#include "bnf/quartic_form.hpp"

#include <cmath>

namespace bnf {

const std::vector<MultiIndexPair>& degree4_keys() {
  static const std::vector<MultiIndexPair> keys = [] {
    std::vector<MultiIndexPair> ks;
    for (int a1 = 0; a1 <= 4; ++a1) {
      for (int a2 = 0; a2 + a1 <= 4; ++a2) {
        for (int b1 = 0; b1 + a1 + a2 <= 4; ++b1) {
          const int b2 = 4 - a1 - a2 - b1;
          ks.push_back({{a1, a2}, {b1, b2}});
        }
      }
    }
    return ks;
  }();
  return keys;
}

const std::array<MultiIndexPair, 2>& resonant_keys() {
  static const std::array<MultiIndexPair, 2> keys = {
      MultiIndexPair{{3, 0}, {0, 1}}, MultiIndexPair{{0, 1}, {3, 0}}};
  return keys;
}

PolyNorms polynomial_norms(const QuarticForm& p) {
  PolyNorms n;
  for (const auto& [key, c] : p) {
    const double a = std::fabs(c);
    n.p1 += key.alpha[0] * a;
    n.p2 += key.alpha[1] * a;
  }
  n.p_star = std::max(n.p1, n.p2);
  return n;
}

}  // namespace bnf
