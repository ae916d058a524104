#pragma once

#include <complex>
#include <map>

#include "bnf/quartic_form.hpp"

namespace bnf {

// Complex-coefficient polynomial in (z1, z2, conj z1, conj z2), arbitrary
// degree, keyed by exponent pairs. Used for coordinate-free checks (Poisson
// brackets, Hamiltonian composition) independent of the solver code paths.
using PolyCC = std::map<MultiIndexPair, std::complex<double>>;

inline PolyCC to_complex(const QuarticForm& p,
                         std::complex<double> scale = {1.0, 0.0}) {
  PolyCC out;
  for (const auto& [k, c] : p) out[k] = scale * c;
  return out;
}

inline void add_term(PolyCC& p, const MultiIndexPair& k,
                     std::complex<double> c) {
  auto it = p.find(k);
  if (it == p.end()) {
    p.emplace(k, c);
  } else {
    it->second += c;
  }
}

inline PolyCC derivative_z(const PolyCC& p, int j) {
  PolyCC out;
  for (const auto& [k, c] : p) {
    if (k.alpha[j] == 0) continue;
    MultiIndexPair dk = k;
    --dk.alpha[j];
    add_term(out, dk, c * static_cast<double>(k.alpha[j]));
  }
  return out;
}

inline PolyCC derivative_zbar(const PolyCC& p, int j) {
  PolyCC out;
  for (const auto& [k, c] : p) {
    if (k.beta[j] == 0) continue;
    MultiIndexPair dk = k;
    --dk.beta[j];
    add_term(out, dk, c * static_cast<double>(k.beta[j]));
  }
  return out;
}

inline PolyCC multiply(const PolyCC& a, const PolyCC& b) {
  PolyCC out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      MultiIndexPair k = ka;
      k.alpha[0] += kb.alpha[0];
      k.alpha[1] += kb.alpha[1];
      k.beta[0] += kb.beta[0];
      k.beta[1] += kb.beta[1];
      add_term(out, k, ca * cb);
    }
  }
  return out;
}

// Canonical bracket {F,G} = -i * sum_j (dF/dz_j dG/dzbar_j -
// dF/dzbar_j dG/dz_j), the convention under which dz_j/dt = {z_j, H}
// reproduces the linear flow exp(-i w_j t).
inline PolyCC poisson_bracket(const PolyCC& f, const PolyCC& g) {
  const std::complex<double> minus_i{0.0, -1.0};
  PolyCC out;
  for (int j = 0; j < 2; ++j) {
    for (const auto& [k, c] :
         multiply(derivative_z(f, j), derivative_zbar(g, j))) {
      add_term(out, k, minus_i * c);
    }
    for (const auto& [k, c] :
         multiply(derivative_zbar(f, j), derivative_z(g, j))) {
      add_term(out, k, -minus_i * c);
    }
  }
  return out;
}

inline std::complex<double> evaluate(const PolyCC& p, std::complex<double> z1,
                                     std::complex<double> z2) {
  auto ipow = [](std::complex<double> b, int e) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [k, c] : p) {
    acc += c * ipow(z1, k.alpha[0]) * ipow(z2, k.alpha[1]) *
           ipow(std::conj(z1), k.beta[0]) * ipow(std::conj(z2), k.beta[1]);
  }
  return acc;
}

}  // namespace bnf
