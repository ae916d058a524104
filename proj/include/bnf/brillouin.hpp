#pragma once

#include <vector>

#include "bnf/types.hpp"

namespace bnf::brillouin {

// Vertices of the irreducible wave-number triangle.
WaveNumbers gamma_point();
WaveNumbers x_point();
WaveNumbers m_point();

// Arc-length positions of X and M on the boundary loop Gamma->X->M->Gamma,
// scaled so the full loop has parameter length 1.
double s_of_x();
double s_of_m();
double boundary_length();

// Piecewise-linear boundary point at parameter s (taken mod 1).
WaveNumbers boundary_point(double s);

// Circular distance |a-b| on the boundary parameter (period 1).
double circular_distance(double a, double b);

// Sorted boundary samples: per_edge uniformly spaced points on each of the
// three edges, including each edge's start vertex (3*per_edge values).
std::vector<double> boundary_samples(int per_edge);

}  // namespace bnf::brillouin
