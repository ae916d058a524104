#pragma once

#include <stdexcept>
#include <string>

namespace bnf {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The nonresonant homological equation was requested at (numerically) exact
// 3:1 resonance, |3w- - w+| < 1e-12 * w+.
struct ExactResonance : Error {
  using Error::Error;
};

// Generalized eigenproblem has (numerically) coincident frequencies.
struct RepeatedEigenvalue : Error {
  using Error::Error;
};

// Acoustic eigenvalue is nonpositive; modal oscillator data undefined.
struct ZeroFrequency : Error {
  using Error::Error;
};

// Curve tracing found no root of the resonance condition in the rectangle.
struct NoRootInRectangle : Error {
  using Error::Error;
};

// Resonant exclusions cover the entire sampled boundary.
struct AllExcluded : Error {
  using Error::Error;
};

// Relative energy drift exceeded the integrator quality gate.
struct EnergyDrift : Error {
  using Error::Error;
};

// Trajectory state norm exceeded the blowup guard.
struct Blowup : Error {
  using Error::Error;
};

// Spectral peak not sufficiently prominent over the next candidate.
struct SpectralAmbiguity : Error {
  using Error::Error;
};

// Smallness condition of the asymptotic-bound verification violated.
struct PreconditionFail : Error {
  using Error::Error;
};

// Action-angle transformation evaluated at (numerically) zero amplitude.
struct SingularTransform : Error {
  using Error::Error;
};

// Invalid run configuration (CLI / config file).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bnf
