#pragma once

namespace coset {

// Every numeric tolerance used by the toolkit, in one place. Spectral covers
// eigenvalue/norm comparisons, amplitude covers statevector entries and inner
// products, construction covers normalization and POVM/channel validity.
struct Tolerances {
  double spectral = 1e-9;
  double amplitude = 1e-10;
  double construction = 1e-12;
  double povm = 1e-10;  // PSD slack and completeness for measurement operators
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace coset
