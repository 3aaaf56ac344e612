#pragma once

#include "besselmult/core.hpp"

namespace besselmult {

/// A finite cyclic Gabor lattice: time step a and frequency step b must
/// divide the signal length L; the system has K = (L/a)*(L/b) atoms.
struct GaborSystem {
  int signal_length = 0;
  Vec window;
  int time_step = 1;
  int freq_step = 1;

  int size() const { return (signal_length / time_step) * (signal_length / freq_step); }
  /// The reconstruction constant of the full lattice: L * ||window||_2^2.
  double tight_constant() const;
};

/// The generated system: atom (t, f) is the window translated by t*time_step
/// (cyclically) and modulated at frequency f*freq_step. The analysis rows are
/// conjugated (signal inner-product convention); the synthesis rows are not.
struct GaborFramePair {
  GaborSystem system;
  FunctionalSequence analysis;
  VectorSequence synthesis;
};

GaborFramePair gabor_generate(int signal_length, const Vec& window, int time_step, int freq_step);

/// Masked reconstruction (1/tight_constant) * M_{mask}(signal); the all-ones
/// mask reproduces the input on full-lattice systems.
Vec apply_mask(const GaborFramePair& pair, const Symbol& mask, const Vec& signal);

}  // namespace besselmult
