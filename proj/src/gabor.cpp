#include "besselmult/gabor.hpp"

#include <cmath>

#include "besselmult/multiplier.hpp"

namespace besselmult {

double GaborSystem::tight_constant() const {
  return signal_length * window.squaredNorm();
}

GaborFramePair gabor_generate(int signal_length, const Vec& window, int time_step, int freq_step) {
  if (signal_length < 1) throw InvalidArgument("signal length must be positive");
  if (window.size() != signal_length)
    throw DimensionError("window length " + std::to_string(window.size()) +
                         " does not match signal length " + std::to_string(signal_length));
  if (time_step < 1 || signal_length % time_step != 0)
    throw InvalidArgument("time step must divide the signal length");
  if (freq_step < 1 || signal_length % freq_step != 0)
    throw InvalidArgument("frequency step must divide the signal length");

  const int L = signal_length;
  const int n_time = L / time_step;
  const int n_freq = L / freq_step;
  const double two_pi = 2.0 * std::acos(-1.0);

  Mat atoms(n_time * n_freq, L);
  int row = 0;
  for (int t = 0; t < n_time; ++t) {
    for (int f = 0; f < n_freq; ++f, ++row) {
      const int shift = t * time_step;
      const double freq = double(f * freq_step);
      for (int n = 0; n < L; ++n) {
        const double angle = two_pi * freq * n / L;
        atoms(row, n) = Complex(std::cos(angle), std::sin(angle)) * window[(n - shift + L) % L];
      }
    }
  }

  GaborFramePair pair;
  pair.system = GaborSystem{L, window, time_step, freq_step};
  const Space host(L, 2.0, Field::complex_scalars);
  const CoefficientExponent two(2.0);
  pair.analysis = FunctionalSequence(host, atoms.conjugate(), two);
  pair.synthesis = VectorSequence(host, atoms, two);
  return pair;
}

Vec apply_mask(const GaborFramePair& pair, const Symbol& mask, const Vec& signal) {
  detail::check_same_length(mask.values.size(), pair.analysis.elements.rows(), "gabor mask");
  detail::check_same_length(signal.size(), pair.system.signal_length, "gabor signal");
  const double norm_constant = pair.system.tight_constant();
  if (norm_constant == 0.0) return Vec::Zero(signal.size());
  const Multiplier M = build_multiplier(mask, pair.synthesis, pair.analysis);
  return apply(M, signal) / norm_constant;
}

}  // namespace besselmult
