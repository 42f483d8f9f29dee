#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "anc/dsp.hpp"

namespace anc {

/// Sentinel for "no background noise" / "no perturbation".
inline constexpr double kInfiniteSnrDb = std::numeric_limits<double>::infinity();

struct BandSpec {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

struct NoiseTrackSpec {
  BandSpec band;
  double duration_s = 1.0;
  double amplitude = 1.0;  // target RMS
  double background_snr_db = kInfiniteSnrDb;
  std::uint64_t seed = 0;
};

/// The 15 pre-training bands: every contiguous union of 5 log-spaced
/// base bands spanning [20, 7980] Hz, ordered narrow to wide.
std::vector<BandSpec> control_bands();

/// Base band edges 20*(7980/20)^(k/5), k = 0..5, rounded to 1 Hz.
std::vector<double> control_band_edges();

/// Band-limited Gaussian noise at the requested RMS, with optional
/// full-band white background at the given SNR. Deterministic per seed.
Waveform synth_track(const NoiseTrackSpec& spec, int sample_rate_hz = 16000,
                     std::size_t design_taps = 1023);

/// Temporal concatenation.
Waveform cascade(const std::vector<Waveform>& tracks);

/// Pointwise weighted sum of equal-length tracks.
Waveform mix(const std::vector<Waveform>& tracks,
             const std::vector<double>& gains);

/// Adds white Gaussian noise to an impulse response so that the
/// energy ratio equals snr_db exactly. +infinity returns a copy.
FirFilter perturb_path(const FirFilter& ir, double snr_db, std::uint64_t seed);

}  // namespace anc
