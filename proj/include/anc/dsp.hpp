#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace anc {

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, std::size_t sample)
      : std::runtime_error(what + " at sample " + std::to_string(sample)),
        sample_index(sample) {}
  std::size_t sample_index;
};

/// Uniformly sampled real signal.
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Finite impulse response coefficients.
struct FirFilter {
  std::vector<double> taps;

  std::size_t length() const { return taps.size(); }
  static FirFilter zeros(std::size_t n) { return FirFilter{std::vector<double>(n, 0.0)}; }
  static FirFilter impulse(std::size_t n = 1) {
    FirFilter f = zeros(n);
    f.taps[0] = 1.0;
    return f;
  }
};

/// Acoustic plant: primary path, secondary path, and its estimate.
/// secondary_estimate equals secondary by default (perfect modeling).
struct PathModel {
  FirFilter primary;
  FirFilter secondary;
  FirFilter secondary_estimate;
};

/// Per-sample FIR evaluation over a zero-initialized delay line.
///
/// The delay line is stored twice so the most recent window is always
/// contiguous; taps are kept reversed so each step is a single forward
/// dot product.
class StreamingFir {
 public:
  StreamingFir() = default;
  explicit StreamingFir(FirFilter filter);

  double step(double x_n);

  /// Replaces coefficients, preserving the delay-line contents.
  void set_taps(const FirFilter& filter);

  void reset();
  std::size_t length() const { return n_; }
  FirFilter filter() const;

 private:
  std::vector<double> taps_rev_;
  std::vector<double> buf_;  // 2n samples, window [pos+1, pos+n] is current
  std::size_t n_ = 0;
  std::size_t pos_ = 0;
};

/// Linear-phase windowed-sinc band-pass (Hamming window), unit gain at
/// the geometric band centre.
FirFilter design_bandpass(double low_hz, double high_hz, std::size_t num_taps,
                          int sample_rate_hz);

/// Full linear convolution; output length = len(x) + len(h) - 1.
Waveform convolve_full(const Waveform& x, const FirFilter& h);

/// Divides every sample by (max - min) of the frame. Throws
/// DegenerateInputError for a constant frame.
Waveform min_max_normalize(const Waveform& frame);

/// Per-window noise reduction 10*log10(P_d / P_e); a trailing partial
/// window is dropped. P_d = 0 gives 0 dB, P_e = 0 gives +infinity.
std::vector<double> noise_reduction_db(const Waveform& d, const Waveform& e,
                                       double window_s);

/// Complex magnitude of a filter's frequency response at f_hz, in dB.
double magnitude_response_db(const FirFilter& h, double f_hz, int sample_rate_hz);

}  // namespace anc
