#include "anc/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "anc/rng.hpp"

namespace anc {

std::vector<double> control_band_edges() {
  std::vector<double> edges;
  edges.reserve(6);
  for (int k = 0; k <= 5; ++k) {
    edges.push_back(std::round(20.0 * std::pow(7980.0 / 20.0, k / 5.0)));
  }
  return edges;
}

std::vector<BandSpec> control_bands() {
  const std::vector<double> edges = control_band_edges();
  std::vector<BandSpec> bands;
  bands.reserve(15);
  for (int width = 1; width <= 5; ++width) {
    for (int start = 0; start + width <= 5; ++start) {
      bands.push_back(BandSpec{edges[start], edges[start + width]});
    }
  }
  return bands;
}

Waveform synth_track(const NoiseTrackSpec& spec, int sample_rate_hz,
                     std::size_t design_taps) {
  if (spec.duration_s <= 0.0) throw std::invalid_argument("duration must be positive");
  if (spec.amplitude <= 0.0) throw std::invalid_argument("amplitude must be positive");

  const std::size_t n =
      static_cast<std::size_t>(std::llround(spec.duration_s * sample_rate_hz));
  const FirFilter h = design_bandpass(spec.band.low_hz, spec.band.high_hz,
                                      design_taps, sample_rate_hz);
  RngStream rng(spec.seed);

  // extra leading samples so only the fully-overlapped region is kept
  Waveform white;
  white.sample_rate_hz = sample_rate_hz;
  white.samples.resize(n + design_taps - 1);
  for (double& s : white.samples) s = rng.normal();

  const Waveform full = convolve_full(white, h);
  Waveform x;
  x.sample_rate_hz = sample_rate_hz;
  x.samples.assign(full.samples.begin() + (design_taps - 1),
                   full.samples.begin() + (design_taps - 1) + n);

  double power = 0.0;
  for (double s : x.samples) power += s * s;
  power /= static_cast<double>(n);
  const double scale = spec.amplitude / std::sqrt(power);
  for (double& s : x.samples) s *= scale;

  if (std::isfinite(spec.background_snr_db)) {
    const double sig_power = spec.amplitude * spec.amplitude;
    const double bg_rms =
        std::sqrt(sig_power / std::pow(10.0, spec.background_snr_db / 10.0));
    for (double& s : x.samples) s += bg_rms * rng.normal();
  }
  return x;
}

Waveform cascade(const std::vector<Waveform>& tracks) {
  if (tracks.empty()) throw std::invalid_argument("no tracks to cascade");
  Waveform out;
  out.sample_rate_hz = tracks.front().sample_rate_hz;
  std::size_t total = 0;
  for (const Waveform& t : tracks) {
    if (t.sample_rate_hz != out.sample_rate_hz) {
      throw std::invalid_argument("sample rate mismatch in cascade");
    }
    total += t.samples.size();
  }
  out.samples.reserve(total);
  for (const Waveform& t : tracks) {
    out.samples.insert(out.samples.end(), t.samples.begin(), t.samples.end());
  }
  return out;
}

Waveform mix(const std::vector<Waveform>& tracks,
             const std::vector<double>& gains) {
  if (tracks.empty()) throw std::invalid_argument("no tracks to mix");
  if (tracks.size() != gains.size()) {
    throw std::invalid_argument("one gain per track required");
  }
  const std::size_t n = tracks.front().samples.size();
  const int rate = tracks.front().sample_rate_hz;
  for (const Waveform& t : tracks) {
    if (t.samples.size() != n || t.sample_rate_hz != rate) {
      throw std::invalid_argument("mix requires equal lengths and rates");
    }
  }
  Waveform out;
  out.sample_rate_hz = rate;
  out.samples.assign(n, 0.0);
  for (std::size_t k = 0; k < tracks.size(); ++k) {
    const double g = gains[k];
    for (std::size_t i = 0; i < n; ++i) out.samples[i] += g * tracks[k].samples[i];
  }
  return out;
}

FirFilter perturb_path(const FirFilter& ir, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) return ir;
  RngStream rng(seed);
  std::vector<double> noise(ir.length());
  double ir_energy = 0.0, noise_energy = 0.0;
  for (double t : ir.taps) ir_energy += t * t;
  for (double& v : noise) {
    v = rng.normal();
    noise_energy += v * v;
  }
  const double scale =
      std::sqrt(ir_energy / (noise_energy * std::pow(10.0, snr_db / 10.0)));
  FirFilter out = ir;
  for (std::size_t i = 0; i < out.length(); ++i) out.taps[i] += scale * noise[i];
  return out;
}

}  // namespace anc
