#include "anc/bank.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "anc/io.hpp"
#include "anc/rng.hpp"

namespace anc {

namespace {

// e = d - w*(s*x), truncated to len(x); returns mean(e^2).
// Commuting the control filter past the secondary path keeps the
// labeling pass O(len(x) * taps) per filter instead of streaming cost.
double residual_power(const FirFilter& w, const Waveform& x,
                      const Waveform& d, const Waveform& sx) {
  const std::size_t n = x.samples.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t k = 0; k < w.length(); ++k) {
    const double wk = w.taps[k];
    if (wk == 0.0) continue;
    const std::size_t limit = n - k;
    const double* src = sx.samples.data();
    double* dst = y.data() + k;
    for (std::size_t i = 0; i < limit; ++i) dst[i] += wk * src[i];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = d.samples[i] - y[i];
    acc += e * e;
  }
  return acc / static_cast<double>(n);
}

Waveform truncated_convolve(const Waveform& x, const FirFilter& h) {
  Waveform full = convolve_full(x, h);
  full.samples.resize(x.samples.size());
  return full;
}

}  // namespace

FirFilter pretrain_filter(const BandSpec& band, const PathModel& paths,
                          const PretrainConfig& config, PretrainInfo* info) {
  NoiseTrackSpec train_spec;
  train_spec.band = band;
  train_spec.duration_s = config.seconds;
  train_spec.amplitude = 1.0;
  train_spec.seed = config.seed;

  NoiseTrackSpec holdout_spec = train_spec;
  holdout_spec.duration_s = config.holdout_seconds;
  holdout_spec.seed = derive_seed(config.seed, "pretrain-holdout");

  const Waveform x = synth_track(train_spec, config.sample_rate_hz);
  const Waveform holdout = synth_track(holdout_spec, config.sample_rate_hz);

  Waveform d;
  {
    StreamingFir primary(paths.primary);
    d.sample_rate_hz = x.sample_rate_hz;
    d.samples.resize(x.samples.size());
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
      d.samples[i] = primary.step(x.samples[i]);
    }
  }

  double mu = config.mu0;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt, mu /= 2.0) {
    AdaptiveFilterState state(FirFilter::zeros(config.filter_taps), mu, 1e-6,
                              paths.secondary_estimate);
    StreamingFir secondary(paths.secondary);
    bool diverged = false;
    try {
      for (std::size_t i = 0; i < x.samples.size(); ++i) {
        fxlms_step(state, x.samples[i], d.samples[i], secondary);
      }
    } catch (const DivergenceError&) {
      diverged = true;
    }
    if (diverged) continue;

    FirFilter w = state.weights();
    const FixedRunResult check = run_fixed(w, holdout, paths);
    const std::vector<double> nr = noise_reduction_db(check.d, check.e, 1.0);
    const double final_nr = nr.empty() ? 0.0 : nr.back();
    if (final_nr >= config.min_nr_db) {
      if (info) {
        info->mu_used = mu;
        info->holdout_nr_db = final_nr;
        info->attempts = attempt + 1;
      }
      return w;
    }
  }
  throw PretrainError("pre-training failed for band [" +
                      std::to_string(band.low_hz) + ", " +
                      std::to_string(band.high_hz) + "] Hz");
}

ControlFilterBank build_bank(const PathModel& paths,
                             const PretrainConfig& config,
                             std::uint64_t master_seed) {
  ControlFilterBank bank;
  bank.bands = control_bands();
  bank.filters.reserve(bank.bands.size());
  bank.training_meta.reserve(bank.bands.size());
  for (std::size_t i = 0; i < bank.bands.size(); ++i) {
    PretrainConfig band_config = config;
    band_config.seed = derive_seed(master_seed, "pretrain-band", i);
    PretrainInfo result;
    try {
      bank.filters.push_back(
          pretrain_filter(bank.bands[i], paths, band_config, &result));
    } catch (const PretrainError& err) {
      throw PretrainError("band " + std::to_string(i) + ": " + err.what());
    }
    bank.training_meta.push_back(BandTrainingMeta{
        bank.bands[i], band_config.seed, result.mu_used, result.holdout_nr_db});
  }
  return bank;
}

std::vector<double> residual_powers(const Waveform& x,
                                    const ControlFilterBank& bank,
                                    const PathModel& paths) {
  const Waveform d = truncated_convolve(x, paths.primary);
  const Waveform sx = truncated_convolve(x, paths.secondary);
  std::vector<double> powers;
  powers.reserve(bank.filters.size());
  for (const FirFilter& w : bank.filters) {
    powers.push_back(residual_power(w, x, d, sx));
  }
  return powers;
}

int oracle_label(const Waveform& x, const ControlFilterBank& bank,
                 const PathModel& paths) {
  const std::vector<double> powers = residual_powers(x, bank, paths);
  int best = 0;
  for (int i = 1; i < static_cast<int>(powers.size()); ++i) {
    if (powers[i] < powers[best]) best = i;
  }
  return best;
}

void save_bank(const ControlFilterBank& bank,
               const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");

  const std::size_t taps = bank.filters.empty() ? 0 : bank.filters[0].length();
  io::write_magic(os, "ANCB");
  io::write_le<std::uint16_t>(os, 1);
  io::write_le<std::uint16_t>(os, static_cast<std::uint16_t>(bank.filters.size()));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(taps));
  for (const FirFilter& f : bank.filters) {
    if (f.length() != taps) throw FormatError("inconsistent tap counts in bank");
    for (double t : f.taps) io::write_f64(os, t);
  }

  nlohmann::json meta;
  for (const BandTrainingMeta& m : bank.training_meta) {
    meta["bands"].push_back({m.band.low_hz, m.band.high_hz});
    meta["seeds"].push_back(m.seed);
    meta["mus"].push_back(m.mu);
    meta["holdout_nr_db"].push_back(m.holdout_nr_db);
  }
  if (bank.training_meta.empty()) {
    for (const BandSpec& b : bank.bands) {
      meta["bands"].push_back({b.low_hz, b.high_hz});
    }
  }
  const std::string blob = meta.dump();
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(blob.size()));
  os.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  if (!os) throw FormatError("failed writing " + path.string());
}

ControlFilterBank load_bank(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  io::expect_magic(is, "ANCB", "control filter bank");
  const auto version = io::read_le<std::uint16_t>(is);
  if (version != 1) throw FormatError("unsupported bank version");
  const auto count = io::read_le<std::uint16_t>(is);
  const auto taps = io::read_le<std::uint32_t>(is);

  ControlFilterBank bank;
  bank.filters.resize(count);
  for (auto& f : bank.filters) {
    f.taps.resize(taps);
    for (double& t : f.taps) t = io::read_f64(is);
  }

  const auto blob_len = io::read_le<std::uint32_t>(is);
  std::string blob(blob_len, '\0');
  is.read(blob.data(), blob_len);
  if (!is) throw FormatError("truncated bank metadata");
  nlohmann::json meta = nlohmann::json::parse(blob, nullptr, false);
  if (meta.is_discarded() || !meta.contains("bands") ||
      meta["bands"].size() != count) {
    throw FormatError("bank metadata does not match filter count");
  }
  for (std::size_t i = 0; i < count; ++i) {
    bank.bands.push_back(
        BandSpec{meta["bands"][i][0].get<double>(), meta["bands"][i][1].get<double>()});
    BandTrainingMeta m;
    m.band = bank.bands.back();
    if (meta.contains("seeds") && meta["seeds"].size() == count) {
      m.seed = meta["seeds"][i].get<std::uint64_t>();
      m.mu = meta["mus"][i].get<double>();
      m.holdout_nr_db = meta["holdout_nr_db"][i].get<double>();
    }
    bank.training_meta.push_back(m);
  }
  return bank;
}

}  // namespace anc
