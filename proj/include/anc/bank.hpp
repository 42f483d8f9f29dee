#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "anc/adaptive.hpp"
#include "anc/dsp.hpp"
#include "anc/noise.hpp"

namespace anc {

struct PretrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PretrainConfig {
  double mu0 = 3.0e-6;         // initial FxLMS step
  int max_retries = 10;        // halvings on divergence / weak result
  double seconds = 30.0;       // training noise duration
  double holdout_seconds = 2.0;
  double min_nr_db = 5.0;      // held-out bound on the final second
  std::size_t filter_taps = 1024;
  std::uint64_t seed = 1;
  int sample_rate_hz = 16000;
};

struct PretrainInfo {
  double mu_used = 0.0;
  double holdout_nr_db = 0.0;
  int attempts = 0;
};

struct BandTrainingMeta {
  BandSpec band;
  std::uint64_t seed = 0;
  double mu = 0.0;
  double holdout_nr_db = 0.0;
};

/// The pre-trained control filters with their band metadata.
struct ControlFilterBank {
  std::vector<FirFilter> filters;
  std::vector<BandSpec> bands;
  std::vector<BandTrainingMeta> training_meta;
};

/// Trains one control filter with FxLMS on fresh band noise, halving
/// the step size on divergence. The result must reach min_nr_db on a
/// held-out track from the same band.
FirFilter pretrain_filter(const BandSpec& band, const PathModel& paths,
                          const PretrainConfig& config,
                          PretrainInfo* info = nullptr);

/// Pre-trains all of control_bands(); filter i pairs with band i.
ControlFilterBank build_bank(const PathModel& paths,
                             const PretrainConfig& config,
                             std::uint64_t master_seed);

/// Index of the filter with the lowest residual error power on x;
/// ties break to the lowest index.
int oracle_label(const Waveform& x, const ControlFilterBank& bank,
                 const PathModel& paths);

/// Residual error powers of every bank filter on x (the quantities
/// oracle_label minimizes).
std::vector<double> residual_powers(const Waveform& x,
                                    const ControlFilterBank& bank,
                                    const PathModel& paths);

void save_bank(const ControlFilterBank& bank, const std::filesystem::path& path);
ControlFilterBank load_bank(const std::filesystem::path& path);

}  // namespace anc
