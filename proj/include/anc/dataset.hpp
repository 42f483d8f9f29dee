#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "anc/bank.hpp"
#include "anc/noise.hpp"

namespace anc {

struct DatasetEntry {
  NoiseTrackSpec spec;
  std::uint8_t label = 0;
  std::vector<float> frame;  // min-max-normalized samples
};

struct DatasetCounts {
  std::size_t train = 6000;
  std::size_t val = 500;
  std::size_t test = 500;

  std::size_t total() const { return train + val + test; }
};

struct DatasetRandomization {
  double amplitude_min = 0.25;
  double amplitude_max = 1.0;
  double snr_min_db = 10.0;
  double snr_max_db = 40.0;
};

/// Labeled frames split train/val/test, stored in that order.
struct LabeledDataset {
  std::vector<DatasetEntry> entries;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
  std::size_t test_count = 0;

  std::span<const DatasetEntry> train() const {
    return {entries.data(), train_count};
  }
  std::span<const DatasetEntry> val() const {
    return {entries.data() + train_count, val_count};
  }
  std::span<const DatasetEntry> test() const {
    return {entries.data() + train_count + val_count, test_count};
  }
};

/// Synthesizes tracks with randomized band, amplitude and background
/// SNR, labels them with oracle_label, and stores the min-max
/// normalized frames. Deterministic per master_seed.
LabeledDataset generate_dataset(const ControlFilterBank& bank,
                                const PathModel& paths,
                                const DatasetCounts& counts,
                                const DatasetRandomization& ranges,
                                std::uint64_t master_seed,
                                int sample_rate_hz = 16000);

void save_dataset(const LabeledDataset& dataset,
                  const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

}  // namespace anc
