#include "anc/dataset.hpp"

#include <cmath>
#include <fstream>

#include "anc/io.hpp"
#include "anc/rng.hpp"

namespace anc {

LabeledDataset generate_dataset(const ControlFilterBank& bank,
                                const PathModel& paths,
                                const DatasetCounts& counts,
                                const DatasetRandomization& ranges,
                                std::uint64_t master_seed,
                                int sample_rate_hz) {
  if (counts.train == 0 || counts.val == 0 || counts.test == 0) {
    throw std::invalid_argument("all split sizes must be positive");
  }
  const std::vector<BandSpec> bands = control_bands();

  LabeledDataset out;
  out.train_count = counts.train;
  out.val_count = counts.val;
  out.test_count = counts.test;
  out.entries.resize(counts.total());

  for (std::size_t i = 0; i < counts.total(); ++i) {
    RngStream rng(derive_seed(master_seed, "dataset-entry", i));
    DatasetEntry& entry = out.entries[i];
    entry.spec.band = bands[rng.uniform_int(static_cast<int>(bands.size()))];
    entry.spec.duration_s = 1.0;
    entry.spec.amplitude = rng.uniform(ranges.amplitude_min, ranges.amplitude_max);
    entry.spec.background_snr_db = rng.uniform(ranges.snr_min_db, ranges.snr_max_db);
    entry.spec.seed = rng.next_u64();

    const Waveform x = synth_track(entry.spec, sample_rate_hz);
    entry.label = static_cast<std::uint8_t>(oracle_label(x, bank, paths));

    entry.frame.resize(x.samples.size());
    try {
      const Waveform norm = min_max_normalize(x);
      for (std::size_t k = 0; k < norm.samples.size(); ++k) {
        entry.frame[k] = static_cast<float>(norm.samples[k]);
      }
    } catch (const DegenerateInputError&) {
      std::fill(entry.frame.begin(), entry.frame.end(), 0.0f);
    }
  }
  return out;
}

void save_dataset(const LabeledDataset& dataset,
                  const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");

  const std::size_t frame_len =
      dataset.entries.empty() ? 0 : dataset.entries[0].frame.size();
  io::write_magic(os, "ANCD");
  io::write_le<std::uint16_t>(os, 1);
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(dataset.train_count));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(dataset.val_count));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(dataset.test_count));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(frame_len));
  for (const DatasetEntry& e : dataset.entries) {
    if (e.frame.size() != frame_len) {
      throw FormatError("inconsistent frame lengths in dataset");
    }
    io::write_f64(os, e.spec.band.low_hz);
    io::write_f64(os, e.spec.band.high_hz);
    io::write_f64(os, e.spec.duration_s);
    io::write_f64(os, e.spec.amplitude);
    io::write_f64(os, e.spec.background_snr_db);
    io::write_le<std::uint64_t>(os, e.spec.seed);
    io::write_le<std::uint8_t>(os, e.label);
    for (float v : e.frame) io::write_f32(os, v);
  }
  if (!os) throw FormatError("failed writing " + path.string());
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  io::expect_magic(is, "ANCD", "dataset");
  const auto version = io::read_le<std::uint16_t>(is);
  if (version != 1) throw FormatError("unsupported dataset version");

  LabeledDataset out;
  out.train_count = io::read_le<std::uint32_t>(is);
  out.val_count = io::read_le<std::uint32_t>(is);
  out.test_count = io::read_le<std::uint32_t>(is);
  const auto frame_len = io::read_le<std::uint32_t>(is);

  const std::size_t total = out.train_count + out.val_count + out.test_count;
  out.entries.resize(total);
  for (DatasetEntry& e : out.entries) {
    e.spec.band.low_hz = io::read_f64(is);
    e.spec.band.high_hz = io::read_f64(is);
    e.spec.duration_s = io::read_f64(is);
    e.spec.amplitude = io::read_f64(is);
    e.spec.background_snr_db = io::read_f64(is);
    e.spec.seed = io::read_le<std::uint64_t>(is);
    e.label = io::read_le<std::uint8_t>(is);
    if (e.label > 14) throw FormatError("label out of range in dataset");
    e.frame.resize(frame_len);
    for (float& v : e.frame) v = io::read_f32(is);
  }
  return out;
}

}  // namespace anc
