#include "anc/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace anc {

StreamingFir::StreamingFir(FirFilter filter) { set_taps(filter); }

void StreamingFir::set_taps(const FirFilter& filter) {
  if (filter.length() == 0) throw std::invalid_argument("empty filter");
  if (n_ != filter.length()) {
    n_ = filter.length();
    buf_.assign(2 * n_, 0.0);
    pos_ = 0;
  }
  taps_rev_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) taps_rev_[i] = filter.taps[n_ - 1 - i];
}

void StreamingFir::reset() {
  std::fill(buf_.begin(), buf_.end(), 0.0);
  pos_ = 0;
}

FirFilter StreamingFir::filter() const {
  FirFilter f = FirFilter::zeros(n_);
  for (std::size_t i = 0; i < n_; ++i) f.taps[i] = taps_rev_[n_ - 1 - i];
  return f;
}

double StreamingFir::step(double x_n) {
  buf_[pos_] = x_n;
  buf_[pos_ + n_] = x_n;
  const double* window = buf_.data() + pos_ + 1;
  const double* taps = taps_rev_.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) acc += taps[i] * window[i];
  pos_ = (pos_ + 1 == n_) ? 0 : pos_ + 1;
  return acc;
}

FirFilter design_bandpass(double low_hz, double high_hz, std::size_t num_taps,
                          int sample_rate_hz) {
  const double nyquist = sample_rate_hz / 2.0;
  if (low_hz <= 0.0 || high_hz <= 0.0) {
    throw std::invalid_argument("band edges must be positive");
  }
  if (high_hz > nyquist) {
    throw std::invalid_argument("high edge exceeds Nyquist");
  }
  if (low_hz >= high_hz) {
    throw std::invalid_argument("low edge must be below high edge");
  }
  if (num_taps % 2 == 0) {
    throw std::invalid_argument("tap count must be odd");
  }
  if (num_taps < 31) {
    throw std::invalid_argument("tap count must be at least 31");
  }

  const double f1 = low_hz / sample_rate_hz;
  const double f2 = high_hz / sample_rate_hz;
  const std::size_t m = num_taps - 1;
  FirFilter h = FirFilter::zeros(num_taps);
  for (std::size_t i = 0; i < num_taps; ++i) {
    const double t = static_cast<double>(i) - static_cast<double>(m) / 2.0;
    double lp2, lp1;
    if (t == 0.0) {
      lp2 = 2.0 * f2;
      lp1 = 2.0 * f1;
    } else {
      lp2 = std::sin(2.0 * std::numbers::pi * f2 * t) / (std::numbers::pi * t);
      lp1 = std::sin(2.0 * std::numbers::pi * f1 * t) / (std::numbers::pi * t);
    }
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / m);
    h.taps[i] = (lp2 - lp1) * window;
  }

  // unit gain at the geometric band centre
  const double fc = std::sqrt(low_hz * high_hz) / sample_rate_hz;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < num_taps; ++i) {
    const double phi = 2.0 * std::numbers::pi * fc * i;
    re += h.taps[i] * std::cos(phi);
    im -= h.taps[i] * std::sin(phi);
  }
  const double gain = std::hypot(re, im);
  for (double& t : h.taps) t /= gain;
  return h;
}

Waveform convolve_full(const Waveform& x, const FirFilter& h) {
  if (x.samples.empty()) throw std::invalid_argument("empty input signal");
  const std::size_t n = x.samples.size();
  const std::size_t m = h.length();
  Waveform y;
  y.sample_rate_hz = x.sample_rate_hz;
  y.samples.assign(n + m - 1, 0.0);
  const double* xs = x.samples.data();
  double* ys = y.samples.data();
  for (std::size_t k = 0; k < m; ++k) {
    const double hk = h.taps[k];
    if (hk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) ys[i + k] += hk * xs[i];
  }
  return y;
}

Waveform min_max_normalize(const Waveform& frame) {
  if (frame.samples.empty()) throw std::invalid_argument("empty frame");
  const auto [lo_it, hi_it] =
      std::minmax_element(frame.samples.begin(), frame.samples.end());
  const double range = *hi_it - *lo_it;
  if (range == 0.0) {
    throw DegenerateInputError("constant frame has no range to normalize");
  }
  Waveform out;
  out.sample_rate_hz = frame.sample_rate_hz;
  out.samples.reserve(frame.samples.size());
  for (double s : frame.samples) out.samples.push_back(s / range);
  return out;
}

std::vector<double> noise_reduction_db(const Waveform& d, const Waveform& e,
                                       double window_s) {
  if (d.samples.size() != e.samples.size() ||
      d.sample_rate_hz != e.sample_rate_hz) {
    throw std::invalid_argument("signals must share length and sample rate");
  }
  if (window_s <= 0.0) throw std::invalid_argument("window must be positive");
  const std::size_t win =
      static_cast<std::size_t>(window_s * d.sample_rate_hz);
  if (win == 0) throw std::invalid_argument("window shorter than one sample");

  std::vector<double> out;
  const std::size_t count = d.samples.size() / win;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double pd = 0.0, pe = 0.0;
    for (std::size_t i = k * win; i < (k + 1) * win; ++i) {
      pd += d.samples[i] * d.samples[i];
      pe += e.samples[i] * e.samples[i];
    }
    if (pd == 0.0) {
      out.push_back(0.0);
    } else if (pe == 0.0) {
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      out.push_back(10.0 * std::log10(pd / pe));
    }
  }
  return out;
}

double magnitude_response_db(const FirFilter& h, double f_hz,
                             int sample_rate_hz) {
  const double f = f_hz / sample_rate_hz;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < h.length(); ++i) {
    const double phi = 2.0 * std::numbers::pi * f * i;
    re += h.taps[i] * std::cos(phi);
    im -= h.taps[i] * std::sin(phi);
  }
  return 20.0 * std::log10(std::hypot(re, im) + 1e-300);
}

}  // namespace anc
