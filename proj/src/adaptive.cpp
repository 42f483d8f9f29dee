#include "anc/adaptive.hpp"

#include <cmath>
#include <stdexcept>

namespace anc {

AdaptiveFilterState::AdaptiveFilterState(FirFilter w, double mu, double beta,
                                         const FirFilter& s_hat)
    : n_(w.length()), mu_(mu), beta_(beta), s_hat_(s_hat) {
  if (n_ == 0) throw std::invalid_argument("empty control filter");
  if (mu_ <= 0.0 || beta_ <= 0.0) {
    throw std::invalid_argument("mu and beta must be positive");
  }
  w_rev_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) w_rev_[i] = w.taps[n_ - 1 - i];
  xbuf_.assign(2 * n_, 0.0);
  rbuf_.assign(2 * n_, 0.0);
}

void AdaptiveFilterState::install_weights(const FirFilter& w) {
  if (w.length() != n_) throw std::invalid_argument("weight length mismatch");
  for (std::size_t i = 0; i < n_; ++i) w_rev_[i] = w.taps[n_ - 1 - i];
}

FirFilter AdaptiveFilterState::weights() const {
  FirFilter w = FirFilter::zeros(n_);
  for (std::size_t i = 0; i < n_; ++i) w.taps[i] = w_rev_[n_ - 1 - i];
  return w;
}

std::vector<double> AdaptiveFilterState::x_history() const {
  std::vector<double> h(n_);
  // window [pos+1, pos+n] holds ascending time; element k of the
  // history is the input k samples ago
  for (std::size_t k = 0; k < n_; ++k) h[k] = xbuf_[pos_ + n_ - k];
  return h;
}

std::vector<double> AdaptiveFilterState::r_history() const {
  std::vector<double> h(n_);
  for (std::size_t k = 0; k < n_; ++k) h[k] = rbuf_[pos_ + n_ - k];
  return h;
}

void AdaptiveFilterState::check_divergence(double value) {
  if (!std::isfinite(value)) {
    throw DivergenceError("adaptive filter diverged", count_);
  }
}

ControlStepOutput AdaptiveFilterState::step_impl(double x_n, double d_n,
                                                 StreamingFir& secondary,
                                                 bool adapt, bool normalized) {
  xbuf_[pos_] = x_n;
  xbuf_[pos_ + n_] = x_n;
  const double* xwin = xbuf_.data() + pos_ + 1;

  double u = 0.0;
  for (std::size_t i = 0; i < n_; ++i) u += w_rev_[i] * xwin[i];

  const double y = secondary.step(u);
  const double e = d_n - y;

  const double r = s_hat_.step(x_n);
  rbuf_[pos_] = r;
  rbuf_[pos_ + n_] = r;
  const double* rwin = rbuf_.data() + pos_ + 1;

  double gamma = beta_;
  for (std::size_t i = 0; i < n_; ++i) gamma += rwin[i] * rwin[i];

  check_divergence(e);
  if (adapt) {
    const double c = normalized ? mu_ * e / gamma : mu_ * e;
    check_divergence(c);
    for (std::size_t i = 0; i < n_; ++i) w_rev_[i] += c * rwin[i];
    if (count_ % 1024 == 1023) {
      for (double w : w_rev_) check_divergence(w);
    }
  }

  pos_ = (pos_ + 1 == n_) ? 0 : pos_ + 1;
  ++count_;
  return ControlStepOutput{e, y, gamma};
}

ControlStepOutput fxnlms_step(AdaptiveFilterState& state, double x_n,
                              double d_n, StreamingFir& secondary,
                              bool adapt) {
  return state.step_impl(x_n, d_n, secondary, adapt, true);
}

ControlStepOutput fxlms_step(AdaptiveFilterState& state, double x_n,
                             double d_n, StreamingFir& secondary) {
  return state.step_impl(x_n, d_n, secondary, true, false);
}

FixedRunResult run_fixed(const FirFilter& w, const Waveform& x,
                         const PathModel& paths) {
  AdaptiveFilterState state(w, 1e-3, 1e-6, paths.secondary_estimate);
  StreamingFir primary(paths.primary);
  StreamingFir secondary(paths.secondary);

  FixedRunResult out;
  out.e.sample_rate_hz = x.sample_rate_hz;
  out.d.sample_rate_hz = x.sample_rate_hz;
  out.e.samples.resize(x.samples.size());
  out.d.samples.resize(x.samples.size());
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    const double d_n = primary.step(x.samples[i]);
    const ControlStepOutput step =
        fxnlms_step(state, x.samples[i], d_n, secondary, false);
    out.d.samples[i] = d_n;
    out.e.samples[i] = step.e_n;
  }
  return out;
}

}  // namespace anc
