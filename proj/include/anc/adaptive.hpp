#pragma once

#include <cstddef>
#include <vector>

#include "anc/dsp.hpp"

namespace anc {

/// One control-loop step: residual, anti-noise after the secondary
/// path, and the normalization scalar.
struct ControlStepOutput {
  double e_n = 0.0;
  double y_n = 0.0;
  double gamma = 0.0;
};

/// Mutable state of a filtered-reference adaptive controller: the
/// control filter, the reference and filtered-reference histories, and
/// the secondary-path-estimate stream.
class AdaptiveFilterState {
 public:
  AdaptiveFilterState(FirFilter w, double mu, double beta,
                      const FirFilter& s_hat);

  /// Replaces the control filter, preserving signal histories.
  void install_weights(const FirFilter& w);

  FirFilter weights() const;
  double mu() const { return mu_; }
  double beta() const { return beta_; }
  std::size_t length() const { return n_; }
  std::size_t samples_processed() const { return count_; }

  /// Histories aligned with weight indices: element k corresponds to
  /// the input k samples ago.
  std::vector<double> x_history() const;
  std::vector<double> r_history() const;

 private:
  friend ControlStepOutput fxnlms_step(AdaptiveFilterState&, double, double,
                                       StreamingFir&, bool);
  friend ControlStepOutput fxlms_step(AdaptiveFilterState&, double, double,
                                      StreamingFir&);

  ControlStepOutput step_impl(double x_n, double d_n,
                              StreamingFir& secondary, bool adapt,
                              bool normalized);
  void check_divergence(double value);

  std::vector<double> w_rev_;          // weights, reversed
  std::vector<double> xbuf_, rbuf_;    // doubled rings, shared position
  std::size_t n_;
  std::size_t pos_ = 0;
  double mu_;
  double beta_;
  StreamingFir s_hat_;
  std::size_t count_ = 0;
};

/// FxNLMS step: u = w.x, y = secondary(u), e = d - y, r = s_hat(x);
/// if adapt, w += mu * e * r_line / (beta + r_line.r_line). The update
/// uses the pre-update error.
ControlStepOutput fxnlms_step(AdaptiveFilterState& state, double x_n,
                              double d_n, StreamingFir& secondary, bool adapt);

/// FxLMS step: same pipeline with w += mu * e * r_line.
ControlStepOutput fxlms_step(AdaptiveFilterState& state, double x_n,
                             double d_n, StreamingFir& secondary);

struct FixedRunResult {
  Waveform e;
  Waveform d;
};

/// Streams x through primary path and fixed control filter w
/// (no adaptation); returns residual and disturbance traces.
FixedRunResult run_fixed(const FirFilter& w, const Waveform& x,
                         const PathModel& paths);

}  // namespace anc
