#pragma once

#include "playpen/net.hpp"

namespace playpen {

/// Squashed-Gaussian policy head: two-layer trunk, mean and log-std heads,
/// tanh on the sampled pre-activation. Sampling takes the standard-normal
/// noise explicitly so tests (and the learner) control the randomness.
template <class S>
class GaussianPolicy {
 public:
  void init(int obs_dim, int act_dim, int hidden, double log_std_min, double log_std_max,
            Rng& rng) {
    act_dim_ = act_dim;
    log_std_min_ = static_cast<S>(log_std_min);
    log_std_max_ = static_cast<S>(log_std_max);
    trunk_.init(obs_dim, hidden, /*layer_norm=*/false, rng);
    mu_head_.init(hidden, act_dim, rng);
    log_std_head_.init(hidden, act_dim, rng);
  }

  /// Forward pass caching everything needed for backward_sample.
  void forward(const MatX<S>& obs) {
    const MatX<S>& h = trunk_.forward(obs);
    mu_head_.forward(h, mu_);
    log_std_head_.forward(h, log_std_raw_);
    log_std_ = log_std_raw_.cwiseMax(log_std_min_).cwiseMin(log_std_max_);
    std_ = log_std_.array().exp().matrix();
  }

  const MatX<S>& mu() const { return mu_; }
  const MatX<S>& log_std() const { return log_std_; }

  /// a = tanh(mu + std * eps); log-probability of a under the squashed
  /// Gaussian per column.
  void sample(const MatX<S>& eps, MatX<S>& actions, RowX<S>& log_prob) {
    eps_ = eps;
    u_ = mu_ + std_.cwiseProduct(eps_);
    a_ = u_.array().tanh().matrix();
    one_minus_a2_ = (S(1) - a_.array().square()).matrix();
    const S c = squash_eps();
    // log N(u; mu, std) = -0.5 eps^2 - log_std - 0.5 log(2 pi), summed over
    // action dims, minus the tanh volume correction.
    log_prob = (S(-0.5) * eps_.array().square() - log_std_.array() -
                S(0.5) * static_cast<S>(std::log(2.0 * kPi)) -
                (one_minus_a2_.array() + c).log())
                   .colwise()
                   .sum()
                   .matrix();
    actions = a_;
  }

  /// Tanh mean only (deterministic evaluation action).
  void mean_action(MatX<S>& actions) const { actions = mu_.array().tanh().matrix(); }

  /// Backward through the last sample() call. `dA` is the loss gradient at
  /// the squashed action, `dlogp` at the per-column log-probability.
  /// Accumulates parameter gradients.
  void backward_sample(const MatX<S>& dA, const RowX<S>& dlogp) {
    const S c = squash_eps();
    // d log_prob / d u = 2 a (1 - a^2) / (1 - a^2 + c), elementwise.
    MatX<S> dlp_du = (S(2) * a_.array() * one_minus_a2_.array() /
                      (one_minus_a2_.array() + c))
                         .matrix();
    // du = dA * (1 - a^2) + dlogp (broadcast) * dlp_du
    MatX<S> du = dA.cwiseProduct(one_minus_a2_) +
                 (dlp_du.array().rowwise() * dlogp.array()).matrix();
    // d log_prob / d log_std has the direct -1 term plus the path through u.
    MatX<S> dls = du.cwiseProduct(std_.cwiseProduct(eps_));
    dls.array().rowwise() -= dlogp.array();
    // Hard clamp: no gradient outside the window.
    dls = dls.cwiseProduct(((log_std_raw_.array() > log_std_min_) &&
                            (log_std_raw_.array() < log_std_max_))
                               .template cast<S>()
                               .matrix());

    MatX<S> dh_mu, dh_ls;
    mu_head_.backward(trunk_.output(), du, &dh_mu);
    log_std_head_.backward(trunk_.output(), dls, &dh_ls);
    dh_mu += dh_ls;
    trunk_.backward(dh_mu, nullptr);
  }

  void params(std::vector<Tensor<S>*>& out) {
    trunk_.params(out);
    mu_head_.params(out);
    log_std_head_.params(out);
  }

  int act_dim() const { return act_dim_; }
  static constexpr S squash_eps() { return static_cast<S>(1e-6); }

 private:
  int act_dim_ = 0;
  S log_std_min_ = S(-20), log_std_max_ = S(2);
  MlpTrunk<S> trunk_;
  Linear<S> mu_head_, log_std_head_;
  MatX<S> mu_, log_std_raw_, log_std_, std_, eps_, u_, a_, one_minus_a2_;
};

}  // namespace playpen
