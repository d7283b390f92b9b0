#pragma once

#include "playpen/net.hpp"

namespace playpen {

/// Scalar Q-network over concatenated observation and action.
template <class S>
class Critic {
 public:
  void init(int obs_dim, int act_dim, int hidden, bool layer_norm, Rng& rng) {
    trunk_.init(obs_dim + act_dim, hidden, layer_norm, rng);
    head_.init(hidden, 1, rng);
  }

  /// Returns Q as a 1 x B row.
  const MatX<S>& forward(const MatX<S>& x) {
    head_.forward(trunk_.forward(x), q_);
    return q_;
  }

  /// `dq` is 1 x B. Optionally emits the gradient at the input (for actor
  /// updates through the action); param_grads=false skips parameter
  /// accumulation entirely.
  void backward(const MatX<S>& dq, MatX<S>* dx, bool param_grads = true) {
    head_.backward(trunk_.output(), dq, &dh_, param_grads);
    trunk_.backward(dh_, dx, param_grads);
  }

  void params(std::vector<Tensor<S>*>& out) {
    trunk_.params(out);
    head_.params(out);
  }

 private:
  MlpTrunk<S> trunk_;
  Linear<S> head_;
  MatX<S> q_, dh_;
};

/// Ensemble of independent critics plus slow-moving target copies.
template <class S>
class CriticEnsemble {
 public:
  void init(int obs_dim, int act_dim, int hidden, int n, bool layer_norm, Rng& rng) {
    critics_.resize(n);
    for (auto& c : critics_) c.init(obs_dim, act_dim, hidden, layer_norm, rng);
    targets_ = critics_;  // start identical
  }

  int size() const { return static_cast<int>(critics_.size()); }
  Critic<S>& critic(int i) { return critics_[i]; }
  Critic<S>& target(int i) { return targets_[i]; }

  /// Rowwise minimum of the target critics in `subset` at input x.
  void target_min(const MatX<S>& x, const std::vector<int>& subset, RowX<S>& out) {
    bool first = true;
    for (int i : subset) {
      const MatX<S>& q = targets_[i].forward(x);
      if (first) {
        out = q.row(0);
        first = false;
      } else {
        out = out.cwiseMin(q.row(0));
      }
    }
  }

  void polyak_update(double tau) {
    const S t = static_cast<S>(tau);
    std::vector<Tensor<S>*> src, dst;
    for (auto& c : critics_) c.params(src);
    for (auto& c : targets_) c.params(dst);
    for (size_t i = 0; i < src.size(); ++i) {
      dst[i]->value = (S(1) - t) * dst[i]->value + t * src[i]->value;
    }
  }

  void params(std::vector<Tensor<S>*>& out) {
    for (auto& c : critics_) c.params(out);
  }
  void target_params(std::vector<Tensor<S>*>& out) {
    for (auto& c : targets_) c.params(out);
  }

 private:
  std::vector<Critic<S>> critics_;
  std::vector<Critic<S>> targets_;
};

}  // namespace playpen
