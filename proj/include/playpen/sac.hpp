#pragma once

#include <fstream>
#include <iostream>
#include <numeric>

#include "playpen/critic.hpp"
#include "playpen/policy.hpp"
#include "playpen/replay.hpp"

namespace playpen {

struct LearnerConfig {
  int obs_dim = 0;
  int act_dim = 0;
  int hidden = 256;
  int ensemble_size = 10;
  int min_q_subset = 2;
  int batch_size = 256;
  int utd = 4;  // critic update rounds per environment step
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  double temp_lr = 1e-4;
  double gamma = 0.99;
  double polyak = 0.005;
  double init_temperature = 0.5;
  double target_entropy = -2.0;
  double prior_fraction = 0.5;
  bool critic_layer_norm = true;
  double log_std_min = -20.0;
  double log_std_max = 2.0;
  long learning_starts = 500;
};

/// Soft actor-critic with a randomized-ensemble critic: every critic trains
/// against the same target built from the minimum over a freshly sampled
/// subset of target critics, and the actor maximizes the subset minimum of
/// the online critics. All randomness flows through one internal stream in a
/// fixed draw order, so runs are reproducible bit for bit.
template <class S>
class SacLearner {
 public:
  SacLearner(const LearnerConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
    policy_.init(cfg.obs_dim, cfg.act_dim, cfg.hidden, cfg.log_std_min, cfg.log_std_max, rng_);
    critics_.init(cfg.obs_dim, cfg.act_dim, cfg.hidden, cfg.ensemble_size, cfg.critic_layer_norm,
                  rng_);
    log_alpha_.init(1, 1);
    log_alpha_.value(0, 0) = static_cast<S>(std::log(cfg.init_temperature));
    policy_.params(policy_params_);
    critics_.params(critic_params_);
    critic_adam_.lr = cfg.critic_lr;
    actor_adam_.lr = cfg.actor_lr;
    temp_adam_.lr = cfg.temp_lr;
  }

  double alpha() const { return std::exp(static_cast<double>(log_alpha_.value(0, 0))); }
  double log_alpha() const { return static_cast<double>(log_alpha_.value(0, 0)); }
  const LearnerConfig& config() const { return cfg_; }
  Rng& rng() { return rng_; }
  long total_updates() const { return total_updates_; }
  GaussianPolicy<S>& policy_net() { return policy_; }
  CriticEnsemble<S>& critic_net() { return critics_; }
  std::vector<Tensor<S>*>& policy_params() { return policy_params_; }
  std::vector<Tensor<S>*>& critic_params() { return critic_params_; }

  /// k distinct critic indices, partial Fisher-Yates over 0..n-1.
  std::vector<int> sample_subset() {
    std::vector<int> idx(cfg_.ensemble_size);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> out;
    for (int i = 0; i < cfg_.min_q_subset; ++i) {
      const int j = i + static_cast<int>(rng_.uniform_int(idx.size() - i));
      std::swap(idx[i], idx[j]);
      out.push_back(idx[i]);
    }
    return out;
  }

  MatX<S> draw_normal(int rows, int cols) {
    MatX<S> m(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) m(i, j) = static_cast<S>(rng_.normal());
    }
    return m;
  }

  /// TD targets: r + gamma (1-done) (min_i target Q_i(o', a') - alpha log pi(a'|o')).
  void compute_targets(const Batch<S>& batch, const std::vector<int>& subset,
                       const MatX<S>& next_eps, RowX<S>& y) {
    policy_.forward(batch.next_obs);
    policy_.sample(next_eps, next_actions_, next_logp_);
    concat(batch.next_obs, next_actions_, x2_);
    critics_.target_min(x2_, subset, tmin_);
    const S a = static_cast<S>(alpha());
    const S g = static_cast<S>(cfg_.gamma);
    y = batch.reward.array() +
        g * (S(1) - batch.done.array()) * (tmin_.array() - a * next_logp_.array());
  }

  /// Sum over the ensemble of per-critic MSE against the shared target.
  double critic_loss(const Batch<S>& batch, const std::vector<int>& subset,
                     const MatX<S>& next_eps) {
    RowX<S> y;
    compute_targets(batch, subset, next_eps, y);
    concat(batch.obs, batch.act, x_);
    double loss = 0.0;
    for (int i = 0; i < critics_.size(); ++i) {
      const MatX<S>& q = critics_.critic(i).forward(x_);
      loss += (q.row(0) - y).array().square().mean();
    }
    return loss;
  }

  /// Same as critic_loss but also fills critic parameter gradients.
  double critic_grads(const Batch<S>& batch, const std::vector<int>& subset,
                      const MatX<S>& next_eps) {
    RowX<S> y;
    compute_targets(batch, subset, next_eps, y);
    concat(batch.obs, batch.act, x_);
    zero_grads(critic_params_);
    const S inv_b = S(1) / static_cast<S>(batch.size());
    double loss = 0.0;
    for (int i = 0; i < critics_.size(); ++i) {
      const MatX<S>& q = critics_.critic(i).forward(x_);
      RowX<S> err = q.row(0) - y;
      loss += err.array().square().mean();
      MatX<S> dq = (S(2) * inv_b * err.array()).matrix();
      critics_.critic(i).backward(dq, nullptr);
    }
    return loss;
  }

  void critic_apply() {
    ++critic_adam_t_;
    adam_step_all(critic_params_, critic_adam_, critic_adam_t_);
    critics_.polyak_update(cfg_.polyak);
  }

  /// mean(alpha log pi - min_subset Q). Uses the online critics.
  double actor_loss(const Batch<S>& batch, const MatX<S>& eps, const std::vector<int>& subset) {
    policy_.forward(batch.obs);
    policy_.sample(eps, pi_actions_, pi_logp_);
    concat(batch.obs, pi_actions_, xpi_);
    RowX<S> qmin;
    bool first = true;
    for (int i : subset) {
      const MatX<S>& q = critics_.critic(i).forward(xpi_);
      if (first) {
        qmin = q.row(0);
        first = false;
      } else {
        qmin = qmin.cwiseMin(q.row(0));
      }
    }
    const S a = static_cast<S>(alpha());
    return ((a * pi_logp_.array()) - qmin.array()).mean();
  }

  /// Fills policy gradients; returns mean log-probability of the sampled
  /// actions (the statistic the temperature update consumes).
  double actor_grads(const Batch<S>& batch, const MatX<S>& eps, const std::vector<int>& subset) {
    policy_.forward(batch.obs);
    policy_.sample(eps, pi_actions_, pi_logp_);
    concat(batch.obs, pi_actions_, xpi_);
    const int b = batch.size();

    // Min over the subset with argmin bookkeeping for the backward routing.
    qs_.resize(subset.size());
    for (size_t k = 0; k < subset.size(); ++k) qs_[k] = critics_.critic(subset[k]).forward(xpi_);
    argmin_.assign(b, 0);
    for (int j = 0; j < b; ++j) {
      S best = qs_[0](0, j);
      for (size_t k = 1; k < subset.size(); ++k) {
        if (qs_[k](0, j) < best) {
          best = qs_[k](0, j);
          argmin_[j] = static_cast<int>(k);
        }
      }
    }

    zero_grads(policy_params_);
    const S inv_b = S(1) / static_cast<S>(b);
    // d loss / d a flows through the argmin critic only; critic parameters
    // themselves receive no gradient from the actor update.
    dxpi_sum_.setZero(cfg_.obs_dim + cfg_.act_dim, b);
    for (size_t k = 0; k < subset.size(); ++k) {
      dq_.setZero(1, b);
      bool any = false;
      for (int j = 0; j < b; ++j) {
        if (argmin_[j] == static_cast<int>(k)) {
          dq_(0, j) = -inv_b;
          any = true;
        }
      }
      if (!any) continue;
      // Each critic's forward caches are still valid: nothing else ran on
      // this critic since the qs_ loop above.
      critics_.critic(subset[k]).backward(dq_, &dxpi_, /*param_grads=*/false);
      dxpi_sum_ += dxpi_;
    }
    MatX<S> dA = dxpi_sum_.bottomRows(cfg_.act_dim);
    const S a = static_cast<S>(alpha());
    RowX<S> dlogp = RowX<S>::Constant(b, a * inv_b);
    policy_.backward_sample(dA, dlogp);
    return static_cast<double>(pi_logp_.mean());
  }

  void actor_apply() {
    ++actor_adam_t_;
    adam_step_all(policy_params_, actor_adam_, actor_adam_t_);
  }

  /// Gradient step on log alpha toward the entropy target.
  void temperature_update(double mean_logp) {
    const double grad = alpha() * (-mean_logp - cfg_.target_entropy);
    log_alpha_.grad(0, 0) = static_cast<S>(grad);
    ++temp_adam_t_;
    adam_step(log_alpha_, temp_adam_, temp_adam_t_);
  }

  /// One environment step's worth of training: `utd` critic rounds, one actor
  /// round, one temperature step. Draw order is fixed.
  void update(const ReplayBuffer& online, const ReplayBuffer& prior) {
    for (int r = 0; r < cfg_.utd; ++r) {
      sample_batch(online, prior, cfg_.batch_size, cfg_.prior_fraction, rng_, batch_);
      const auto subset = sample_subset();
      const MatX<S> next_eps = draw_normal(cfg_.act_dim, cfg_.batch_size);
      critic_grads(batch_, subset, next_eps);
      critic_apply();
    }
    sample_batch(online, prior, cfg_.batch_size, cfg_.prior_fraction, rng_, batch_);
    const MatX<S> eps = draw_normal(cfg_.act_dim, cfg_.batch_size);
    const auto subset = sample_subset();
    const double mean_logp = actor_grads(batch_, eps, subset);
    actor_apply();
    temperature_update(mean_logp);
    ++total_updates_;
  }

  /// Policy action for one observation; `stochastic` draws through `rng`.
  std::vector<double> act(const std::vector<float>& obs, bool stochastic, Rng& rng) {
    MatX<S> o(cfg_.obs_dim, 1);
    for (int i = 0; i < cfg_.obs_dim; ++i) o(i, 0) = static_cast<S>(obs[i]);
    policy_.forward(o);
    MatX<S> a;
    if (stochastic) {
      MatX<S> eps(cfg_.act_dim, 1);
      for (int i = 0; i < cfg_.act_dim; ++i) eps(i, 0) = static_cast<S>(rng.normal());
      RowX<S> lp;
      policy_.sample(eps, a, lp);
    } else {
      policy_.mean_action(a);
    }
    std::vector<double> out(cfg_.act_dim);
    for (int i = 0; i < cfg_.act_dim; ++i) out[i] = static_cast<double>(a(i, 0));
    return out;
  }

  void save(std::ostream& os) const {
    const char magic[8] = {'P', 'P', 'S', 'A', 'C', '0', '1', '\0'};
    os.write(magic, sizeof(magic));
    const std::uint32_t scalar = sizeof(S);
    write_pod(os, scalar);
    write_pod(os, static_cast<std::int32_t>(cfg_.obs_dim));
    write_pod(os, static_cast<std::int32_t>(cfg_.act_dim));
    write_pod(os, static_cast<std::int32_t>(cfg_.hidden));
    write_pod(os, static_cast<std::int32_t>(cfg_.ensemble_size));
    write_pod(os, critic_adam_t_);
    write_pod(os, actor_adam_t_);
    write_pod(os, temp_adam_t_);
    write_pod(os, total_updates_);
    write_tensor(os, log_alpha_);
    auto* self = const_cast<SacLearner*>(this);
    std::vector<Tensor<S>*> all;
    self->policy_.params(all);
    self->critics_.params(all);
    self->critics_.target_params(all);
    for (const auto* t : all) write_tensor(os, *t);
    const std::string r = rng_.serialize();
    const std::uint64_t len = r.size();
    write_pod(os, len);
    os.write(r.data(), static_cast<std::streamsize>(len));
    if (!os) throw ContractError("checkpoint write failed");
  }

  void load(std::istream& is) {
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::string(magic, 8) != std::string("PPSAC01\0", 8)) {
      throw ContractError("bad checkpoint header");
    }
    std::uint32_t scalar = 0;
    read_pod(is, scalar);
    if (scalar != sizeof(S)) throw ContractError("checkpoint scalar width mismatch");
    std::int32_t obs_dim, act_dim, hidden, ensemble;
    read_pod(is, obs_dim);
    read_pod(is, act_dim);
    read_pod(is, hidden);
    read_pod(is, ensemble);
    if (obs_dim != cfg_.obs_dim || act_dim != cfg_.act_dim || hidden != cfg_.hidden ||
        ensemble != cfg_.ensemble_size) {
      throw ContractError("checkpoint shape mismatch");
    }
    read_pod(is, critic_adam_t_);
    read_pod(is, actor_adam_t_);
    read_pod(is, temp_adam_t_);
    read_pod(is, total_updates_);
    read_tensor(is, log_alpha_);
    std::vector<Tensor<S>*> all;
    policy_.params(all);
    critics_.params(all);
    critics_.target_params(all);
    for (auto* t : all) read_tensor(is, *t);
    std::uint64_t len = 0;
    read_pod(is, len);
    std::string r(len, '\0');
    is.read(r.data(), static_cast<std::streamsize>(len));
    if (!is) throw ContractError("truncated checkpoint");
    rng_ = Rng::deserialize(r);
  }

  void save_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ContractError("cannot write checkpoint: " + path);
    save(f);
  }

  void load_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ContractError("cannot open checkpoint: " + path);
    load(f);
  }

 private:
  static void concat(const MatX<S>& top, const MatX<S>& bottom, MatX<S>& out) {
    out.resize(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
  }

  template <class T>
  static void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  template <class T>
  static void read_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
  }
  static void write_tensor(std::ostream& os, const Tensor<S>& t) {
    const std::int64_t r = t.value.rows(), c = t.value.cols();
    write_pod(os, r);
    write_pod(os, c);
    os.write(reinterpret_cast<const char*>(t.value.data()),
             static_cast<std::streamsize>(sizeof(S) * r * c));
    os.write(reinterpret_cast<const char*>(t.m.data()),
             static_cast<std::streamsize>(sizeof(S) * r * c));
    os.write(reinterpret_cast<const char*>(t.v.data()),
             static_cast<std::streamsize>(sizeof(S) * r * c));
  }
  static void read_tensor(std::istream& is, Tensor<S>& t) {
    std::int64_t r = 0, c = 0;
    read_pod(is, r);
    read_pod(is, c);
    if (r != t.value.rows() || c != t.value.cols()) {
      throw ContractError("checkpoint tensor shape mismatch");
    }
    is.read(reinterpret_cast<char*>(t.value.data()),
            static_cast<std::streamsize>(sizeof(S) * r * c));
    is.read(reinterpret_cast<char*>(t.m.data()),
            static_cast<std::streamsize>(sizeof(S) * r * c));
    is.read(reinterpret_cast<char*>(t.v.data()),
            static_cast<std::streamsize>(sizeof(S) * r * c));
  }

  LearnerConfig cfg_;
  Rng rng_;
  GaussianPolicy<S> policy_;
  CriticEnsemble<S> critics_;
  Tensor<S> log_alpha_;
  AdamConfig critic_adam_, actor_adam_, temp_adam_;
  long critic_adam_t_ = 0, actor_adam_t_ = 0, temp_adam_t_ = 0;
  long total_updates_ = 0;
  std::vector<Tensor<S>*> policy_params_, critic_params_;

  // Workspaces.
  Batch<S> batch_;
  MatX<S> next_actions_, x2_, x_, pi_actions_, xpi_, dxpi_, dxpi_sum_, dq_;
  RowX<S> next_logp_, tmin_, pi_logp_;
  std::vector<MatX<S>> qs_;
  std::vector<int> argmin_;
};

}  // namespace playpen
