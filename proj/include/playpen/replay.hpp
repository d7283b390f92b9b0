#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "playpen/net.hpp"
#include "playpen/rng.hpp"
#include "playpen/world.hpp"

namespace playpen {

struct Transition {
  std::vector<float> obs;
  std::vector<float> act;
  std::vector<float> next_obs;
  float reward = 0.0f;
  float done = 0.0f;  // 1 only on true termination, not on timeout
};

/// Fixed-capacity ring buffer.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void insert(Transition t) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(t));
    } else {
      data_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
  }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return data_[i]; }

  void save(const std::string& path) const;
  static ReplayBuffer load(const std::string& path, std::size_t capacity = 0);

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> data_;
};

template <class S>
struct Batch {
  MatX<S> obs;       // obs_dim x B
  MatX<S> act;       // act_dim x B
  MatX<S> next_obs;  // obs_dim x B
  RowX<S> reward;    // 1 x B
  RowX<S> done;      // 1 x B
  int size() const { return static_cast<int>(obs.cols()); }
};

/// Symmetric sampling: `prior_fraction` of the batch from the prior buffer
/// (rounded), the rest from the online buffer, prior columns first. Falls back
/// to whichever buffer is non-empty; throws ContractError when both are empty.
template <class S>
void sample_batch(const ReplayBuffer& online, const ReplayBuffer& prior, int batch_size,
                  double prior_fraction, Rng& rng, Batch<S>& out) {
  if (online.empty() && prior.empty()) {
    throw ContractError("sample_batch: both buffers are empty");
  }
  int n_prior = 0;
  if (prior.empty()) {
    n_prior = 0;
  } else if (online.empty()) {
    n_prior = batch_size;
  } else {
    n_prior = static_cast<int>(std::lround(batch_size * prior_fraction));
  }

  const Transition& probe = prior.empty() ? online.at(0) : prior.at(0);
  const int obs_dim = static_cast<int>(probe.obs.size());
  const int act_dim = static_cast<int>(probe.act.size());
  out.obs.resize(obs_dim, batch_size);
  out.act.resize(act_dim, batch_size);
  out.next_obs.resize(obs_dim, batch_size);
  out.reward.resize(batch_size);
  out.done.resize(batch_size);

  auto put = [&](int col, const Transition& t) {
    for (int i = 0; i < obs_dim; ++i) {
      out.obs(i, col) = static_cast<S>(t.obs[i]);
      out.next_obs(i, col) = static_cast<S>(t.next_obs[i]);
    }
    for (int i = 0; i < act_dim; ++i) out.act(i, col) = static_cast<S>(t.act[i]);
    out.reward(col) = static_cast<S>(t.reward);
    out.done(col) = static_cast<S>(t.done);
  };

  for (int c = 0; c < n_prior; ++c) put(c, prior.at(rng.uniform_int(prior.size())));
  for (int c = n_prior; c < batch_size; ++c) put(c, online.at(rng.uniform_int(online.size())));
}

}  // namespace playpen
