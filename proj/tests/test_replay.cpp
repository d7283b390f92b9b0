#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "playpen/replay.hpp"

using namespace playpen;

namespace {

Transition make_transition(float tag, int obs_dim = 3, int act_dim = 2) {
  Transition t;
  t.obs.assign(obs_dim, tag);
  t.act.assign(act_dim, tag + 0.5f);
  t.next_obs.assign(obs_dim, tag + 1.0f);
  t.reward = tag * 10.0f;
  t.done = (static_cast<int>(tag) % 2 == 0) ? 1.0f : 0.0f;
  return t;
}

}  // namespace

TEST_CASE("ring buffer wraps and overwrites the oldest entries") {
  ReplayBuffer buf(3);
  CHECK(buf.empty());
  for (int i = 0; i < 5; ++i) buf.insert(make_transition(static_cast<float>(i)));
  CHECK(buf.size() == 3);
  // Slots 0 and 1 were overwritten by entries 3 and 4.
  CHECK(buf.at(0).reward == doctest::Approx(30.0f));
  CHECK(buf.at(1).reward == doctest::Approx(40.0f));
  CHECK(buf.at(2).reward == doctest::Approx(20.0f));
}

TEST_CASE("batch sampling mixes the requested prior fraction, prior columns first") {
  ReplayBuffer online(64), prior(64);
  for (int i = 0; i < 20; ++i) online.insert(make_transition(static_cast<float>(i)));
  for (int i = 0; i < 20; ++i) prior.insert(make_transition(static_cast<float>(100 + i)));

  Rng rng(3);
  Batch<double> b;
  sample_batch(online, prior, 8, 0.5, rng, b);
  CHECK(b.size() == 8);
  CHECK(b.obs.rows() == 3);
  CHECK(b.act.rows() == 2);
  for (int c = 0; c < 4; ++c) CHECK(b.reward(c) >= 1000.0);
  for (int c = 4; c < 8; ++c) CHECK(b.reward(c) < 1000.0);
}

TEST_CASE("batch sampling rounds the prior share") {
  ReplayBuffer online(8), prior(8);
  online.insert(make_transition(1.0f));
  prior.insert(make_transition(100.0f));
  Rng rng(1);
  Batch<double> b;
  sample_batch(online, prior, 5, 0.5, rng, b);
  int n_prior = 0;
  for (int c = 0; c < 5; ++c) {
    if (b.reward(c) >= 1000.0) ++n_prior;
  }
  CHECK(n_prior == 3);  // lround(2.5)
}

TEST_CASE("batch sampling falls back to the non-empty buffer") {
  ReplayBuffer online(8), prior(8);
  Rng rng(2);
  Batch<double> b;
  CHECK_THROWS_AS(sample_batch(online, prior, 4, 0.5, rng, b), ContractError);

  online.insert(make_transition(1.0f));
  sample_batch(online, prior, 4, 0.5, rng, b);
  for (int c = 0; c < 4; ++c) CHECK(b.reward(c) == doctest::Approx(10.0));

  ReplayBuffer online2(8), prior2(8);
  prior2.insert(make_transition(100.0f));
  sample_batch(online2, prior2, 4, 0.5, rng, b);
  for (int c = 0; c < 4; ++c) CHECK(b.reward(c) == doctest::Approx(1000.0));
}

TEST_CASE("batch sampling is deterministic for a fixed seed") {
  ReplayBuffer online(64), prior(64);
  for (int i = 0; i < 30; ++i) online.insert(make_transition(static_cast<float>(i)));
  for (int i = 0; i < 30; ++i) prior.insert(make_transition(static_cast<float>(100 + i)));
  Rng a(7), c(7);
  Batch<double> ba, bc;
  sample_batch(online, prior, 16, 0.25, a, ba);
  sample_batch(online, prior, 16, 0.25, c, bc);
  CHECK((ba.obs - bc.obs).norm() == 0.0);
  CHECK((ba.act - bc.act).norm() == 0.0);
  CHECK((ba.reward - bc.reward).norm() == 0.0);
}

TEST_CASE("batch carries transition fields into the right columns") {
  ReplayBuffer online(4), prior(4);
  Transition t;
  t.obs = {0.25f, -0.5f, 1.0f};
  t.act = {0.125f, -1.0f};
  t.next_obs = {2.0f, 3.0f, -4.0f};
  t.reward = 6.5f;
  t.done = 1.0f;
  online.insert(t);
  Rng rng(1);
  Batch<double> b;
  sample_batch(online, prior, 2, 0.0, rng, b);
  for (int c = 0; c < 2; ++c) {
    CHECK(b.obs(0, c) == 0.25);
    CHECK(b.obs(1, c) == -0.5);
    CHECK(b.next_obs(2, c) == -4.0);
    CHECK(b.act(1, c) == -1.0);
    CHECK(b.reward(c) == 6.5);
    CHECK(b.done(c) == 1.0);
  }
}

TEST_CASE("replay buffer round trips through disk exactly") {
  const std::string path = "replay_roundtrip.bin";
  ReplayBuffer buf(128);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    Transition t;
    for (int k = 0; k < 4; ++k) t.obs.push_back(static_cast<float>(rng.normal()));
    for (int k = 0; k < 2; ++k) t.act.push_back(static_cast<float>(rng.uniform(-1.0, 1.0)));
    for (int k = 0; k < 4; ++k) t.next_obs.push_back(static_cast<float>(rng.normal()));
    t.reward = static_cast<float>(rng.normal());
    t.done = rng.bernoulli(0.2) ? 1.0f : 0.0f;
    buf.insert(t);
  }
  buf.save(path);
  const ReplayBuffer loaded = ReplayBuffer::load(path);
  REQUIRE(loaded.size() == buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    CHECK(loaded.at(i).obs == buf.at(i).obs);
    CHECK(loaded.at(i).act == buf.at(i).act);
    CHECK(loaded.at(i).next_obs == buf.at(i).next_obs);
    CHECK(loaded.at(i).reward == buf.at(i).reward);
    CHECK(loaded.at(i).done == buf.at(i).done);
  }
  std::remove(path.c_str());
}

TEST_CASE("replay load rejects garbage") {
  const std::string path = "replay_garbage.bin";
  {
    std::ofstream f(path, std::ios::binary);
    f << "definitely not a replay file";
  }
  CHECK_THROWS_AS(ReplayBuffer::load(path), ContractError);
  CHECK_THROWS_AS(ReplayBuffer::load("replay_missing_file.bin"), ContractError);
  std::remove(path.c_str());
}
