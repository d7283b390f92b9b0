#include "playpen/replay.hpp"

#include <fstream>

namespace playpen {

namespace {
constexpr char kMagic[8] = {'P', 'P', 'R', 'E', 'P', 'L', 'Y', '1'};
}

void ReplayBuffer::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ContractError("cannot write replay file: " + path);
  f.write(kMagic, sizeof(kMagic));
  const std::uint64_t n = data_.size();
  const std::uint32_t obs_dim = n ? static_cast<std::uint32_t>(data_[0].obs.size()) : 0;
  const std::uint32_t act_dim = n ? static_cast<std::uint32_t>(data_[0].act.size()) : 0;
  f.write(reinterpret_cast<const char*>(&n), sizeof(n));
  f.write(reinterpret_cast<const char*>(&obs_dim), sizeof(obs_dim));
  f.write(reinterpret_cast<const char*>(&act_dim), sizeof(act_dim));
  for (const Transition& t : data_) {
    f.write(reinterpret_cast<const char*>(t.obs.data()), obs_dim * sizeof(float));
    f.write(reinterpret_cast<const char*>(t.act.data()), act_dim * sizeof(float));
    f.write(reinterpret_cast<const char*>(t.next_obs.data()), obs_dim * sizeof(float));
    f.write(reinterpret_cast<const char*>(&t.reward), sizeof(float));
    f.write(reinterpret_cast<const char*>(&t.done), sizeof(float));
  }
  if (!f) throw ContractError("short write on replay file: " + path);
}

ReplayBuffer ReplayBuffer::load(const std::string& path, std::size_t capacity) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ContractError("cannot open replay file: " + path);
  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::string(magic, 8) != std::string(kMagic, 8)) {
    throw ContractError("bad replay file header: " + path);
  }
  std::uint64_t n = 0;
  std::uint32_t obs_dim = 0, act_dim = 0;
  f.read(reinterpret_cast<char*>(&n), sizeof(n));
  f.read(reinterpret_cast<char*>(&obs_dim), sizeof(obs_dim));
  f.read(reinterpret_cast<char*>(&act_dim), sizeof(act_dim));
  if (!f) throw ContractError("truncated replay file: " + path);
  ReplayBuffer buf(capacity ? capacity : std::max<std::size_t>(n, 1));
  for (std::uint64_t i = 0; i < n; ++i) {
    Transition t;
    t.obs.resize(obs_dim);
    t.act.resize(act_dim);
    t.next_obs.resize(obs_dim);
    f.read(reinterpret_cast<char*>(t.obs.data()), obs_dim * sizeof(float));
    f.read(reinterpret_cast<char*>(t.act.data()), act_dim * sizeof(float));
    f.read(reinterpret_cast<char*>(t.next_obs.data()), obs_dim * sizeof(float));
    f.read(reinterpret_cast<char*>(&t.reward), sizeof(float));
    f.read(reinterpret_cast<char*>(&t.done), sizeof(float));
    if (!f) throw ContractError("truncated replay file: " + path);
    buf.insert(std::move(t));
  }
  return buf;
}

}  // namespace playpen
