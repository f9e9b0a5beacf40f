#include "qsi/simulate.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace qsi {

namespace {

TrialOutcome run_trial(std::uint64_t q, int m, int version, Stream rng) {
  const auto start = std::chrono::steady_clock::now();
  TrialOutcome out;
  const std::uint64_t key_seed = rng.next();
  const std::uint64_t respond_seed = rng.next();
  try {
    const KeyPair kp = keygen_user(q, m, version, key_seed);
    ResponderResult res = respond(kp.pub, respond_seed);
    out.attempts = res.diagnostics.attempts;
    out.rejections = res.diagnostics.rejections;
    const SharedKey mine = accept(kp.sec, res.msg);
    out.ok = true;
    out.agree = mine.j == res.key.j;
  } catch (const Error& e) {
    out.error = e.kind();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

std::size_t SimulationStats::completed() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.ok;
  return n;
}

std::size_t SimulationStats::agreed() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.ok && t.agree;
  return n;
}

std::size_t SimulationStats::errored() const { return trials.size() - completed(); }

std::map<ErrorKind, std::size_t> SimulationStats::errors() const {
  std::map<ErrorKind, std::size_t> out;
  for (const auto& t : trials)
    if (!t.ok) ++out[t.error];
  return out;
}

int SimulationStats::total_attempts() const {
  int n = 0;
  for (const auto& t : trials) n += t.attempts;
  return n;
}

double SimulationStats::rejection_rate(ErrorKind kind) const {
  int hits = 0;
  for (const auto& t : trials) {
    auto it = t.rejections.find(kind);
    if (it != t.rejections.end()) hits += it->second;
  }
  const int words = total_attempts();
  return words == 0 ? 0.0 : static_cast<double>(hits) / words;
}

double SimulationStats::total_seconds() const {
  double s = 0;
  for (const auto& t : trials) s += t.seconds;
  return s;
}

SimulationStats simulate(std::uint64_t q, int m, int version, std::size_t trials, std::uint64_t seed,
                         unsigned jobs) {
  validate_parameters(q, m, version);
  SimulationStats stats{q, m, version, std::vector<TrialOutcome>(trials)};
  const Stream root(seed, "qsi.simulate");
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < trials;) stats.trials[i] = run_trial(q, m, version, root.split("trial", i));
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return stats;
}

}  // namespace qsi
