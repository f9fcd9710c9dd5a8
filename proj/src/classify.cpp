#include "classify.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "acspec/errors.hpp"

namespace acspec::detail {

namespace {

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

struct WorkerState {
  std::unordered_map<std::string, std::uint64_t> first_index;
  std::unordered_map<std::string, std::vector<std::uint64_t>> members;
};

}  // namespace

ClassifyResult classify_terms(int n, Universe universe, const KeyEngineFactory& factory,
                              const ClassifyOptions& options) {
  std::vector<TermTree> shapes = enumerate_bracketings(n);
  const bool full = universe == Universe::full_linear_terms;
  const std::uint64_t perms = full ? factorial_u64(n) : 1;
  ClassifyResult result;
  result.universe_size = shapes.size() * perms;
  if (options.collect_members && result.universe_size > options.member_limit)
    throw SizeError("class materialization capped at " + std::to_string(options.member_limit) +
                    " terms; universe has " + std::to_string(result.universe_size));

  const int jobs = std::clamp(options.jobs, 1, 64);
  const int workers = std::min<int>(jobs, static_cast<int>(shapes.size()));
  std::vector<WorkerState> states(static_cast<std::size_t>(workers));

  auto run_range = [&](int worker, std::size_t lo, std::size_t hi) {
    WorkerState& state = states[static_cast<std::size_t>(worker)];
    std::unique_ptr<KeyEngine> engine = factory();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<int> leaves;
    std::string key;
    for (std::size_t b = lo; b < hi; ++b) {
      engine->begin_bracketing(shapes[b], b);
      std::uint64_t index = b * perms;
      std::iota(perm.begin(), perm.end(), 1);
      do {
        key.clear();
        engine->key_for(perm, key);
        auto [it, inserted] = state.first_index.emplace(key, index);
        if (!inserted && index < it->second) it->second = index;
        if (options.collect_members) state.members[key].push_back(index);
        ++index;
      } while (full && std::next_permutation(perm.begin(), perm.end()));
    }
  };

  if (workers <= 1) {
    run_range(0, 0, shapes.size());
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const std::size_t chunk = (shapes.size() + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      std::size_t lo = static_cast<std::size_t>(w) * chunk;
      std::size_t hi = std::min(shapes.size(), lo + chunk);
      threads.emplace_back(run_range, w, lo, hi);
    }
    for (std::thread& t : threads) t.join();
  }

  // Deterministic merge: min-first-index per key; member lists concatenate
  // in worker order, which is ascending by construction.
  std::unordered_map<std::string, std::uint64_t> merged;
  std::unordered_map<std::string, std::vector<std::uint64_t>> merged_members;
  for (WorkerState& state : states) {
    for (auto& [key, idx] : state.first_index) {
      auto [it, inserted] = merged.emplace(key, idx);
      if (!inserted && idx < it->second) it->second = idx;
    }
    if (options.collect_members) {
      for (auto& [key, list] : state.members) {
        auto& dst = merged_members[key];
        dst.insert(dst.end(), list.begin(), list.end());
      }
    }
  }

  result.class_count = merged.size();
  std::vector<std::pair<std::uint64_t, const std::string*>> order;
  order.reserve(merged.size());
  for (const auto& [key, idx] : merged) order.emplace_back(idx, &key);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  result.firsts.reserve(order.size());
  for (const auto& [idx, key] : order) {
    result.firsts.push_back(idx);
    if (options.collect_members) result.members.push_back(std::move(merged_members[*key]));
  }
  return result;
}

}  // namespace acspec::detail
