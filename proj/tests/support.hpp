#pragma once

// Shared helpers for the test binaries: fixture loading, a random net
// generator and a brute-force reachability enumerator that does not use the
// library's exploration code.

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "roc/alignment.hpp"
#include "roc/casebase.hpp"
#include "roc/dsl.hpp"
#include "roc/goals.hpp"
#include "roc/net.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(ROC_FIXTURE_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(ROC_GOLDEN_DIR) + "/" + name; }
inline std::string data_path(const std::string& name) { return std::string(ROC_TEST_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline roc::ProcessModel process(const std::string& name) {
  return roc::parse_process(read_file(fixture_path(name)), name);
}
inline roc::GoalGraph goals(const std::string& name) { return roc::parse_goals(read_file(fixture_path(name)), name); }
inline std::vector<roc::Problem> problems(const std::string& name) {
  return roc::parse_registry(read_file(fixture_path(name)), name);
}
inline roc::ComponentMap cmap(const std::string& name) {
  return roc::parse_components(read_file(fixture_path(name)), name);
}

inline std::vector<std::string> fixtures_with(const std::string& ext) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(ROC_FIXTURE_DIR)) {
    if (e.path().extension() == ext) out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline roc::Scenario scenario(const std::string& id, const std::string& goals_file, const std::string& asis,
                              const std::string& tobe, const std::string& problems_file,
                              const std::string& cmap_file) {
  roc::ProcessModel a = process(asis);
  roc::ProcessModel b = process(tobe);
  roc::PlaceCorrespondence corr = roc::identity_correspondence(a, b);
  return roc::make_scenario(id, id, goals(goals_file), std::move(a), std::move(b), std::move(corr),
                            problems(problems_file), cmap(cmap_file));
}

inline roc::Scenario electrotech() {
  return scenario("ElectroTech", "electrotech.goals", "electrotech-asis.proc", "electrotech-tobe.proc",
                  "electrotech.problems", "electrotech.cmap");
}
inline roc::Scenario alveo_sd() {
  return scenario("ALVEO_SD", "alveo.goals", "alveo-sd-asis.proc", "alveo-sd-tobe.proc", "alveo-sd.problems",
                  "alveo-sd.cmap");
}
inline roc::Scenario alveo_accounting() {
  return scenario("ALVEO_accounting", "alveo.goals", "alveo-accounting-asis.proc", "alveo-accounting-tobe.proc",
                  "alveo-accounting.problems", "alveo-accounting.cmap");
}
inline roc::Scenario alveo_logistics() {
  return scenario("ALVEO_logistics", "alveo.goals", "alveo-logistics-asis.proc", "alveo-logistics-tobe.proc",
                  "alveo-logistics.problems", "alveo-logistics.cmap");
}

// The new make-to-stock logistics project used as a retrieval query.
inline roc::Scenario logistics_query() {
  roc::Scenario q;
  q.id = "query";
  q.name = "query";
  q.goals = goals("query-logistics.goals");
  q.to_be = process("query-logistics-tobe.proc");
  q.component_map = cmap("query-logistics.cmap");
  return q;
}

// Random valid nets with places P1..Pn and fragments F1..Fm (n <= 6, m <= 8
// keeps every id a single digit, so string order equals numeric order).
inline roc::ProcessModel random_net(std::mt19937& rng, int max_places = 6, int max_fragments = 8) {
  std::uniform_int_distribution<int> places_d(2, max_places);
  std::uniform_int_distribution<int> frags_d(1, max_fragments);
  const int n = places_d(rng);
  const int m = frags_d(rng);
  roc::ProcessModel model;
  model.name = "random";
  model.kind = roc::ModelKind::kToBe;
  for (int i = 1; i <= n; ++i) {
    roc::PlaceRole role = i == 1 ? roc::PlaceRole::kStart : (i == n ? roc::PlaceRole::kExit : roc::PlaceRole::kIntermediate);
    model.places.push_back({"P" + std::to_string(i), "place " + std::to_string(i), role});
  }
  auto random_subset = [&](int max_size) {
    std::uniform_int_distribution<int> size_d(1, max_size);
    std::uniform_int_distribution<int> place_d(1, n);
    roc::IdSet s;
    int k = size_d(rng);
    while (static_cast<int>(s.size()) < std::min(k, n)) s.insert("P" + std::to_string(place_d(rng)));
    return s;
  };
  for (int j = 1; j <= m; ++j) {
    roc::Fragment f;
    f.id = "F" + std::to_string(j);
    f.sources = random_subset(2);
    f.targets = random_subset(2);
    f.strategy = {"strategy " + std::to_string(j), false};
    model.fragments.push_back(std::move(f));
  }
  model.initial_marking.set("P1", 1);
  std::uniform_int_distribution<int> extra(0, 3);
  if (extra(rng) == 0) model.initial_marking.set("P" + std::to_string(n > 2 ? 2 : 1), 1 + extra(rng) % 2);
  return model;
}

// Brute-force enumerator over plain string maps. Breadth-first, fragments
// tried in the order given by sorting their ids, at most `bound` markings
// stored.
struct BruteForce {
  using State = std::map<std::string, int>;
  std::set<State> states;
  bool bound_hit = false;
  bool exit_reachable = false;
  std::set<std::string> dead;
};

inline BruteForce brute_force(const roc::ProcessModel& model, std::size_t bound) {
  using State = BruteForce::State;
  std::vector<const roc::Fragment*> order;
  for (const auto& f : model.fragments) order.push_back(&f);
  std::sort(order.begin(), order.end(), [](const roc::Fragment* a, const roc::Fragment* b) {
    return roc::IdLess{}(a->id, b->id);
  });

  auto is_enabled = [](const State& s, const roc::Fragment& f) {
    for (const auto& p : f.sources) {
      auto it = s.find(p);
      if (it == s.end() || it->second < 1) return false;
    }
    return true;
  };

  BruteForce out;
  State start;
  for (const auto& [p, c] : model.initial_marking.tokens()) start[p] = static_cast<int>(c);
  std::deque<State> queue{start};
  out.states.insert(start);
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (const auto* f : order) {
      if (!is_enabled(s, *f)) continue;
      State next = s;
      for (const auto& p : f->sources) {
        if (--next[p] == 0) next.erase(p);
      }
      for (const auto& p : f->targets) ++next[p];
      if (out.states.contains(next)) continue;
      if (out.states.size() >= bound) {
        out.bound_hit = true;
        continue;
      }
      out.states.insert(next);
      queue.push_back(next);
    }
  }

  std::set<std::string> exits;
  for (const auto& p : model.places) {
    if (p.role == roc::PlaceRole::kExit) exits.insert(p.id);
  }
  std::set<std::string> live;
  for (const auto& s : out.states) {
    for (const auto& [p, c] : s) {
      if (c > 0 && exits.contains(p)) out.exit_reachable = true;
    }
    for (const auto* f : order) {
      if (is_enabled(s, *f)) live.insert(f->id);
    }
  }
  for (const auto* f : order) {
    if (!live.contains(f->id)) out.dead.insert(f->id);
  }
  return out;
}

inline std::set<BruteForce::State> as_states(const std::set<roc::Marking>& markings) {
  std::set<BruteForce::State> out;
  for (const auto& m : markings) {
    BruteForce::State s;
    for (const auto& [p, c] : m.tokens()) s[p] = static_cast<int>(c);
    out.insert(std::move(s));
  }
  return out;
}

}  // namespace testing
