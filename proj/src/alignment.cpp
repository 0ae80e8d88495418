#include "roc/alignment.hpp"

#include <algorithm>

namespace roc {

std::string_view to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::kUnchanged:
      return "unchanged";
    case MatchKind::kStrategyUpgrade:
      return "strategy-upgrade";
    case MatchKind::kAdded:
      return "added";
    case MatchKind::kRemoved:
      return "removed";
  }
  return "unchanged";
}

std::optional<MatchKind> parse_match_kind(std::string_view text) {
  for (auto k : {MatchKind::kUnchanged, MatchKind::kStrategyUpgrade, MatchKind::kAdded, MatchKind::kRemoved}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::size_t count(const AlignmentReport& report, MatchKind kind) {
  return static_cast<std::size_t>(std::count_if(report.matches.begin(), report.matches.end(),
                                                [&](const FragmentMatch& m) { return m.kind == kind; }));
}

PlaceCorrespondence identity_correspondence(const ProcessModel& as_is, const ProcessModel& to_be) {
  PlaceCorrespondence corr;
  for (const auto& p : as_is.places) {
    if (to_be.find_place(p.id)) corr.pairs[p.id] = p.id;
  }
  return corr;
}

void check_correspondence(const PlaceCorrespondence& corr, const ProcessModel& as_is,
                          const ProcessModel& to_be) {
  IdSet images;
  for (const auto& [from, to] : corr.pairs) {
    if (!as_is.find_place(from)) {
      throw CorrespondenceError("correspondence names unknown As-Is place " + from);
    }
    if (!to_be.find_place(to)) {
      throw CorrespondenceError("correspondence names unknown To-Be place " + to);
    }
    if (!images.insert(to).second) {
      throw CorrespondenceError("correspondence is not injective: " + to + " is the image of two places");
    }
  }
}

PlaceCorrespondence invert(const PlaceCorrespondence& corr) {
  PlaceCorrespondence out;
  for (const auto& [from, to] : corr.pairs) out.pairs[to] = from;
  return out;
}

namespace {

std::optional<IdSet> map_places(const IdSet& places, const PlaceCorrespondence& corr) {
  IdSet out;
  for (const auto& p : places) {
    auto it = corr.pairs.find(p);
    if (it == corr.pairs.end()) return std::nullopt;
    out.insert(it->second);
  }
  return out;
}

bool endpoints_correspond(const Fragment& a, const Fragment& b, const PlaceCorrespondence& corr) {
  auto src = map_places(a.sources, corr);
  auto dst = map_places(a.targets, corr);
  return src && dst && *src == b.sources && *dst == b.targets;
}

bool by_id(const Fragment* a, const Fragment* b) { return IdLess{}(a->id, b->id); }

}  // namespace

std::optional<MatchKind> classify(const Fragment& as_is, const Fragment& to_be,
                                  const PlaceCorrespondence& corr) {
  if (!endpoints_correspond(as_is, to_be, corr)) return std::nullopt;
  return as_is.strategy.equivalent(to_be.strategy) ? MatchKind::kUnchanged : MatchKind::kStrategyUpgrade;
}

AlignmentReport align(const ProcessModel& as_is, const ProcessModel& to_be,
                      const PlaceCorrespondence& corr) {
  if (as_is.kind != ModelKind::kAsIs) {
    throw ModelKindError("model '" + as_is.name + "' is not an As-Is model");
  }
  if (to_be.kind != ModelKind::kToBe) {
    throw ModelKindError("model '" + to_be.name + "' is not a To-Be model");
  }
  check_correspondence(corr, as_is, to_be);

  std::vector<const Fragment*> old_side, new_side;
  for (const auto& f : as_is.fragments) old_side.push_back(&f);
  for (const auto& f : to_be.fragments) new_side.push_back(&f);
  std::stable_sort(old_side.begin(), old_side.end(), by_id);
  std::stable_sort(new_side.begin(), new_side.end(), by_id);

  std::vector<bool> old_used(old_side.size(), false), new_used(new_side.size(), false);
  AlignmentReport report;

  auto pair_pass = [&](bool require_same_strategy) {
    for (std::size_t i = 0; i < old_side.size(); ++i) {
      if (old_used[i]) continue;
      for (std::size_t j = 0; j < new_side.size(); ++j) {
        if (new_used[j]) continue;
        auto kind = classify(*old_side[i], *new_side[j], corr);
        if (!kind) continue;
        if (require_same_strategy && *kind != MatchKind::kUnchanged) continue;
        old_used[i] = new_used[j] = true;
        report.matches.push_back({old_side[i]->id, new_side[j]->id, *kind});
        break;
      }
    }
  };
  pair_pass(true);
  pair_pass(false);

  for (std::size_t j = 0; j < new_side.size(); ++j) {
    if (!new_used[j]) report.matches.push_back({std::nullopt, new_side[j]->id, MatchKind::kAdded});
  }
  for (std::size_t i = 0; i < old_side.size(); ++i) {
    if (!old_used[i]) report.matches.push_back({old_side[i]->id, std::nullopt, MatchKind::kRemoved});
  }
  // Rows carrying a To-Be fragment come first in To-Be id order, then
  // removals in As-Is id order.
  std::stable_sort(report.matches.begin(), report.matches.end(),
                   [](const FragmentMatch& a, const FragmentMatch& b) {
                     if (a.to_be.has_value() != b.to_be.has_value()) return a.to_be.has_value();
                     const std::string& ka = a.to_be ? *a.to_be : *a.as_is;
                     const std::string& kb = b.to_be ? *b.to_be : *b.as_is;
                     return IdLess{}(ka, kb);
                   });

  for (const auto& f : as_is.fragments) {
    for (const auto& p : f.problems) report.coverage[p];
  }
  for (const auto& f : to_be.fragments) {
    for (const auto& p : f.resolves) report.coverage[p].insert(f.id);
  }
  for (const auto& [problem, fragments] : report.coverage) {
    if (fragments.empty()) report.uncovered.insert(problem);
  }
  return report;
}

CoverageSummary problem_coverage(const AlignmentReport& report, std::span<const Problem> registry) {
  std::map<std::string, const Problem*, IdLess> known;
  for (const auto& p : registry) known.emplace(p.id, &p);
  for (const auto& [problem, _] : report.coverage) {
    if (!known.contains(problem)) throw UnknownProblemId("problem " + problem + " is not in the registry");
  }
  for (const auto& problem : report.uncovered) {
    if (!known.contains(problem)) throw UnknownProblemId("problem " + problem + " is not in the registry");
  }

  CoverageSummary summary;
  for (const auto& [id, problem] : known) {
    auto it = report.coverage.find(id);
    IdSet resolving = it == report.coverage.end() ? IdSet{} : it->second;
    auto& bucket = summary.by_category[problem->category];
    bucket.insert(resolving.begin(), resolving.end());
    if (resolving.empty()) summary.uncovered.insert(id);
    summary.per_problem.emplace(id, std::move(resolving));
  }
  return summary;
}

AlignmentReport align(const ProcessModel& as_is, const ProcessModel& to_be,
                      const PlaceCorrespondence& corr, std::span<const Problem> registry) {
  AlignmentReport report = align(as_is, to_be, corr);
  if (registry.empty()) return report;
  CoverageSummary summary = problem_coverage(report, registry);
  report.coverage = summary.per_problem;
  report.uncovered = summary.uncovered;
  report.category_summary = summary.by_category;
  return report;
}

ComponentTable component_table(const ProcessModel& to_be, const ComponentMap& cmap) {
  for (const auto& [fragment, _] : cmap.entries) {
    if (!to_be.find_fragment(fragment)) {
      throw UnknownFragment("component map names unknown fragment " + fragment);
    }
  }
  ComponentTable table;
  for (const auto& id : to_be.fragment_ids()) {
    auto it = cmap.entries.find(id);
    table.rows.push_back({id, it == cmap.entries.end() ? std::set<std::string>{} : it->second});
  }
  table.all = cmap.global;
  return table;
}

}  // namespace roc
