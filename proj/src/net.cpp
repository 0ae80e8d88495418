#include "roc/net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace roc {

bool StrategyLabel::default_deficiency(std::string_view text) {
  std::string norm = normalize_label(text);
  return norm.starts_with("not ") || norm.starts_with("manual");
}

bool StrategyLabel::equivalent(const StrategyLabel& other) const {
  return normalize_label(text) == normalize_label(other.text);
}

Marking::Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> init) {
  for (const auto& [place, count] : init) set(place, count);
}

std::uint32_t Marking::at(std::string_view place) const {
  auto it = tokens_.find(place);
  return it == tokens_.end() ? 0 : it->second;
}

void Marking::set(const std::string& place, std::uint32_t count) {
  if (count == 0) {
    tokens_.erase(place);
  } else {
    tokens_[place] = count;
  }
}

std::uint64_t Marking::total() const {
  std::uint64_t sum = 0;
  for (const auto& [_, n] : tokens_) sum += n;
  return sum;
}

std::string to_string(const Marking& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [place, n] : m.tokens()) {
    if (!first) out += ", ";
    out += place + ":" + std::to_string(n);
    first = false;
  }
  return out + "}";
}

const Place* ProcessModel::find_place(std::string_view id) const {
  auto it = std::find_if(places.begin(), places.end(), [&](const Place& p) { return p.id == id; });
  return it == places.end() ? nullptr : &*it;
}

const Fragment* ProcessModel::find_fragment(std::string_view id) const {
  auto it = std::find_if(fragments.begin(), fragments.end(),
                         [&](const Fragment& f) { return f.id == id; });
  return it == fragments.end() ? nullptr : &*it;
}

IdSet ProcessModel::fragment_ids() const {
  IdSet ids;
  for (const auto& f : fragments) ids.insert(f.id);
  return ids;
}

IdSet RefinementTree::roots() const {
  IdSet all_children;
  for (const auto& [_, kids] : children) all_children.insert(kids.begin(), kids.end());
  IdSet out;
  for (const auto& [parent, _] : children) {
    if (!all_children.contains(parent)) out.insert(parent);
  }
  return out;
}

std::string_view to_string(PlaceRole role) {
  switch (role) {
    case PlaceRole::kStart:
      return "start";
    case PlaceRole::kExit:
      return "exit";
    case PlaceRole::kIntermediate:
      break;
  }
  return "intermediate";
}

std::string_view to_string(ModelKind kind) { return kind == ModelKind::kAsIs ? "asis" : "tobe"; }

std::vector<Violation> validate_net(const ProcessModel& model) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string subject, std::string message) {
    out.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  IdSet place_ids;
  int starts = 0, exits = 0;
  for (const auto& p : model.places) {
    if (!is_valid_id(p.id)) report("InvalidId", p.id, "place id '" + p.id + "' is not an identifier");
    if (!place_ids.insert(p.id).second) report("DuplicatePlace", p.id, "place " + p.id + " declared twice");
    if (p.role == PlaceRole::kStart) {
      if (++starts == 2) report("MultipleStartPlaces", p.id, "place " + p.id + " is a second start place");
    }
    if (p.role == PlaceRole::kExit) ++exits;
  }
  if (starts == 0) report("NoStartPlace", model.name, "model has no start place");
  if (exits == 0) report("NoExitPlace", model.name, "model has no exit place");

  IdSet fragment_ids;
  for (const auto& f : model.fragments) {
    if (!is_valid_id(f.id)) report("InvalidId", f.id, "fragment id '" + f.id + "' is not an identifier");
    if (!fragment_ids.insert(f.id).second) {
      report("DuplicateFragment", f.id, "fragment " + f.id + " declared twice");
    }
    for (const IdSet* side : {&f.sources, &f.targets}) {
      for (const auto& ref : *side) {
        if (!place_ids.contains(ref)) {
          report("DanglingPlaceRef", f.id, "fragment " + f.id + " references unknown place " + ref);
        }
      }
    }
    if (f.sources.empty()) report("EmptySources", f.id, "fragment " + f.id + " has no source place");
    if (f.targets.empty()) report("EmptyTargets", f.id, "fragment " + f.id + " has no target place");
    if (normalize_label(f.strategy.text).empty()) {
      report("EmptyStrategy", f.id, "fragment " + f.id + " has an empty strategy");
    }
    if (!f.problems.empty() && !f.resolves.empty()) {
      report("ProblemsAndResolves", f.id, "fragment " + f.id + " both exhibits and resolves problems");
    }
    if (model.kind == ModelKind::kAsIs && !f.resolves.empty()) {
      report("KindMismatch", f.id, "As-Is fragment " + f.id + " carries resolves links");
    }
    if (model.kind == ModelKind::kToBe && !f.problems.empty()) {
      report("KindMismatch", f.id, "To-Be fragment " + f.id + " carries problems links");
    }
  }

  for (const auto& [place, _] : model.initial_marking.tokens()) {
    if (!place_ids.contains(place)) {
      report("DanglingMarkingRef", place, "initial marking references unknown place " + place);
    }
  }
  return out;
}

IdSet enabled(const ProcessModel& model, const Marking& m) {
  IdSet out;
  for (const auto& f : model.fragments) {
    bool ok = !f.sources.empty();
    for (const auto& s : f.sources) ok = ok && m.at(s) >= 1;
    if (ok) out.insert(f.id);
  }
  return out;
}

Marking fire(const ProcessModel& model, const Marking& m, std::string_view fragment) {
  const Fragment* f = model.find_fragment(fragment);
  if (f == nullptr) throw UnknownFragment("unknown fragment " + std::string(fragment));
  if (!enabled(model, m).contains(f->id)) {
    throw NotEnabled("fragment " + f->id + " is not enabled in " + to_string(m));
  }
  Marking next = m;
  for (const auto& s : f->sources) next.set(s, next.at(s) - 1);
  for (const auto& t : f->targets) next.set(t, next.at(t) + 1);
  return next;
}

namespace {

// Index-based view of a net for exploration.
struct CompiledNet {
  std::vector<std::string> place_ids;
  std::vector<std::string> fragment_ids;  // id order
  std::vector<std::vector<std::size_t>> sources;
  std::vector<std::vector<std::size_t>> targets;
  std::vector<std::size_t> exit_places;

  explicit CompiledNet(const ProcessModel& model) {
    std::map<std::string, std::size_t, IdLess> index;
    for (const auto& p : model.places) {
      if (index.emplace(p.id, place_ids.size()).second) {
        place_ids.push_back(p.id);
        if (p.role == PlaceRole::kExit) exit_places.push_back(place_ids.size() - 1);
      }
    }
    // Places named in the marking or arcs but not declared still get a slot
    // so exploration stays total on invalid nets.
    auto slot = [&](const std::string& id) {
      auto [it, inserted] = index.emplace(id, place_ids.size());
      if (inserted) place_ids.push_back(id);
      return it->second;
    };
    for (const auto& [p, _] : model.initial_marking.tokens()) slot(p);

    std::vector<const Fragment*> ordered;
    for (const auto& f : model.fragments) ordered.push_back(&f);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Fragment* a, const Fragment* b) { return IdLess{}(a->id, b->id); });
    for (const Fragment* f : ordered) {
      fragment_ids.push_back(f->id);
      std::vector<std::size_t> src, dst;
      for (const auto& s : f->sources) src.push_back(slot(s));
      for (const auto& t : f->targets) dst.push_back(slot(t));
      sources.push_back(std::move(src));
      targets.push_back(std::move(dst));
    }
  }

  using State = std::vector<std::uint32_t>;

  State encode(const Marking& m) const {
    State s(place_ids.size(), 0);
    for (std::size_t i = 0; i < place_ids.size(); ++i) s[i] = m.at(place_ids[i]);
    return s;
  }

  Marking decode(const State& s) const {
    Marking m;
    for (std::size_t i = 0; i < s.size(); ++i) m.set(place_ids[i], s[i]);
    return m;
  }

  bool is_enabled(const State& s, std::size_t f) const {
    if (sources[f].empty()) return false;
    for (std::size_t p : sources[f]) {
      if (s[p] == 0) return false;
    }
    return true;
  }

  State fire(const State& s, std::size_t f) const {
    State next = s;
    for (std::size_t p : sources[f]) --next[p];
    for (std::size_t p : targets[f]) ++next[p];
    return next;
  }
};

struct StateHash {
  std::size_t operator()(const std::vector<std::uint32_t>& s) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : s) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

struct RawExploration {
  std::vector<CompiledNet::State> states;
  bool bound_hit = false;
};

RawExploration explore_states(const CompiledNet& net, const Marking& initial, std::size_t bound) {
  RawExploration out;
  if (bound == 0) {
    out.bound_hit = true;
    return out;
  }
  std::unordered_map<CompiledNet::State, std::size_t, StateHash> seen;
  out.states.push_back(net.encode(initial));
  seen.emplace(out.states.front(), 0);
  for (std::size_t head = 0; head < out.states.size(); ++head) {
    for (std::size_t f = 0; f < net.fragment_ids.size(); ++f) {
      if (!net.is_enabled(out.states[head], f)) continue;
      auto next = net.fire(out.states[head], f);
      if (seen.contains(next)) continue;
      if (out.states.size() >= bound) {
        out.bound_hit = true;
        continue;
      }
      seen.emplace(next, out.states.size());
      out.states.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace

Exploration explore(const ProcessModel& model, std::size_t bound) {
  CompiledNet net(model);
  auto raw = explore_states(net, model.initial_marking, bound);
  Exploration out;
  out.bound_hit = raw.bound_hit;
  out.markings.reserve(raw.states.size());
  for (const auto& s : raw.states) out.markings.push_back(net.decode(s));
  return out;
}

std::set<Marking> reachable(const ProcessModel& model, std::size_t bound) {
  auto ex = explore(model, bound);
  return {ex.markings.begin(), ex.markings.end()};
}

FulfilmentReport check_fulfilment(const ProcessModel& model, std::size_t bound) {
  CompiledNet net(model);
  auto raw = explore_states(net, model.initial_marking, bound);
  FulfilmentReport report;
  report.bound_hit = raw.bound_hit;
  report.explored_markings = raw.states.size();
  std::vector<bool> live(net.fragment_ids.size(), false);
  for (const auto& s : raw.states) {
    for (std::size_t p : net.exit_places) {
      if (s[p] > 0) report.exit_reachable = true;
    }
    for (std::size_t f = 0; f < live.size(); ++f) {
      if (!live[f] && net.is_enabled(s, f)) live[f] = true;
    }
  }
  for (std::size_t f = 0; f < live.size(); ++f) {
    if (!live[f]) report.dead_fragments.insert(net.fragment_ids[f]);
  }
  return report;
}

std::string triplet(const ProcessModel& model, std::string_view fragment) {
  const Fragment* f = model.find_fragment(fragment);
  if (f == nullptr) throw UnknownFragment("unknown fragment " + std::string(fragment));

  auto label_of = [&](const std::string& id) {
    const Place* p = model.find_place(id);
    return p ? p->label : id;
  };
  auto group = [&](const IdSet& ids) {
    std::vector<std::string> labels;
    for (const auto& id : ids) labels.push_back(label_of(id));
    return "(" + join(labels) + ")";
  };

  std::string target_text;
  if (f->targets.size() == 1) {
    const Place* p = model.find_place(*f->targets.begin());
    if (p && p->role == PlaceRole::kExit && normalize_label(p->label) == "exit") target_text = "exit";
  }
  if (target_text.empty()) target_text = group(f->targets);

  return f->id + " :<" + group(f->sources) + ", " + target_text + ", " + f->strategy.text + ">";
}

std::vector<Violation> validate_refinement(const ProcessModel& model, const RefinementTree& tree) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string subject, std::string message) {
    out.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  std::map<std::string, std::string, IdLess> parent_of;
  for (const auto& [parent, kids] : tree.children) {
    if (model.find_fragment(parent) == nullptr) {
      report("UnknownFragment", parent, "refinement parent " + parent + " is not a fragment of the model");
    }
    for (const auto& child : kids) {
      if (model.find_fragment(child) == nullptr) {
        report("UnknownFragment", child, "refinement child " + child + " is not a fragment of the model");
      }
      auto [it, inserted] = parent_of.emplace(child, parent);
      if (!inserted) {
        report("MultipleParents", child,
               "fragment " + child + " refines both " + it->second + " and " + parent);
      }
      std::string_view rest = child;
      bool extends = rest.size() > parent.size() + 1 && rest.starts_with(parent) &&
                     rest[parent.size()] == '.' &&
                     rest.substr(parent.size() + 1).find('.') == std::string_view::npos;
      if (!extends) {
        report("IdMismatch", child, "id " + child + " does not extend " + parent + " by one dotted segment");
      }
    }
  }

  // Each node is compared against the root of its chain so a single altered
  // fragment yields a single finding.
  IdSet on_cycle;
  for (const auto& [child, _] : parent_of) {
    IdSet visited{child};
    std::string cur = child;
    bool cycle = false;
    while (true) {
      auto it = parent_of.find(cur);
      if (it == parent_of.end()) break;
      cur = it->second;
      if (!visited.insert(cur).second) {
        cycle = true;
        break;
      }
    }
    if (cycle) {
      if (on_cycle.insert(child).second) {
        report("RefinementCycle", child, "fragment " + child + " lies on a refinement cycle");
      }
      continue;
    }
    const Fragment* node = model.find_fragment(child);
    const Fragment* root = model.find_fragment(cur);
    if (node == nullptr || root == nullptr) continue;
    if (node->sources != root->sources || node->targets != root->targets) {
      report("EndpointMismatch", child,
             "fragment " + child + " does not keep the endpoints of " + parent_of.at(child));
    }
  }
  return out;
}

}  // namespace roc
