// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>

#include "roc/cli.hpp"
#include "roc/interchange.hpp"
#include "support.hpp"

using namespace roc;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes.
constexpr double kMaxCriterion1Seconds = 1.0;
constexpr double kSimilarityTolerance = 1e-12;
constexpr double kPinnedSimilarity = 1.0 / 28.0;  // tests/oracles/similarity_oracle.py
constexpr int kRandomNets = 200;
constexpr std::size_t kRandomNetBound = 2000;
constexpr int kFuzzInputsPerParser = 10000;
constexpr int kFuzzMaxLength = 96;

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool report(int number, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("unexpected exception: ") + e.what());
  }
  bool pass = c.failures.empty();
  std::printf("%s criterion %d: %s", pass ? "PASS" : "FAIL", number, title.c_str());
  if (!pass) std::printf(" (%s)", c.failures.front().c_str());
  std::printf("\n");
  for (std::size_t i = 1; i < c.failures.size() && i < 5; ++i) std::printf("    also: %s\n", c.failures[i].c_str());
  return pass;
}

bool within(const IdSet& ids, int lo, int hi) {
  for (const auto& id : ids) {
    if (id.rfind("PF", 0) != 0) return false;
    int n = std::stoi(id.substr(2));
    if (n < lo || n > hi) return false;
  }
  return true;
}

void criterion1(Check& c) {
  auto start = std::chrono::steady_clock::now();
  ProcessModel a = testing::process("electrotech-asis.proc");
  ProcessModel b = testing::process("electrotech-tobe.proc");
  auto registry = testing::problems("electrotech.problems");
  AlignmentReport r = align(a, b, identity_correspondence(a, b), registry);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  c.expect(a.fragments.size() == 4, "As-Is has 4 fragments");
  c.expect(b.fragments.size() == 8, "To-Be has 8 fragments");
  for (const std::string id : {"PF6", "PF7"}) {
    bool added = false;
    for (const auto& m : r.matches) added = added || (m.to_be == id && m.kind == MatchKind::kAdded);
    c.expect(added, id + " is Added");
    c.expect(b.find_fragment(id)->is_self_loop(), id + " is a self-loop");
  }
  for (const auto& p : registry) {
    const IdSet& ids = r.coverage.at(p.id);
    c.expect(!ids.empty(), "problem " + p.id + " is covered");
    if (p.category == "Supply Chain Management") c.expect(within(ids, 1, 5), p.id + " covered within PF1..PF5");
    if (p.category == "Demand Side") c.expect(within(ids, 6, 8), p.id + " covered within PF6..PF8");
  }
  c.expect(r.category_summary.at("Supply Chain Management") == IdSet{"PF1", "PF2", "PF3", "PF4", "PF5"},
           "supply chain rollup is PF1..PF5");
  c.expect(r.category_summary.at("Demand Side") == IdSet{"PF6", "PF7", "PF8"}, "demand side rollup is PF6..PF8");
  c.expect(r.uncovered.empty(), "no uncovered problems");
  c.expect(seconds < kMaxCriterion1Seconds, "runtime " + std::to_string(seconds) + " s");
}

void criterion2(Check& c) {
  std::ostringstream out, err;
  int code = run_cli({"components", testing::fixture_path("alveo-sd-tobe.proc"), testing::fixture_path("alveo-sd.cmap")},
                     out, err);
  c.expect(code == 0, "exit code 0");
  c.expect(out.str() == testing::read_file(testing::golden_path("sd-components.txt")), "byte-identical to golden");
  ComponentTable t = component_table(testing::process("alveo-sd-tobe.proc"), testing::cmap("alveo-sd.cmap"));
  c.expect(t.rows.size() == 4, "four rows");
  const char* expected[] = {"Sales", "Shipping", "Shipping", "Billing"};
  for (std::size_t i = 0; i < t.rows.size() && i < 4; ++i) {
    c.expect(t.rows[i].fragment == "PF" + std::to_string(i + 1), "row order");
    c.expect(t.rows[i].components == std::set<std::string>{expected[i]}, "row " + t.rows[i].fragment);
  }
  c.expect(t.all == std::set<std::string>{"Sales and Distribution IS", "Sales support"}, "All row");
}

void criterion3(Check& c) {
  ProcessModel a = testing::process("alveo-sd-asis.proc");
  ProcessModel b = testing::process("alveo-sd-tobe.proc");
  AlignmentReport r = align(a, b, identity_correspondence(a, b));
  c.expect(a.fragments.size() == 4 && b.fragments.size() == 4, "4 fragments per side");
  c.expect(count(r, MatchKind::kStrategyUpgrade) == 4, "4 strategy upgrades");
  c.expect(count(r, MatchKind::kAdded) == 0, "0 added");
  c.expect(count(r, MatchKind::kRemoved) == 0, "0 removed");
  c.expect(r.matches.size() == 4, "4 matches");
  bool example = false;
  for (const auto& m : r.matches) {
    if (!m.as_is || !m.to_be) continue;
    const Fragment* x = a.find_fragment(*m.as_is);
    const Fragment* y = b.find_fragment(*m.to_be);
    if (x->sources == IdSet{"I0"} && x->targets == IdSet{"I1"}) {
      example = a.find_place("I0")->label == "Customer Inquiry" && a.find_place("I1")->label == "Quotation" &&
                x->strategy.text == "manual strategy" && y->strategy.text == "on-line strategy";
    }
  }
  c.expect(example, "customer inquiry -> quotation: manual strategy -> on-line strategy");
}

void criterion4(Check& c) {
  auto check_table = [&](const std::string& model, const std::string& map, int split, const std::string& first,
                         const std::string& second, std::size_t rows) {
    ComponentTable t = component_table(testing::process(model), testing::cmap(map));
    c.expect(t.rows.size() == rows, model + " row count");
    for (const auto& row : t.rows) {
      int n = std::stoi(row.fragment.substr(2));
      c.expect(row.components == std::set<std::string>{n <= split ? first : second}, model + " " + row.fragment);
    }
  };
  check_table("alveo-logistics-tobe.proc", "alveo-logistics.cmap", 3, "Production Planning (PP)",
              "Material Management (MM)", 7);
  check_table("alveo-accounting-tobe.proc", "alveo-accounting.cmap", 2, "Financial Accounting (FI)",
              "Controlling (CO)", 5);
}

void criterion5(Check& c) {
  ProcessModel m = testing::process("alveo-logistics-refined.proc");
  RefinementTree tree = parse_refinement(testing::read_file(testing::fixture_path("alveo-logistics.refine")));
  c.expect(tree.children.at("PF1") == std::vector<std::string>{"PF1.1", "PF1.2"}, "PF1 children");
  c.expect(tree.children.at("PF1.1") == std::vector<std::string>{"PF1.1.1", "PF1.1.2"}, "PF1.1 children");
  c.expect(validate_refinement(m, tree).empty(), "tree validates");
  for (const std::string child : {"PF1.1", "PF1.2", "PF1.1.1", "PF1.1.2"}) {
    for (int side = 0; side < 2; ++side) {
      ProcessModel mutated = m;
      for (auto& f : mutated.fragments) {
        if (f.id != child) continue;
        (side == 0 ? f.sources : f.targets) = IdSet{"I5"};
      }
      auto vs = validate_refinement(mutated, tree);
      c.expect(vs.size() == 1 && vs[0].code == "EndpointMismatch",
               "mutating " + std::string(side == 0 ? "sources" : "targets") + " of " + child + " gives " +
                   std::to_string(vs.size()) + " findings");
    }
  }
}

void compare_with_oracle(Check& c, const ProcessModel& m, std::size_t bound, const std::string& name) {
  auto oracle = testing::brute_force(m, bound);
  c.expect(testing::as_states(reachable(m, bound)) == oracle.states, name + ": reachable set");
  FulfilmentReport r = check_fulfilment(m, bound);
  c.expect(r.exit_reachable == oracle.exit_reachable, name + ": exit_reachable");
  c.expect(std::set<std::string>(r.dead_fragments.begin(), r.dead_fragments.end()) == oracle.dead,
           name + ": dead fragments");
  c.expect(r.bound_hit == oracle.bound_hit, name + ": bound_hit");
  c.expect(r.explored_markings == oracle.states.size(), name + ": explored count");
}

void criterion6(Check& c) {
  for (const auto& name : testing::fixtures_with(".proc")) {
    compare_with_oracle(c, testing::process(name), kDefaultBound, name);
  }
  std::mt19937 rng(6);
  for (int i = 0; i < kRandomNets; ++i) {
    ProcessModel m = testing::random_net(rng, 6, 8);
    c.expect(validate_net(m).empty(), "random net " + std::to_string(i) + " valid");
    compare_with_oracle(c, m, kRandomNetBound, "random net " + std::to_string(i));
  }
  FulfilmentReport et = check_fulfilment(testing::process("electrotech-tobe.proc"));
  c.expect(et.exit_reachable, "Electro Tech To-Be reaches exit");
  c.expect(et.dead_fragments.empty(), "Electro Tech To-Be has no dead fragments");
}

void criterion7(Check& c) {
  std::vector<Scenario> all{testing::electrotech(), testing::alveo_sd(), testing::alveo_accounting(),
                            testing::alveo_logistics(), testing::logistics_query()};
  for (const auto& a : all) {
    c.expect(similarity(a, a) == 1.0, "self-similarity of " + a.id);
    for (const auto& b : all) c.expect(similarity(a, b) == similarity(b, a), "symmetry " + a.id + "/" + b.id);
  }

  fs::path dir = fs::temp_directory_path() / ("roc-acceptance-" + std::to_string(std::random_device{}()));
  CaseBase cb = CaseBase(dir).retain(testing::electrotech()).retain(testing::alveo_sd()).retain(testing::alveo_logistics());
  Scenario q = testing::logistics_query();
  std::vector<RetrievalHit> brute;
  for (const auto& [id, s] : cb.scenarios()) brute.push_back({id, similarity(q, s)});
  std::sort(brute.begin(), brute.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  c.expect(retrieve(cb, q, 3) == brute, "retrieve ordering equals brute-force sort");
  c.expect(retrieve(cb, q, 1).front().id == "ALVEO_logistics", "ALVEO logistics ranked first");

  auto snapshot = [&] {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = testing::read_file(e.path().string());
    return files;
  };
  auto before = snapshot();
  CaseBase loaded = CaseBase::load(dir);
  c.expect(loaded == cb, "load equals saved case base");
  loaded.save();
  c.expect(snapshot() == before, "save after load is bit-identical");
  fs::remove_all(dir);

  double s = similarity(testing::electrotech(), testing::alveo_logistics());
  c.expect(std::fabs(s - kPinnedSimilarity) <= kSimilarityTolerance, "pinned similarity, got " + std::to_string(s));
}

void criterion8(Check& c) {
  const std::vector<std::pair<std::string, std::function<void(std::string_view)>>> parsers{
      {"process", [](std::string_view t) { parse_process_unchecked(t); }},
      {"goals", [](std::string_view t) { parse_goals_unchecked(t); }},
      {"registry", [](std::string_view t) { parse_registry(t); }},
      {"components", [](std::string_view t) { parse_components(t); }},
      {"correspondence", [](std::string_view t) { parse_correspondence(t); }},
      {"refinement", [](std::string_view t) { parse_refinement(t); }}};
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> len(0, kFuzzMaxLength);
  std::uniform_int_distribution<int> byte(0, 255);
  for (const auto& [name, parse] : parsers) {
    int bad = 0;
    for (int i = 0; i < kFuzzInputsPerParser; ++i) {
      std::string input(len(rng), '\0');
      for (auto& ch : input) ch = static_cast<char>(byte(rng));
      try {
        parse(input);
      } catch (const ParseError& e) {
        int lines = 1 + static_cast<int>(std::count(input.begin(), input.end(), '\n'));
        if (e.span.line < 1 || e.span.line > lines || e.span.column < 1 || e.expected.empty() || e.found.empty()) ++bad;
      } catch (...) {
        ++bad;
      }
    }
    c.expect(bad == 0, name + ": " + std::to_string(bad) + " bad outcomes");
  }

  for (const auto& name : testing::fixtures_with(".proc")) {
    ProcessModel m = testing::process(name);
    c.expect(parse_process(serialize(m)) == m, name + " round trip");
  }
  for (const auto& name : testing::fixtures_with(".goals")) {
    GoalGraph g = testing::goals(name);
    c.expect(parse_goals(serialize(g)) == g, name + " round trip");
  }
  for (const auto& name : testing::fixtures_with(".problems")) {
    auto r = testing::problems(name);
    c.expect(parse_registry(serialize(r)) == r, name + " round trip");
  }
  for (const auto& name : testing::fixtures_with(".cmap")) {
    auto m = testing::cmap(name);
    c.expect(parse_components(serialize(m)) == m, name + " round trip");
  }
  for (const auto& name : testing::fixtures_with(".refine")) {
    auto t = parse_refinement(testing::read_file(testing::fixture_path(name)));
    c.expect(parse_refinement(serialize(t)) == t, name + " round trip");
  }
}

void criterion9(Check& c) {
  GoalGraph g = testing::goals("alveo.goals");
  std::vector<ProcessModel> models{testing::process("alveo-sd-tobe.proc"), testing::process("alveo-accounting-tobe.proc"),
                                   testing::process("alveo-logistics-tobe.proc")};
  c.expect(leaves(g, NodeKind::kGoal).size() >= 5, "five enterprise goals present");
  SupportReport r = support_check(g, models);
  c.expect(r.unsupported.empty(), "no unsupported goals, got " + join(r.unsupported));
  c.expect(r.supported == IdSet{"ga", "gb", "gc", "gd", "ge"}, "goals (a)-(e) supported");

  GoalGraph without_fi = g;
  std::erase_if(without_fi.edges, [](const GoalEdge& e) { return e.from == "fi" && e.kind == EdgeKind::kRealisedBy; });
  SupportReport r2 = support_check(without_fi, models);
  c.expect(r2.unsupported.size() == 1, "exactly one unsupported goal, got " + join(r2.unsupported));
  if (r2.unsupported.size() == 1) {
    c.expect(g.find_node(*r2.unsupported.begin())->label == "better production cost transparency",
             "the cost-transparency goal is the unsupported one");
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "Electro Tech alignment: PF6/PF7 added self-loops, category rollup, under 1 s", criterion1);
  ok &= report(2, "ALVEO SD component table is byte-identical to the golden file", criterion2);
  ok &= report(3, "ALVEO SD alignment: 4 strategy upgrades, 0 added, 0 removed", criterion3);
  ok &= report(4, "ALVEO module attribution: PP/MM and FI/CO tables", criterion4);
  ok &= report(5, "Refinement tree validates; each endpoint mutation gives one EndpointMismatch", criterion5);
  ok &= report(6, "Reachability agrees with a brute-force enumerator on fixtures and 200 random nets", criterion6);
  ok &= report(7, "CBR laws: symmetry, self-similarity, retrieve order, bit-identical storage, pinned constant",
               criterion7);
  ok &= report(8, "Parsers survive 10,000 random inputs each; fixtures round-trip", criterion8);
  ok &= report(9, "ALVEO goal support, and removing FI realisations isolates cost transparency", criterion9);
  return ok ? 0 : 1;
}
