#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace roc;
using testing::process;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

ProcessModel tiny() {
  ProcessModel m;
  m.name = "tiny";
  m.places = {{"I0", "start", PlaceRole::kStart}, {"exit", "exit", PlaceRole::kExit}};
  m.fragments = {{"PF1", {"I0"}, {"exit"}, {"manual strategy", true}, {}, {}}};
  m.initial_marking.set("I0", 1);
  return m;
}

}  // namespace

TEST_CASE("IdLess orders digit runs numerically") {
  IdLess less;
  CHECK(less("PF2", "PF10"));
  CHECK_FALSE(less("PF10", "PF2"));
  CHECK(less("PF1", "PF1.1"));
  CHECK(less("PF1.2", "PF1.10"));
  CHECK(less("I9", "exit"));
  CHECK_FALSE(less("PF1", "PF1"));
  IdSet s{"PF10", "PF2", "PF1.1", "PF1"};
  CHECK(join(s) == "PF1, PF1.1, PF2, PF10");
}

TEST_CASE("normalize_label and default deficiency") {
  CHECK(normalize_label("  Not   Demand\tManagement ") == "not demand management");
  CHECK(StrategyLabel::default_deficiency("Not real time production planning strategy"));
  CHECK(StrategyLabel::default_deficiency("manual order processing strategy"));
  CHECK_FALSE(StrategyLabel::default_deficiency("planning strategy"));
  CHECK_FALSE(StrategyLabel::default_deficiency("nothing"));
  CHECK(StrategyLabel{"On-line  Strategy", false}.equivalent({"on-line strategy", true}));
}

TEST_CASE("Electro Tech fixtures are valid") {
  ProcessModel as_is = process("electrotech-asis.proc");
  CHECK(validate_net(as_is).empty());
  CHECK(as_is.places.size() == 5);
  CHECK(as_is.fragments.size() == 4);
  CHECK(validate_net(process("electrotech-tobe.proc")).empty());
}

TEST_CASE("validate_net findings") {
  SUBCASE("no exit place") {
    ProcessModel m = tiny();
    m.places[1].role = PlaceRole::kIntermediate;
    auto vs = validate_net(m);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].code == "NoExitPlace");
  }
  SUBCASE("dangling reference") {
    ProcessModel m = tiny();
    m.fragments[0].targets = {"I9"};
    auto vs = validate_net(m);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].code == "DanglingPlaceRef");
    CHECK(vs[0].subject == "PF1");
  }
  SUBCASE("duplicates and empties") {
    ProcessModel m = tiny();
    m.places.push_back(m.places[0]);
    m.fragments.push_back(m.fragments[0]);
    m.fragments.push_back({"PF2", {}, {}, {"", false}, {}, {}});
    auto vs = validate_net(m);
    CHECK(has_code(vs, "DuplicatePlace"));
    CHECK(has_code(vs, "DuplicateFragment"));
    CHECK(has_code(vs, "EmptySources"));
    CHECK(has_code(vs, "EmptyTargets"));
    CHECK(has_code(vs, "EmptyStrategy"));
  }
  SUBCASE("problems and resolves on one fragment") {
    ProcessModel m = tiny();
    m.fragments[0].problems = {"a"};
    m.fragments[0].resolves = {"a"};
    CHECK(has_code(validate_net(m), "ProblemsAndResolves"));
  }
  SUBCASE("kind mismatch") {
    ProcessModel m = tiny();
    m.fragments[0].resolves = {"a"};
    CHECK(has_code(validate_net(m), "KindMismatch"));
  }
  SUBCASE("two start places") {
    ProcessModel m = tiny();
    m.places.push_back({"I1", "other", PlaceRole::kStart});
    CHECK(has_code(validate_net(m), "MultipleStartPlaces"));
  }
  SUBCASE("marking names an unknown place") {
    ProcessModel m = tiny();
    m.initial_marking.set("I7", 1);
    CHECK(has_code(validate_net(m), "DanglingMarkingRef"));
  }
}

TEST_CASE("enabled and fire") {
  ProcessModel as_is = process("electrotech-asis.proc");
  ProcessModel to_be = process("electrotech-tobe.proc");
  CHECK(enabled(as_is, {{"I0", 1}}) == IdSet{"PF1"});
  CHECK(enabled(to_be, {{"I1", 1}}) == IdSet{"PF2", "PF3"});
  CHECK(enabled(as_is, {}).empty());
  CHECK(fire(as_is, {{"I0", 1}}, "PF1") == Marking{{"I1", 1}});
  CHECK(fire(to_be, {{"I3", 1}}, "PF6") == Marking{{"I3", 1}});
  CHECK_THROWS_AS(fire(as_is, {{"I0", 1}}, "PF2"), NotEnabled);
  CHECK_THROWS_AS(fire(as_is, {{"I0", 1}}, "PF99"), UnknownFragment);
}

TEST_CASE("reachable markings") {
  std::set<Marking> expected{{{"I0", 1}}, {{"I1", 1}}, {{"I2", 1}}, {{"I3", 1}}, {{"exit", 1}}};
  CHECK(reachable(process("electrotech-asis.proc"), 100) == expected);
  CHECK(reachable(process("electrotech-tobe.proc"), 100) == expected);
}

TEST_CASE("bound is respected") {
  // A generator fragment produces an unbounded net.
  ProcessModel m = tiny();
  m.fragments.push_back({"PF2", {"I0"}, {"I0", "exit"}, {"generate", false}, {}, {}});
  Exploration e = explore(m, 50);
  CHECK(e.markings.size() == 50);
  CHECK(e.bound_hit);
  CHECK(check_fulfilment(m, 50).bound_hit);
}

TEST_CASE("check_fulfilment") {
  FulfilmentReport r = check_fulfilment(process("electrotech-tobe.proc"));
  CHECK(r.exit_reachable);
  CHECK(r.dead_fragments.empty());
  CHECK_FALSE(r.bound_hit);
  CHECK(check_fulfilment(process("alveo-sd-tobe.proc")).exit_reachable);

  ProcessModel m = tiny();
  m.places.push_back({"I1", "island", PlaceRole::kIntermediate});
  m.fragments.push_back({"PF2", {"I1"}, {"exit"}, {"unused", false}, {}, {}});
  r = check_fulfilment(m);
  CHECK(r.exit_reachable);
  CHECK(r.dead_fragments == IdSet{"PF2"});

  m.initial_marking = {};
  r = check_fulfilment(m);
  CHECK_FALSE(r.exit_reachable);
  CHECK(r.dead_fragments == IdSet{"PF1", "PF2"});
}

TEST_CASE("triplet notation") {
  ProcessModel as_is = process("electrotech-asis.proc");
  CHECK(triplet(as_is, "PF1") == "PF1 :<(start), (support material), manual strategy>");
  CHECK(triplet(as_is, "PF4") == "PF4 :<(Stock), exit, manual order processing strategy>");
  CHECK_THROWS_AS(triplet(as_is, "PF9"), UnknownFragment);
}

TEST_CASE("refinement") {
  ProcessModel refined = process("alveo-logistics-refined.proc");
  RefinementTree tree = parse_refinement(testing::read_file(testing::fixture_path("alveo-logistics.refine")));
  CHECK(validate_refinement(refined, tree).empty());
  CHECK(tree.roots() == IdSet{"PF1"});

  SUBCASE("empty tree") { CHECK(validate_refinement(refined, {}).empty()); }
  SUBCASE("unknown child") {
    tree.children["PF1"].push_back("PF1.9");
    auto vs = validate_refinement(refined, tree);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].code == "UnknownFragment");
  }
  SUBCASE("id does not extend its parent") {
    RefinementTree bad;
    bad.children["PF1"] = {"PF2"};
    CHECK(has_code(validate_refinement(refined, bad), "IdMismatch"));
  }
  SUBCASE("child under two parents") {
    tree.children["PF1.2"] = {"PF1.1.1"};
    CHECK(has_code(validate_refinement(refined, tree), "MultipleParents"));
  }
  SUBCASE("cycle") {
    RefinementTree bad;
    bad.children["PF1.1"] = {"PF1"};
    bad.children["PF1"] = {"PF1.1"};
    CHECK(has_code(validate_refinement(refined, bad), "RefinementCycle"));
  }
}

TEST_CASE("reachable agrees with a brute-force enumerator on random nets") {
  std::mt19937 rng(20261018);
  for (int i = 0; i < 300; ++i) {
    ProcessModel m = testing::random_net(rng);
    REQUIRE(validate_net(m).empty());
    const std::size_t bound = 400;
    auto oracle = testing::brute_force(m, bound);
    Exploration e = explore(m, bound);
    CHECK(testing::as_states(std::set<Marking>(e.markings.begin(), e.markings.end())) == oracle.states);
    CHECK(e.bound_hit == oracle.bound_hit);
    FulfilmentReport r = check_fulfilment(m, bound);
    CHECK(r.exit_reachable == oracle.exit_reachable);
    CHECK(std::set<std::string>(r.dead_fragments.begin(), r.dead_fragments.end()) == oracle.dead);
    CHECK(r.explored_markings == oracle.states.size());
  }
}

TEST_CASE("firing conserves tokens along each arc") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    ProcessModel m = testing::random_net(rng);
    for (const auto& marking : reachable(m, 100)) {
      for (const auto& id : enabled(m, marking)) {
        const Fragment* f = m.find_fragment(id);
        Marking next = fire(m, marking, id);
        CHECK(next.total() + f->sources.size() == marking.total() + f->targets.size());
      }
    }
  }
}
