#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "roc/alignment.hpp"
#include "roc/goals.hpp"
#include "roc/net.hpp"

// Case-based reuse of completed projects: retrieve a similar scenario,
// compare, adapt its To-Be model, test the draft and retain the result.

namespace roc {

// One completed project for one targeted process.
struct Scenario {
  std::string id;
  std::string name;
  GoalGraph goals;
  ProcessModel as_is;
  ProcessModel to_be;
  PlaceCorrespondence correspondence;
  std::vector<Problem> problems;
  AlignmentReport report;
  ComponentMap component_map;
  std::map<std::string, std::string> metadata;

  bool operator==(const Scenario&) const = default;
};

// Runs align() over the parts and assembles the scenario.
Scenario make_scenario(std::string id, std::string name, GoalGraph goals, ProcessModel as_is,
                       ProcessModel to_be, PlaceCorrespondence corr, std::vector<Problem> problems,
                       ComponentMap cmap, std::map<std::string, std::string> metadata = {});

// Embedded models and graph are valid and the stored report equals a fresh
// alignment of the stored models.
std::vector<Violation> validate_scenario(const Scenario& s);

struct SimilarityWeights {
  double goals = 0.25;
  double places = 0.25;
  double strategies = 0.25;
  double components = 0.25;

  // Scaled to sum to 1. Throws std::invalid_argument when a weight is
  // negative or not finite, or all are zero.
  SimilarityWeights normalized() const;
};

struct LabelSets {
  std::set<std::string> goals;       // enterprise goal labels
  std::set<std::string> places;      // To-Be place labels
  std::set<std::string> strategies;  // To-Be strategy labels
  std::set<std::string> components;  // component names, global included
};

// Labels are normalized (case and whitespace) before they enter a set.
LabelSets label_sets(const Scenario& s);

// |a ∩ b| / |a ∪ b|, with the empty/empty case defined as 1.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

double similarity(const Scenario& a, const Scenario& b, const SimilarityWeights& w = {});

struct RetrievalHit {
  std::string id;
  double score = 0.0;

  bool operator==(const RetrievalHit&) const = default;
};

// A stored collection of scenarios. Values are snapshots: retain() returns
// the updated case base after persisting it.
class CaseBase {
 public:
  CaseBase() = default;
  explicit CaseBase(std::filesystem::path root) : root_(std::move(root)) {}

  // Reads the index and every listed case file; a missing directory yields
  // an empty case base. Throws StorageError on unreadable or corrupt files.
  static CaseBase load(const std::filesystem::path& root);

  // Writes every scenario file and the index, each via write-then-rename.
  void save() const;

  // Throws DuplicateId unless `overwrite`, ValidationError for an invalid
  // scenario, StorageError on I/O failure.
  CaseBase retain(const Scenario& s, bool overwrite = false) const;

  const std::map<std::string, Scenario, IdLess>& scenarios() const { return scenarios_; }
  const std::filesystem::path& root() const { return root_; }
  bool empty() const { return scenarios_.empty(); }
  std::size_t size() const { return scenarios_.size(); }
  const Scenario* find(std::string_view id) const;

  bool operator==(const CaseBase&) const = default;

 private:
  std::filesystem::path root_;
  std::map<std::string, Scenario, IdLess> scenarios_;
};

inline constexpr std::string_view kIndexFile = "casebase.index";
inline constexpr std::string_view kCaseExtension = ".case";

// Top k by descending score, ties by ascending id. Throws EmptyCaseBase.
std::vector<RetrievalHit> retrieve(const CaseBase& cb, const Scenario& query, std::size_t k,
                                   const SimilarityWeights& w = {});

struct ReuseDraft {
  ProcessModel model;
  IdSet review_places;  // places without a correspondence, labels kept
  GoalGraph goals;      // copied verbatim; always needs review
};

// Copies the retrieved To-Be model with places renamed through `corr`
// (retrieved place id -> new place id). A mapped place takes its label from
// `vocabulary` when that lists the new id. Fragment ids, strategies and arc
// structure are kept. Throws CorrespondenceError for a non-injective map or
// one naming places the model lacks.
ReuseDraft reuse(const Scenario& retrieved, const PlaceCorrespondence& corr,
                 std::span<const Place> vocabulary = {});

FulfilmentReport test_reuse(const ProcessModel& draft, std::size_t bound = kDefaultBound);

}  // namespace roc
