#include "roc/casebase.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "roc/dsl.hpp"
#include "roc/interchange.hpp"

namespace roc {

Scenario make_scenario(std::string id, std::string name, GoalGraph goals, ProcessModel as_is,
                       ProcessModel to_be, PlaceCorrespondence corr, std::vector<Problem> problems,
                       ComponentMap cmap, std::map<std::string, std::string> metadata) {
  Scenario s;
  s.report = align(as_is, to_be, corr, problems);
  s.id = std::move(id);
  s.name = std::move(name);
  s.goals = std::move(goals);
  s.as_is = std::move(as_is);
  s.to_be = std::move(to_be);
  s.correspondence = std::move(corr);
  s.problems = std::move(problems);
  s.component_map = std::move(cmap);
  s.metadata = std::move(metadata);
  return s;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  if (!is_valid_id(s.id)) out.push_back({"InvalidId", s.id, "scenario id '" + s.id + "' is not an identifier"});
  for (auto v : validate_graph(s.goals)) out.push_back(std::move(v));
  for (auto v : validate_net(s.as_is)) out.push_back(std::move(v));
  for (auto v : validate_net(s.to_be)) out.push_back(std::move(v));
  if (!out.empty()) return out;
  try {
    if (align(s.as_is, s.to_be, s.correspondence, s.problems) != s.report) {
      out.push_back({"InconsistentReport", s.id, "stored report differs from a fresh alignment"});
    }
  } catch (const Error& e) {
    out.push_back({"InconsistentReport", s.id, e.what()});
  }
  return out;
}

SimilarityWeights SimilarityWeights::normalized() const {
  double parts[] = {goals, places, strategies, components};
  double sum = 0.0;
  for (double p : parts) {
    if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("similarity weights must be nonnegative");
    sum += p;
  }
  if (sum <= 0.0) throw std::invalid_argument("at least one similarity weight must be positive");
  return {goals / sum, places / sum, strategies / sum, components / sum};
}

LabelSets label_sets(const Scenario& s) {
  LabelSets out;
  for (const auto& n : s.goals.nodes) {
    if (n.kind == NodeKind::kGoal && n.owner == Owner::kEnterprise) out.goals.insert(normalize_label(n.label));
  }
  for (const auto& p : s.to_be.places) out.places.insert(normalize_label(p.label));
  for (const auto& f : s.to_be.fragments) out.strategies.insert(normalize_label(f.strategy.text));
  for (const auto& [_, names] : s.component_map.entries) {
    for (const auto& n : names) out.components.insert(normalize_label(n));
  }
  for (const auto& n : s.component_map.global) out.components.insert(normalize_label(n));
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double similarity(const Scenario& a, const Scenario& b, const SimilarityWeights& w) {
  SimilarityWeights n = w.normalized();
  LabelSets la = label_sets(a), lb = label_sets(b);
  double score = n.goals * jaccard(la.goals, lb.goals) + n.places * jaccard(la.places, lb.places) +
                 n.strategies * jaccard(la.strategies, lb.strategies) +
                 n.components * jaccard(la.components, lb.components);
  return std::clamp(score, 0.0, 1.0);
}

const Scenario* CaseBase::find(std::string_view id) const {
  auto it = scenarios_.find(id);
  return it == scenarios_.end() ? nullptr : &it->second;
}

namespace {

namespace fs = std::filesystem;

// Advisory exclusive lock on <root>/.lock for the lifetime of the object.
class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& root) {
    fs::path lock = root / ".lock";
    fd_ = ::open(lock.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StorageError("cannot open lock file " + lock.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw StorageError("cannot lock " + lock.string());
    }
  }
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

void write_atomically(const fs::path& target, const std::string& contents) {
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw StorageError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StorageError("cannot replace " + target.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string case_file_name(const std::string& id) { return id + std::string(kCaseExtension); }

std::string index_text(const std::map<std::string, Scenario, IdLess>& scenarios) {
  Json list = Json::array();
  for (const auto& [id, s] : scenarios) {
    list.push_back({{"id", id}, {"name", s.name}, {"file", case_file_name(id)}});
  }
  return dump(Json{{"scenarios", std::move(list)}});
}

void ensure_directory(const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec || !fs::is_directory(root)) throw StorageError("cannot create case-base directory " + root.string());
}

}  // namespace

CaseBase CaseBase::load(const fs::path& root) {
  CaseBase cb(root);
  fs::path index = root / kIndexFile;
  if (!fs::exists(index)) return cb;
  try {
    Json j = parse_json(read_file(index), index.string());
    const Json& list = j.at("scenarios");
    for (const auto& entry : list) {
      std::string id = entry.at("id").get<std::string>();
      std::string file = entry.at("file").get<std::string>();
      if (!is_valid_id(id) || file != case_file_name(id)) throw StorageError("bad index entry for " + id);
      fs::path path = root / file;
      Scenario s = parse_scenario_json(read_file(path), path.string());
      if (s.id != id) throw StorageError(path.string() + " holds scenario " + s.id + ", expected " + id);
      cb.scenarios_.emplace(id, std::move(s));
    }
  } catch (const ParseError& e) {
    throw StorageError(std::string("corrupt case base: ") + e.what());
  } catch (const Json::exception& e) {
    throw StorageError("corrupt case-base index " + index.string() + ": " + e.what());
  }
  return cb;
}

void CaseBase::save() const {
  if (root_.empty()) throw StorageError("case base has no storage location");
  ensure_directory(root_);
  DirectoryLock lock(root_);
  for (const auto& [id, s] : scenarios_) write_atomically(root_ / case_file_name(id), dump(to_json(s)));
  write_atomically(root_ / kIndexFile, index_text(scenarios_));
}

CaseBase CaseBase::retain(const Scenario& s, bool overwrite) const {
  if (auto v = validate_scenario(s); !v.empty()) throw ValidationError(std::move(v));
  if (scenarios_.contains(s.id) && !overwrite) throw DuplicateId("scenario " + s.id + " already stored");
  CaseBase next = *this;
  next.scenarios_.insert_or_assign(s.id, s);
  if (!root_.empty()) {
    ensure_directory(root_);
    DirectoryLock lock(root_);
    write_atomically(root_ / case_file_name(s.id), dump(to_json(s)));
    write_atomically(root_ / kIndexFile, index_text(next.scenarios_));
  }
  return next;
}

std::vector<RetrievalHit> retrieve(const CaseBase& cb, const Scenario& query, std::size_t k,
                                   const SimilarityWeights& w) {
  if (cb.empty()) throw EmptyCaseBase("the case base holds no scenarios");
  if (k == 0) throw std::invalid_argument("k must be positive");
  std::vector<RetrievalHit> hits;
  for (const auto& [id, s] : cb.scenarios()) hits.push_back({id, similarity(query, s, w)});
  std::stable_sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return IdLess{}(a.id, b.id);
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

ReuseDraft reuse(const Scenario& retrieved, const PlaceCorrespondence& corr, std::span<const Place> vocabulary) {
  const ProcessModel& source = retrieved.to_be;
  IdSet images;
  for (const auto& [from, to] : corr.pairs) {
    if (!source.find_place(from)) throw CorrespondenceError("correspondence names unknown place " + from);
    if (!is_valid_id(to)) throw CorrespondenceError("'" + to + "' is not a place identifier");
    if (!images.insert(to).second) {
      throw CorrespondenceError("correspondence is not injective: " + to + " is the image of two places");
    }
  }

  ReuseDraft draft;
  std::map<std::string, std::string, IdLess> rename;
  IdSet new_ids;
  for (const auto& p : source.places) {
    auto it = corr.pairs.find(p.id);
    Place renamed = p;
    if (it == corr.pairs.end()) {
      draft.review_places.insert(p.id);
    } else {
      renamed.id = it->second;
      auto vocab = std::find_if(vocabulary.begin(), vocabulary.end(),
                                [&](const Place& v) { return v.id == renamed.id; });
      if (vocab != vocabulary.end()) renamed.label = vocab->label;
    }
    if (!new_ids.insert(renamed.id).second) {
      throw CorrespondenceError("place " + renamed.id + " would appear twice in the draft");
    }
    rename[p.id] = renamed.id;
    draft.model.places.push_back(std::move(renamed));
  }

  auto map_ids = [&](const IdSet& ids) {
    IdSet out;
    for (const auto& id : ids) {
      auto it = rename.find(id);
      out.insert(it == rename.end() ? id : it->second);
    }
    return out;
  };

  draft.model.name = source.name;
  draft.model.kind = source.kind;
  for (const auto& f : source.fragments) {
    Fragment copy = f;
    copy.sources = map_ids(f.sources);
    copy.targets = map_ids(f.targets);
    draft.model.fragments.push_back(std::move(copy));
  }
  for (const auto& [place, n] : source.initial_marking.tokens()) {
    auto it = rename.find(place);
    draft.model.initial_marking.set(it == rename.end() ? place : it->second, n);
  }
  draft.goals = retrieved.goals;
  return draft;
}

FulfilmentReport test_reuse(const ProcessModel& draft, std::size_t bound) {
  return check_fulfilment(draft, bound);
}

}  // namespace roc
