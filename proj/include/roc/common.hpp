#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roc {

// Orders identifiers so that digit runs compare numerically: PF2 < PF10,
// PF1 < PF1.1 < PF1.2 < PF1.10.
struct IdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

using IdSet = std::set<std::string, IdLess>;

// True for [A-Za-z][A-Za-z0-9_.]*
bool is_valid_id(std::string_view id);

// Trims, collapses whitespace runs to one space, lowercases ASCII.
std::string normalize_label(std::string_view text);

std::string join(const IdSet& ids, std::string_view sep = ", ");
std::string join(const std::vector<std::string>& items, std::string_view sep = ", ");
std::string join(const std::set<std::string>& items, std::string_view sep = ", ");

// A structural finding. Violations are data; operations that check
// invariants return lists of them instead of throwing.
struct Violation {
  std::string code;
  std::string subject;
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotEnabled : Error {
  using Error::Error;
};
struct UnknownFragment : Error {
  using Error::Error;
};
struct UnknownNode : Error {
  using Error::Error;
};
struct ModelKindError : Error {
  using Error::Error;
};
struct CorrespondenceError : Error {
  using Error::Error;
};
struct UnknownProblemId : Error {
  using Error::Error;
};
struct EmptyCaseBase : Error {
  using Error::Error;
};
struct DuplicateId : Error {
  using Error::Error;
};
struct StorageError : Error {
  using Error::Error;
};
struct UnknownFormat : Error {
  using Error::Error;
};

// Thrown by the checked parsers when the text is well formed but the
// resulting value breaks an invariant. Carries every finding; what()
// describes the first one.
struct ValidationError : Error {
  explicit ValidationError(std::vector<Violation> found);
  std::vector<Violation> violations;
};

}  // namespace roc
