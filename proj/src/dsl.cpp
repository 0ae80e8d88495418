#include "roc/dsl.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

namespace roc {

ParseError::ParseError(SourceSpan where, std::string expected_text, std::string found_text)
    : Error(where.file + ":" + std::to_string(where.line) + ":" + std::to_string(where.column) +
            ": expected " + expected_text + ", found " + found_text),
      span(std::move(where)),
      expected(std::move(expected_text)),
      found(std::move(found_text)) {}

namespace {

enum class TokenKind { kWord, kInteger, kString, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // decoded contents for strings
  SourceSpan span;
};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '.'; }

std::string describe_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u >= 0x21 && u < 0x7f) return std::string("'") + c + "'";
  char buf[16];
  std::snprintf(buf, sizeof buf, "byte 0x%02X", u);
  return buf;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kString: {
      std::string shown = t.text.size() > 32 ? t.text.substr(0, 32) + "..." : t.text;
      return "string " + quote(shown);
    }
    case TokenKind::kInteger:
      return "integer " + t.text;
    case TokenKind::kWord:
    case TokenKind::kPunct:
      break;
  }
  return "'" + t.text + "'";
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.span = here();
      if (pos_ >= text_.size()) {
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[pos_];
      if (is_alpha(c)) {
        t.kind = TokenKind::kWord;
        t.text = word();
      } else if (is_digit(c)) {
        t.kind = TokenKind::kInteger;
        while (pos_ < text_.size() && is_digit(text_[pos_])) t.text.push_back(advance());
      } else if (c == '"') {
        t.kind = TokenKind::kString;
        t.text = string_literal();
      } else if (c == '-' && peek(1) == '>') {
        t.kind = TokenKind::kPunct;
        t.text = "->";
        advance();
        advance();
      } else if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == ';' || c == ':') {
        t.kind = TokenKind::kPunct;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(t.span, "token", describe_byte(c));
      }
      out.push_back(std::move(t));
    }
  }

 private:
  SourceSpan here() const { return {std::string(file_), line_, column_}; }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  // Words may contain inner hyphens followed by a letter (decomposes-and,
  // map-all); identifiers are checked separately by the parser.
  std::string word() {
    std::string out;
    while (true) {
      while (pos_ < text_.size() && is_word_char(text_[pos_])) out.push_back(advance());
      if (peek(0) == '-' && is_alpha(peek(1))) {
        out.push_back(advance());
        continue;
      }
      return out;
    }
  }

  static int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  std::string string_literal() {
    advance();  // opening quote
    std::string out;
    while (true) {
      SourceSpan at = here();
      if (pos_ >= text_.size()) throw ParseError(at, "closing '\"'", "end of input");
      char c = text_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        SourceSpan esc = here();
        if (pos_ >= text_.size()) throw ParseError(esc, "escape sequence", "end of input");
        char e = advance();
        switch (e) {
          case '"':
          case '\\':
            out.push_back(e);
            break;
          case 'n':
            out.push_back('\n');
            break;
          case 't':
            out.push_back('\t');
            break;
          case 'r':
            out.push_back('\r');
            break;
          case 'x': {
            int hi = hex_value(peek(0));
            int lo = hi < 0 ? -1 : hex_value(peek(1));
            if (hi < 0 || lo < 0) {
              SourceSpan digits = here();
              std::string found = pos_ < text_.size() ? describe_byte(text_[pos_]) : "end of input";
              if (hi >= 0) {
                advance();
                digits = here();
                found = pos_ < text_.size() ? describe_byte(text_[pos_]) : "end of input";
              }
              throw ParseError(digits, "two hex digits", found);
            }
            advance();
            advance();
            out.push_back(static_cast<char>(hi * 16 + lo));
            break;
          }
          default:
            throw ParseError(esc, "escape sequence", describe_byte(e));
        }
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20 && c != '\t') {
        throw ParseError(at, "closing '\"'", describe_byte(c));
      }
      out.push_back(advance());
    }
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view file) : tokens_(Lexer(text, file).run()) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }

  bool at_end() const { return peek().kind == TokenKind::kEnd; }
  bool at_word(std::string_view w) const { return peek().kind == TokenKind::kWord && peek().text == w; }
  bool at_punct(std::string_view p) const { return peek().kind == TokenKind::kPunct && peek().text == p; }

  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }
  bool accept_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(std::string expected) const { fail_at(peek(), std::move(expected)); }
  [[noreturn]] static void fail_at(const Token& t, std::string expected) {
    throw ParseError(t.span, std::move(expected), describe(t));
  }

  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("'" + std::string(w) + "'");
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("'" + std::string(p) + "'");
  }
  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  const Token& expect_id(std::string_view what) {
    if (peek().kind != TokenKind::kWord || !is_valid_id(peek().text)) fail(std::string(what));
    return next();
  }

  std::string expect_string(std::string_view what) {
    if (peek().kind != TokenKind::kString) fail(std::string(what));
    return next().text;
  }

  std::uint32_t expect_count() {
    const Token& t = peek();
    std::uint32_t value = 0;
    if (t.kind != TokenKind::kInteger) fail("token count");
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail("token count below 2^32");
    next();
    return value;
  }

  // One of the given keywords; returns its index.
  std::size_t expect_one_of(std::initializer_list<std::string_view> words, std::string expected) {
    std::size_t i = 0;
    for (auto w : words) {
      if (accept_word(w)) return i;
      ++i;
    }
    fail(std::move(expected));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

IdSet parse_place_group(Parser& p) {
  IdSet out;
  if (p.accept_punct("(")) {
    do {
      out.insert(p.expect_id("place id").text);
    } while (p.accept_punct(","));
    p.expect_punct(")");
  } else {
    out.insert(p.expect_id("'(' or place id").text);
  }
  return out;
}

IdSet parse_id_list(Parser& p, std::string_view what) {
  IdSet out;
  do {
    out.insert(p.expect_id(what).text);
  } while (p.accept_punct(","));
  return out;
}

Fragment parse_fragment(Parser& p) {
  Fragment f;
  f.id = p.expect_id("fragment id").text;
  p.expect_punct(":");
  f.sources = parse_place_group(p);
  p.expect_punct("->");
  f.targets = parse_place_group(p);
  p.expect_word("strategy");
  f.strategy.text = p.expect_string("strategy string");
  f.strategy.deficiency = StrategyLabel::default_deficiency(f.strategy.text);

  bool seen_flag = false, seen_problems = false, seen_resolves = false;
  while (!p.accept_punct(";")) {
    if (!seen_flag && (p.at_word("deficient") || p.at_word("adequate"))) {
      f.strategy.deficiency = p.next().text == "deficient";
      seen_flag = true;
    } else if (!seen_problems && p.accept_word("problems")) {
      f.problems = parse_id_list(p, "problem id");
      seen_problems = true;
    } else if (!seen_resolves && p.accept_word("resolves")) {
      f.resolves = parse_id_list(p, "problem id");
      seen_resolves = true;
    } else {
      p.fail("'deficient', 'adequate', 'problems', 'resolves' or ';'");
    }
  }
  return f;
}

ProcessModel parse_process_impl(std::string_view text, std::string_view file) {
  Parser p(text, file);
  ProcessModel model;
  p.expect_word("process");
  model.name = p.expect_string("model name string");
  p.expect_word("kind");
  model.kind = p.expect_one_of({"asis", "tobe"}, "'asis' or 'tobe'") == 0 ? ModelKind::kAsIs : ModelKind::kToBe;
  p.expect_punct("{");

  bool seen_marking = false;
  while (!p.accept_punct("}")) {
    if (p.accept_word("place")) {
      Place place;
      place.id = p.expect_id("place id").text;
      place.label = p.expect_string("place label string");
      if (p.accept_word("start")) {
        place.role = PlaceRole::kStart;
      } else if (p.accept_word("exit")) {
        place.role = PlaceRole::kExit;
      }
      p.expect_punct(";");
      model.places.push_back(std::move(place));
    } else if (p.at_word("marking")) {
      if (seen_marking) p.fail("a single marking block");
      p.next();
      seen_marking = true;
      p.expect_punct("{");
      while (!p.accept_punct("}")) {
        const Token& place = p.expect_id("place id or '}'");
        if (model.initial_marking.at(place.text) != 0) Parser::fail_at(place, "place not yet marked");
        p.expect_punct(":");
        std::uint32_t n = p.expect_count();
        model.initial_marking.set(place.text, n);
        p.accept_punct(",");
      }
      p.accept_punct(";");
    } else if (p.accept_word("fragment")) {
      model.fragments.push_back(parse_fragment(p));
    } else {
      p.fail("'place', 'marking', 'fragment' or '}'");
    }
  }
  p.expect_end();
  return model;
}

RealisationRef parse_realisation(Parser& p) {
  RealisationRef ref;
  if (p.accept_word("model")) {
    ref.model = p.expect_string("model name string");
    return ref;
  }
  ref.fragment = p.expect_id("fragment id or 'model'").text;
  if (p.accept_word("of")) ref.model = p.expect_string("model name string");
  return ref;
}

GoalGraph parse_goals_impl(std::string_view text, std::string_view file) {
  Parser p(text, file);
  GoalGraph g;
  p.expect_word("goals");
  p.expect_punct("{");
  while (!p.accept_punct("}")) {
    if (p.accept_word("stakeholder")) {
      Stakeholder s;
      s.id = p.expect_id("stakeholder id").text;
      s.name = p.expect_string("stakeholder name string");
      if (p.peek().kind == TokenKind::kString) s.category = p.next().text;
      p.expect_punct(";");
      g.stakeholders.push_back(std::move(s));
    } else if (p.accept_word("node")) {
      GoalNode n;
      n.id = p.expect_id("node id").text;
      static constexpr NodeKind kinds[] = {NodeKind::kNeed, NodeKind::kGoal, NodeKind::kObjective,
                                           NodeKind::kRequirement};
      n.kind = kinds[p.expect_one_of({"need", "goal", "objective", "requirement"},
                                     "'need', 'goal', 'objective' or 'requirement'")];
      n.label = p.expect_string("node label string");
      if (p.accept_word("strategic")) {
        n.level = GoalLevel::kStrategic;
      } else if (p.accept_word("operational")) {
        n.level = GoalLevel::kOperational;
      }
      if (p.accept_word("enterprise")) {
        n.owner = Owner::kEnterprise;
      } else if (p.accept_word("erp")) {
        n.owner = Owner::kErp;
      }
      if (p.accept_word("change")) n.change = true;
      p.expect_punct(";");
      g.nodes.push_back(std::move(n));
    } else if (p.accept_word("edge")) {
      GoalEdge e;
      e.from = p.expect_id("node id").text;
      switch (p.expect_one_of({"derives", "decomposes-and", "decomposes-or", "supports", "determinedby",
                               "realisedby"},
                              "edge kind")) {
        case 0:
          e.kind = EdgeKind::kDerivesFrom;
          e.to = p.expect_id("node id").text;
          break;
        case 1:
          e.kind = EdgeKind::kDecomposes;
          e.to = p.expect_id("node id").text;
          break;
        case 2:
          e.kind = EdgeKind::kDecomposes;
          e.decomposition = Decomposition::kOr;
          e.to = p.expect_id("node id").text;
          break;
        case 3:
          e.kind = EdgeKind::kSupports;
          e.to = p.expect_id("node id").text;
          break;
        case 4:
          e.kind = EdgeKind::kDeterminedBy;
          e.to = p.expect_id("stakeholder id").text;
          break;
        default:
          e.kind = EdgeKind::kRealisedBy;
          e.realisation = parse_realisation(p);
          break;
      }
      p.expect_punct(";");
      g.edges.push_back(std::move(e));
    } else {
      p.fail("'stakeholder', 'node', 'edge' or '}'");
    }
  }
  p.expect_end();
  return g;
}

std::string escape_byte(unsigned char u) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02X", u);
  return buf;
}

}  // namespace

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default: {
        auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7f) {
          out += escape_byte(u);
        } else {
          out.push_back(c);
        }
      }
    }
  }
  return out + "\"";
}

ProcessModel parse_process_unchecked(std::string_view text, std::string_view file) {
  return parse_process_impl(text, file);
}

ProcessModel parse_process(std::string_view text, std::string_view file) {
  ProcessModel model = parse_process_impl(text, file);
  if (auto v = validate_net(model); !v.empty()) throw ValidationError(std::move(v));
  return model;
}

GoalGraph parse_goals_unchecked(std::string_view text, std::string_view file) {
  return parse_goals_impl(text, file);
}

GoalGraph parse_goals(std::string_view text, std::string_view file) {
  GoalGraph g = parse_goals_impl(text, file);
  if (auto v = validate_graph(g); !v.empty()) throw ValidationError(std::move(v));
  return g;
}

std::vector<Problem> parse_registry(std::string_view text, std::string_view file) {
  Parser p(text, file);
  std::vector<Problem> out;
  IdSet seen;
  while (!p.at_end()) {
    p.expect_word("problem");
    const Token& id = p.expect_id("problem id");
    if (!seen.insert(id.text).second) Parser::fail_at(id, "unique problem id");
    Problem problem;
    problem.id = id.text;
    problem.category = p.expect_string("category string");
    problem.description = p.expect_string("description string");
    p.accept_punct(";");
    out.push_back(std::move(problem));
  }
  return out;
}

ComponentMap parse_components(std::string_view text, std::string_view file) {
  Parser p(text, file);
  ComponentMap cmap;
  auto names = [&](std::set<std::string>& into) {
    do {
      into.insert(p.expect_string("component name string"));
    } while (p.accept_punct(","));
    p.accept_punct(";");
  };
  while (!p.at_end()) {
    if (p.accept_word("map")) {
      const Token& id = p.expect_id("fragment id");
      names(cmap.entries[id.text]);
    } else if (p.accept_word("map-all")) {
      names(cmap.global);
    } else {
      p.fail("'map' or 'map-all'");
    }
  }
  return cmap;
}

PlaceCorrespondence parse_correspondence(std::string_view text, std::string_view file) {
  Parser p(text, file);
  PlaceCorrespondence corr;
  while (!p.at_end()) {
    p.expect_word("corr");
    const Token& from = p.expect_id("As-Is place id");
    if (corr.pairs.contains(from.text)) Parser::fail_at(from, "As-Is place not yet mapped");
    corr.pairs[from.text] = p.expect_id("To-Be place id").text;
    p.accept_punct(";");
  }
  return corr;
}

RefinementTree parse_refinement(std::string_view text, std::string_view file) {
  Parser p(text, file);
  RefinementTree tree;
  while (!p.at_end()) {
    p.expect_word("refine");
    const Token& parent = p.expect_id("parent fragment id");
    if (tree.children.contains(parent.text)) Parser::fail_at(parent, "parent without an earlier block");
    auto& kids = tree.children[parent.text];
    p.expect_punct("{");
    while (!p.accept_punct("}")) {
      kids.push_back(p.expect_id("child fragment id or '}'").text);
      p.expect_punct(";");
    }
  }
  return tree;
}

namespace {

std::string group(const IdSet& ids) { return "(" + join(ids) + ")"; }

}  // namespace

std::string serialize(const ProcessModel& model) {
  std::string out = "process " + quote(model.name) + " kind " + std::string(to_string(model.kind)) + " {\n";
  for (const auto& p : model.places) {
    out += "  place " + p.id + " " + quote(p.label);
    if (p.role != PlaceRole::kIntermediate) out += " " + std::string(to_string(p.role));
    out += ";\n";
  }
  if (!model.initial_marking.empty()) {
    out += "  marking {";
    for (const auto& [place, n] : model.initial_marking.tokens()) out += " " + place + ":" + std::to_string(n);
    out += " };\n";
  }
  for (const auto& f : model.fragments) {
    out += "  fragment " + f.id + " : " + group(f.sources) + " -> " + group(f.targets) + " strategy " +
           quote(f.strategy.text);
    if (f.strategy.deficiency != StrategyLabel::default_deficiency(f.strategy.text)) {
      out += f.strategy.deficiency ? " deficient" : " adequate";
    }
    if (!f.problems.empty()) out += " problems " + join(f.problems);
    if (!f.resolves.empty()) out += " resolves " + join(f.resolves);
    out += ";\n";
  }
  return out + "}\n";
}

std::string serialize(const GoalGraph& g) {
  std::string out = "goals {\n";
  for (const auto& s : g.stakeholders) {
    out += "  stakeholder " + s.id + " " + quote(s.name);
    if (!s.category.empty()) out += " " + quote(s.category);
    out += ";\n";
  }
  for (const auto& n : g.nodes) {
    out += "  node " + n.id + " " + std::string(to_string(n.kind)) + " " + quote(n.label);
    if (n.level != GoalLevel::kUnspecified) out += " " + std::string(to_string(n.level));
    if (n.owner == Owner::kErp) out += " erp";
    if (n.change) out += " change";
    out += ";\n";
  }
  for (const auto& e : g.edges) {
    out += "  edge " + e.from + " ";
    switch (e.kind) {
      case EdgeKind::kDecomposes:
        out += e.decomposition == Decomposition::kAnd ? "decomposes-and " : "decomposes-or ";
        out += e.to;
        break;
      case EdgeKind::kRealisedBy:
        out += "realisedby " + to_string(e.realisation);
        break;
      default:
        out += std::string(to_string(e.kind)) + " " + e.to;
        break;
    }
    out += ";\n";
  }
  return out + "}\n";
}

std::string serialize(std::span<const Problem> registry) {
  std::string out;
  for (const auto& p : registry) {
    out += "problem " + p.id + " " + quote(p.category) + " " + quote(p.description) + "\n";
  }
  return out;
}

std::string serialize(const ComponentMap& cmap) {
  std::string out;
  auto names = [](const std::set<std::string>& set) {
    std::string s;
    bool first = true;
    for (const auto& n : set) {
      if (!first) s += ", ";
      s += quote(n);
      first = false;
    }
    return s;
  };
  for (const auto& [fragment, components] : cmap.entries) {
    if (!components.empty()) out += "map " + fragment + " " + names(components) + "\n";
  }
  if (!cmap.global.empty()) out += "map-all " + names(cmap.global) + "\n";
  return out;
}

std::string serialize(const PlaceCorrespondence& corr) {
  std::string out;
  for (const auto& [from, to] : corr.pairs) out += "corr " + from + " " + to + "\n";
  return out;
}

std::string serialize(const RefinementTree& tree) {
  std::string out;
  for (const auto& [parent, kids] : tree.children) {
    out += "refine " + parent + " {";
    for (const auto& k : kids) out += " " + k + ";";
    out += " }\n";
  }
  return out;
}

}  // namespace roc
