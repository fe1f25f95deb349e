#include "hornmax/dimacs.hpp"

#include <charconv>
#include <optional>
#include <sstream>

namespace hornmax::dimacs {

const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::MissingHeader: return "missing header";
    case ParseErrorKind::BadToken: return "bad token";
    case ParseErrorKind::LiteralOutOfRange: return "literal out of range";
    case ParseErrorKind::MissingTerminator: return "missing clause terminator";
    case ParseErrorKind::ClauseCountMismatch: return "clause count mismatch";
    case ParseErrorKind::ZeroWeight: return "weight zero";
    case ParseErrorKind::WeightAboveTop: return "weight above top";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : Error("line " + std::to_string(line) + ": " + to_string(kind) +
            (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

struct Token {
  std::string_view text;
  int line;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void split_ws(std::string_view line, int lineno, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back({line.substr(i, j - i), lineno});
    i = j;
  }
}

struct Lexed {
  std::vector<std::string> comments;
  std::vector<std::string_view> header;
  int header_line = 0;
  std::vector<Token> body;
  int last_line = 0;
};

Lexed lex(std::string_view text) {
  Lexed lx;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    std::string_view line = trim(raw);
    if (!line.empty()) {
      lx.last_line = lineno;
      if (line.front() == 'c' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t')) {
        lx.comments.emplace_back(trim(line.substr(1)));
      } else if (line.front() == 'p' && lx.header.empty()) {
        std::vector<Token> toks;
        split_ws(line, lineno, toks);
        for (const Token& t : toks) lx.header.push_back(t.text);
        lx.header_line = lineno;
      } else if (line.front() == 'p') {
        throw ParseError(ParseErrorKind::MalformedHeader, lineno, "duplicate header");
      } else {
        if (lx.header.empty()) throw ParseError(ParseErrorKind::MissingHeader, lineno, "");
        split_ws(line, lineno, lx.body);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lx.header.empty()) throw ParseError(ParseErrorKind::MissingHeader, lineno, "");
  return lx;
}

Lit parse_lit(const Token& t, int num_vars) {
  auto v = to_int<int>(t.text);
  if (!v) throw ParseError(ParseErrorKind::BadToken, t.line, std::string(t.text));
  if (*v == 0 || std::abs(*v) > num_vars)
    throw ParseError(ParseErrorKind::LiteralOutOfRange, t.line, std::string(t.text));
  return Lit(*v);
}

}  // namespace

bool looks_like_wcnf(std::string_view text) {
  try {
    Lexed lx = lex(text);
    return lx.header.size() >= 2 && lx.header[1] == "wcnf";
  } catch (const ParseError&) {
    return false;
  }
}

ParsedCnf parse_cnf(std::string_view text) {
  Lexed lx = lex(text);
  if (lx.header.size() != 4 || lx.header[0] != "p" || lx.header[1] != "cnf")
    throw ParseError(ParseErrorKind::MalformedHeader, lx.header_line, "expected 'p cnf <vars> <clauses>'");
  auto nv = to_int<int>(lx.header[2]);
  auto nc = to_int<long>(lx.header[3]);
  if (!nv || !nc || *nv < 0 || *nc < 0)
    throw ParseError(ParseErrorKind::MalformedHeader, lx.header_line, "bad counts");

  ParsedCnf out;
  out.comments = std::move(lx.comments);
  out.formula.num_vars = *nv;
  Clause cur;
  bool open = false;
  for (const Token& t : lx.body) {
    if (t.text == "0") {
      out.formula.clauses.push_back(std::move(cur));
      cur = Clause{};
      open = false;
      continue;
    }
    cur.lits.push_back(parse_lit(t, *nv));
    open = true;
  }
  if (open) throw ParseError(ParseErrorKind::MissingTerminator, lx.last_line, "");
  if (static_cast<long>(out.formula.clauses.size()) != *nc)
    throw ParseError(ParseErrorKind::ClauseCountMismatch, lx.header_line,
                     "header says " + std::to_string(*nc) + ", body has " +
                         std::to_string(out.formula.clauses.size()));
  return out;
}

ParsedWcnf parse_wcnf(std::string_view text) {
  Lexed lx = lex(text);
  if ((lx.header.size() != 4 && lx.header.size() != 5) || lx.header[0] != "p" || lx.header[1] != "wcnf")
    throw ParseError(ParseErrorKind::MalformedHeader, lx.header_line,
                     "expected 'p wcnf <vars> <clauses> <top>'");
  auto nv = to_int<int>(lx.header[2]);
  auto nc = to_int<long>(lx.header[3]);
  std::optional<std::uint64_t> top;
  if (lx.header.size() == 5) {
    top = to_int<std::uint64_t>(lx.header[4]);
    if (!top) throw ParseError(ParseErrorKind::MalformedHeader, lx.header_line, "bad top");
  }
  if (!nv || !nc || *nv < 0 || *nc < 0)
    throw ParseError(ParseErrorKind::MalformedHeader, lx.header_line, "bad counts");

  ParsedWcnf out;
  out.comments = std::move(lx.comments);
  out.formula.num_vars = *nv;
  long count = 0;
  std::optional<std::uint64_t> weight;
  Clause cur;
  int clause_line = 0;
  for (const Token& t : lx.body) {
    if (!weight) {
      auto w = to_int<std::uint64_t>(t.text);
      if (!w) throw ParseError(ParseErrorKind::BadToken, t.line, std::string(t.text));
      if (*w == 0) throw ParseError(ParseErrorKind::ZeroWeight, t.line, "");
      if (top && *w > *top) throw ParseError(ParseErrorKind::WeightAboveTop, t.line, std::string(t.text));
      weight = *w;
      clause_line = t.line;
      continue;
    }
    if (t.text == "0") {
      if (top && *weight == *top)
        out.formula.hard.push_back(std::move(cur));
      else
        out.formula.soft.push_back({std::move(cur), *weight});
      cur = Clause{};
      weight.reset();
      ++count;
      continue;
    }
    cur.lits.push_back(parse_lit(t, *nv));
  }
  if (weight) throw ParseError(ParseErrorKind::MissingTerminator, clause_line, "");
  if (count != *nc)
    throw ParseError(ParseErrorKind::ClauseCountMismatch, lx.header_line,
                     "header says " + std::to_string(*nc) + ", body has " + std::to_string(count));
  return out;
}

namespace {

void write_comments(std::ostringstream& os, const std::vector<std::string>& comments) {
  for (const std::string& c : comments) os << (c.empty() ? "c" : "c " + c) << '\n';
}

void write_lits(std::ostringstream& os, const Clause& c) {
  for (Lit l : c.lits) os << l.dimacs() << ' ';
  os << "0\n";
}

}  // namespace

std::string write_cnf(const CnfFormula& f, const std::vector<std::string>& comments) {
  std::ostringstream os;
  write_comments(os, comments);
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) write_lits(os, c);
  return os.str();
}

std::string write_wcnf(const WcnfFormula& f, const std::vector<std::string>& comments) {
  std::ostringstream os;
  write_comments(os, comments);
  const std::uint64_t top = 1 + f.total_soft_weight();
  os << "p wcnf " << f.num_vars << ' ' << f.hard.size() + f.soft.size() << ' ' << top << '\n';
  for (const Clause& c : f.hard) {
    os << top << ' ';
    write_lits(os, c);
  }
  for (const SoftClause& s : f.soft) {
    os << s.weight << ' ';
    write_lits(os, s.clause);
  }
  return os.str();
}

}  // namespace hornmax::dimacs
