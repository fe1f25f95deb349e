#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax::dimacs {

enum class ParseErrorKind {
  MalformedHeader,
  MissingHeader,
  BadToken,
  LiteralOutOfRange,
  MissingTerminator,
  ClauseCountMismatch,
  ZeroWeight,
  WeightAboveTop,
};

const char* to_string(ParseErrorKind k);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

struct ParsedCnf {
  CnfFormula formula;
  std::vector<std::string> comments;  // comment text without the leading "c "
};

struct ParsedWcnf {
  WcnfFormula formula;
  std::vector<std::string> comments;
};

ParsedCnf parse_cnf(std::string_view text);
ParsedWcnf parse_wcnf(std::string_view text);

/// True if the first header line is `p wcnf`.
bool looks_like_wcnf(std::string_view text);

std::string write_cnf(const CnfFormula& f, const std::vector<std::string>& comments = {});

/// Classic WCNF: hard clauses first (weight = top), then soft clauses in id order.
/// top = 1 + sum of soft weights.
std::string write_wcnf(const WcnfFormula& f, const std::vector<std::string>& comments = {});

}  // namespace hornmax::dimacs
