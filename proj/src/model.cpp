// Copyright 2026 The blockelim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blockelim/model.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "blockelim/error.hpp"

namespace blockelim {

namespace {

Value magnitude(Value v) {
  if (v == INT64_MIN) return kMagnitudeLimit;
  return v < 0 ? -v : v;
}

// Saturating sum of magnitudes against kMagnitudeLimit.
class MagnitudeSum {
 public:
  void add(Value v) {
    const Value m = std::min(magnitude(v), kMagnitudeLimit);
    total_ = (total_ > kMagnitudeLimit - m) ? kMagnitudeLimit : total_ + m;
  }
  bool exceeded() const { return total_ >= kMagnitudeLimit; }

 private:
  Value total_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-empty lines with comments stripped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }
  return lines;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(line, std::string(what) + " out of 64-bit range: '" + std::string(token) + "'");
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(token) + "'");
  return value;
}

StaircaseMeta parse_meta(const Line& header, Var n) {
  StaircaseMeta meta;
  bool have_k = false, have_b = false, have_blocks = false;
  for (std::size_t t = 4; t < header.tokens.size(); ++t) {
    std::string_view tok = header.tokens[t];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(header.number, "expected key=value in meta, got '" + std::string(tok) + "'");
    std::string_view key = tok.substr(0, eq);
    std::string_view val = tok.substr(eq + 1);
    if (key == "k") {
      meta.k = parse_int<int>(val, header.number, "k");
      have_k = true;
    } else if (key == "b") {
      meta.b = parse_int<int>(val, header.number, "b");
      have_b = true;
    } else if (key == "blocks") {
      std::size_t p = 0;
      while (p <= val.size()) {
        std::size_t c = val.find(',', p);
        if (c == std::string_view::npos) c = val.size();
        meta.block_ends.push_back(parse_int<Var>(val.substr(p, c - p), header.number, "block end"));
        p = c + 1;
      }
      have_blocks = true;
    } else {
      throw ParseError(header.number, "unknown meta key '" + std::string(key) + "'");
    }
  }
  if (!have_k || !have_b || !have_blocks)
    throw ParseError(header.number, "meta requires k=, b= and blocks=");
  if (meta.k < 1 || static_cast<int>(meta.block_ends.size()) != meta.k)
    throw ParseError(header.number, "meta blocks= must list exactly k block ends");
  if (meta.b < 0) throw ParseError(header.number, "meta b must be nonnegative");
  Var prev = 0;
  for (Var e : meta.block_ends) {
    if (e <= prev) throw ParseError(header.number, "meta block ends must be strictly increasing and positive");
    prev = e;
  }
  if (prev != n) throw ParseError(header.number, "meta last block end must equal n");
  return meta;
}

}  // namespace

bool Constraint::contains(Var v) const {
  return std::binary_search(support.begin(), support.end(), Term{v, 0},
                            [](const Term& a, const Term& b) { return a.var < b.var; });
}

IlpInstance::IlpInstance(Var n, std::vector<Value> objective,
                         std::vector<Constraint> constraints,
                         std::optional<StaircaseMeta> meta)
    : n_(n),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      meta_(std::move(meta)) {
  if (n_ < 1) throw Error(ErrorKind::Invalid, "instance needs at least one variable");
  if (static_cast<Var>(objective_.size()) != n_)
    throw Error(ErrorKind::Invalid, "objective length differs from n");
  MagnitudeSum obj_sum;
  for (Value c : objective_) obj_sum.add(c);
  if (obj_sum.exceeded()) throw Error(ErrorKind::Invalid, "objective magnitudes risk 64-bit overflow");

  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    auto& row = constraints_[i];
    const std::string where = "constraint " + std::to_string(i + 1);
    if (row.support.empty()) throw Error(ErrorKind::Invalid, where + " has empty support");
    std::sort(row.support.begin(), row.support.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    MagnitudeSum row_sum;
    row_sum.add(row.rhs);
    for (std::size_t t = 0; t < row.support.size(); ++t) {
      const Term& term = row.support[t];
      if (term.var < 0 || term.var >= n_)
        throw Error(ErrorKind::Invalid, where + ": variable index " + std::to_string(term.var + 1) +
                                            " out of range 1.." + std::to_string(n_));
      if (t > 0 && row.support[t - 1].var == term.var)
        throw Error(ErrorKind::Invalid, where + ": duplicate variable index " + std::to_string(term.var + 1));
      row_sum.add(term.coef);
    }
    if (row_sum.exceeded()) throw Error(ErrorKind::Invalid, where + " magnitudes risk 64-bit overflow");
  }

  if (meta_) {
    const auto& m = *meta_;
    if (m.k < 1 || static_cast<int>(m.block_ends.size()) != m.k || m.b < 0)
      throw Error(ErrorKind::Invalid, "malformed staircase metadata");
    Var prev = 0;
    for (Var e : m.block_ends) {
      if (e <= prev) throw Error(ErrorKind::Invalid, "staircase block ends must increase");
      prev = e;
    }
    if (prev != n_) throw Error(ErrorKind::Invalid, "staircase blocks must cover 1..n");
  }
}

Assignment Assignment::from_bits(std::string_view bits) {
  Assignment x(static_cast<Var>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw Error(ErrorKind::Invalid, "assignment bits must be '0' or '1'");
    x.set(static_cast<Var>(i), bits[i] == '1');
  }
  return x;
}

Assignment Assignment::from_values(const std::vector<int>& values) {
  Assignment x(static_cast<Var>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) x.set(static_cast<Var>(i), values[i]);
  return x;
}

int Assignment::at(Var v) const {
  if (v < 0 || v >= size() || !defined_[v])
    throw Error(ErrorKind::Invalid, "variable x" + std::to_string(v + 1) + " is undefined");
  return bits_[v];
}

bool Assignment::complete() const {
  return std::all_of(defined_.begin(), defined_.end(), [](bool d) { return d; });
}

std::string Assignment::to_bits() const {
  std::string out(bits_.size(), '?');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (defined_[i]) out[i] = bits_[i] ? '1' : '0';
  return out;
}

Evaluation evaluate(const IlpInstance& instance, const Assignment& x) {
  if (x.size() != instance.num_vars())
    throw Error(ErrorKind::Invalid, "assignment length " + std::to_string(x.size()) +
                                        " differs from n=" + std::to_string(instance.num_vars()));
  if (!x.complete()) throw Error(ErrorKind::Invalid, "cannot evaluate a partial assignment");

  Evaluation ev;
  for (Var j = 0; j < instance.num_vars(); ++j)
    if (x[j]) ev.objective += instance.objective()[j];
  const auto& rows = instance.constraints();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Value lhs = 0;
    for (const Term& t : rows[i].support)
      if (x[t.var]) lhs += t.coef;
    if (lhs > rows[i].rhs) ev.violated.push_back(i);
  }
  ev.feasible = ev.violated.empty();
  return ev;
}

SolveStats& SolveStats::operator+=(const SolveStats& other) {
  nodes += other.nodes;
  leaves += other.leaves;
  table_entries += other.table_entries;
  seconds += other.seconds;
  return *this;
}

Solution Solution::optimal(Assignment x, Value objective, SolveStats stats) {
  Solution s;
  s.status = SolveStatus::Optimal;
  s.assignment = std::move(x);
  s.objective = objective;
  s.stats = stats;
  return s;
}

Solution Solution::infeasible(SolveStats stats) {
  Solution s;
  s.status = SolveStatus::Infeasible;
  s.stats = stats;
  return s;
}

IlpInstance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty instance file");

  const Line& header = lines.front();
  if (header.tokens[0] != "ilp" || header.tokens.size() < 3)
    throw ParseError(header.number, "expected header 'ilp <n> <m> [meta ...]'");
  const Var n = parse_int<Var>(header.tokens[1], header.number, "n");
  const long long m = parse_int<long long>(header.tokens[2], header.number, "m");
  if (n < 1) throw ParseError(header.number, "n must be positive");
  if (m < 0) throw ParseError(header.number, "m must be nonnegative");
  std::optional<StaircaseMeta> meta;
  if (header.tokens.size() > 3) {
    if (header.tokens[3] != "meta")
      throw ParseError(header.number, "unexpected token '" + std::string(header.tokens[3]) + "' in header");
    meta = parse_meta(header, n);
  }

  std::optional<std::vector<Value>> objective;
  std::vector<Constraint> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    const auto& tok = line.tokens;
    if (tok[0] == "obj") {
      if (objective) throw ParseError(line.number, "duplicate obj line");
      if (static_cast<Var>(tok.size()) - 1 != n)
        throw ParseError(line.number, "obj line needs exactly n=" + std::to_string(n) + " coefficients");
      std::vector<Value> c;
      c.reserve(n);
      MagnitudeSum sum;
      for (std::size_t t = 1; t < tok.size(); ++t) {
        c.push_back(parse_int<Value>(tok[t], line.number, "objective coefficient"));
        sum.add(c.back());
      }
      if (sum.exceeded()) throw ParseError(line.number, "objective magnitudes risk 64-bit overflow");
      objective = std::move(c);
    } else if (tok[0] == "con") {
      if (tok.size() < 3) throw ParseError(line.number, "expected 'con <rhs> <nnz> j:a ...'");
      Constraint row;
      row.rhs = parse_int<Value>(tok[1], line.number, "rhs");
      const long long nnz = parse_int<long long>(tok[2], line.number, "nnz");
      if (nnz < 1) throw ParseError(line.number, "constraint needs at least one term");
      if (static_cast<long long>(tok.size()) - 3 != nnz)
        throw ParseError(line.number, "nnz=" + std::to_string(nnz) + " does not match the term count");
      MagnitudeSum sum;
      sum.add(row.rhs);
      for (std::size_t t = 3; t < tok.size(); ++t) {
        auto colon = tok[t].find(':');
        if (colon == std::string_view::npos)
          throw ParseError(line.number, "expected term j:a, got '" + std::string(tok[t]) + "'");
        const Var j = parse_int<Var>(tok[t].substr(0, colon), line.number, "variable index");
        const Value a = parse_int<Value>(tok[t].substr(colon + 1), line.number, "coefficient");
        if (j < 1 || j > n)
          throw ParseError(line.number, "variable index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
        row.support.push_back({j - 1, a});
        sum.add(a);
      }
      if (sum.exceeded()) throw ParseError(line.number, "constraint magnitudes risk 64-bit overflow");
      std::sort(row.support.begin(), row.support.end(),
                [](const Term& a, const Term& b) { return a.var < b.var; });
      for (std::size_t t = 1; t < row.support.size(); ++t)
        if (row.support[t].var == row.support[t - 1].var)
          throw ParseError(line.number, "duplicate variable index " + std::to_string(row.support[t].var + 1));
      rows.push_back(std::move(row));
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!objective) throw ParseError(header.number, "missing obj line");
  if (static_cast<long long>(rows.size()) != m)
    throw ParseError(header.number, "header declares m=" + std::to_string(m) + " but file has " +
                                        std::to_string(rows.size()) + " constraints");
  try {
    return IlpInstance(n, std::move(*objective), std::move(rows), std::move(meta));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(header.number, e.what());
  }
}

std::string serialize_instance(const IlpInstance& instance) {
  std::ostringstream out;
  out << "ilp " << instance.num_vars() << ' ' << instance.num_constraints();
  if (const auto& meta = instance.meta()) {
    out << " meta k=" << meta->k << " b=" << meta->b << " blocks=";
    for (std::size_t i = 0; i < meta->block_ends.size(); ++i)
      out << (i ? "," : "") << meta->block_ends[i];
  }
  out << "\nobj";
  for (Value c : instance.objective()) out << ' ' << c;
  out << '\n';
  for (const auto& row : instance.constraints()) {
    out << "con " << row.rhs << ' ' << row.support.size();
    for (const Term& t : row.support) out << ' ' << (t.var + 1) << ':' << t.coef;
    out << '\n';
  }
  return out.str();
}

Solution parse_solution(std::string_view text) {
  const auto lines = tokenize(text);
  std::optional<bool> optimal;
  std::optional<Value> objective;
  std::optional<Assignment> x;
  for (const Line& line : lines) {
    const auto& tok = line.tokens;
    if (tok.size() != 2) throw ParseError(line.number, "expected '<key> <value>'");
    if (tok[0] == "status") {
      if (tok[1] == "optimal") optimal = true;
      else if (tok[1] == "infeasible") optimal = false;
      else throw ParseError(line.number, "status must be optimal or infeasible");
    } else if (tok[0] == "obj") {
      objective = parse_int<Value>(tok[1], line.number, "objective");
    } else if (tok[0] == "x") {
      try {
        x = Assignment::from_bits(tok[1]);
      } catch (const Error& e) {
        throw ParseError(line.number, e.what());
      }
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!optimal) throw ParseError(0, "solution file lacks a status line");
  if (!*optimal) return Solution::infeasible();
  if (!objective || !x) throw ParseError(0, "optimal solution needs obj and x lines");
  return Solution::optimal(std::move(*x), *objective);
}

std::string serialize_solution(const Solution& solution) {
  if (solution.status == SolveStatus::Infeasible) return "status infeasible\n";
  std::ostringstream out;
  out << "status optimal\nobj " << *solution.objective << "\nx " << solution.assignment->to_bits() << '\n';
  return out.str();
}

}  // namespace blockelim
