/*
 * Copyright 2026 The seqobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "seqobf/ingest.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace seqobf {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitComma(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string LineError(std::size_t line_no, const std::string& message) {
  return "line " + std::to_string(line_no) + ": " + message;
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

ParsedEvents parse_csv(std::istream& in) {
  ParsedEvents result;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError("missing header row user_id,timestamp,category");
  }
  ++line_no;
  const auto header = SplitComma(line);
  if (header.size() != 3 || header[0] != "user_id" ||
      header[1] != "timestamp" || header[2] != "category") {
    throw ParseError(LineError(
        line_no, "expected header user_id,timestamp,category, got '" + line +
                     "'"));
  }

  std::unordered_map<std::string, std::size_t> index_of;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitComma(line);
    if (fields.size() != 3) {
      throw ParseError(LineError(line_no, "expected 3 fields, got " +
                                              std::to_string(fields.size())));
    }
    if (fields[0].empty() || fields[2].empty()) {
      throw ParseError(LineError(line_no, "empty user_id or category"));
    }
    std::int64_t ts = 0;
    const auto ts_field = fields[1];
    const auto [ptr, ec] =
        std::from_chars(ts_field.data(), ts_field.data() + ts_field.size(), ts);
    if (ec != std::errc() || ptr != ts_field.data() + ts_field.size()) {
      throw ParseError(LineError(
          line_no, "unparseable timestamp '" + std::string(ts_field) + "'"));
    }
    const std::string user(fields[0]);
    auto [it, inserted] = index_of.try_emplace(user, result.traces.size());
    if (inserted) result.traces.push_back(RawTrace{user, {}});
    result.traces[it->second].events.push_back(
        Event{ts, std::string(fields[2])});
  }

  for (RawTrace& raw : result.traces) {
    const auto by_time = [](const Event& a, const Event& b) {
      return a.timestamp < b.timestamp;
    };
    if (!std::is_sorted(raw.events.begin(), raw.events.end(), by_time)) {
      result.warnings.push_back("user " + raw.user_id +
                                ": events out of order, sorted by timestamp");
      std::stable_sort(raw.events.begin(), raw.events.end(), by_time);
    }
  }
  return result;
}

ParsedEvents parse_csv(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return parse_csv(in);
}

RawTrace resample(const RawTrace& raw, std::int64_t min_interval) {
  if (min_interval <= 0) {
    throw std::invalid_argument("min interval must be positive");
  }
  RawTrace out{raw.user_id, {}};
  for (const Event& e : raw.events) {
    if (out.events.empty() ||
        e.timestamp - out.events.back().timestamp >= min_interval) {
      out.events.push_back(e);
    }
  }
  return out;
}

Encoded encode(const std::vector<RawTrace>& raws, std::size_t r,
               std::size_t min_length) {
  Alphabet alphabet(r);
  std::map<std::string, std::size_t> frequency;
  for (const RawTrace& raw : raws) {
    for (const Event& e : raw.events) ++frequency[e.category];
  }
  if (frequency.size() < r) {
    throw std::invalid_argument("only " + std::to_string(frequency.size()) +
                                " distinct categories, need r = " +
                                std::to_string(r));
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(frequency.begin(),
                                                          frequency.end());
  // std::map iteration is lexicographic, so a stable sort by count keeps
  // the lexicographic tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Encoded out;
  for (std::size_t i = 0; i < r; ++i) {
    out.symbol_of.emplace(ranked[i].first, static_cast<Symbol>(i));
  }
  for (const RawTrace& raw : raws) {
    std::vector<Symbol> symbols;
    for (const Event& e : raw.events) {
      const auto it = out.symbol_of.find(e.category);
      if (it == out.symbol_of.end()) {
        ++out.dropped_events;
      } else {
        symbols.push_back(it->second);
      }
    }
    if (symbols.size() < min_length || symbols.empty()) {
      out.rejected_users.push_back(raw.user_id);
      continue;
    }
    out.traces.emplace_back(std::move(symbols));
    out.users.push_back(raw.user_id);
  }
  return out;
}

std::vector<Trace> ReadTraces(std::istream& in) {
  std::vector<Trace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<Symbol> symbols;
    std::size_t i = 0;
    while (i < body.size()) {
      if (body[i] == ',' || body[i] == ' ' || body[i] == '\t') {
        ++i;
        continue;
      }
      unsigned value = 0;
      const auto [ptr, ec] =
          std::from_chars(body.data() + i, body.data() + body.size(), value);
      if (ec != std::errc() || value > std::numeric_limits<Symbol>::max()) {
        throw ParseError(
            LineError(line_no, "invalid symbol near column " +
                                   std::to_string(i + 1)));
      }
      symbols.push_back(static_cast<Symbol>(value));
      i = static_cast<std::size_t>(ptr - body.data());
    }
    traces.emplace_back(std::move(symbols));
  }
  return traces;
}

std::vector<Trace> ReadTraces(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return ReadTraces(in);
}

void WriteTraces(std::ostream& out, const std::vector<Trace>& traces,
                 char separator) {
  for (const Trace& t : traces) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0) out << separator;
      out << t[i];
    }
    out << '\n';
  }
}

void WriteTraces(const std::string& path, const std::vector<Trace>& traces) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const bool csv =
      path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  WriteTraces(out, traces, csv ? ',' : ' ');
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace seqobf
