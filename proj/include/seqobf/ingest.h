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

#ifndef SEQOBF_INGEST_H_
#define SEQOBF_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "seqobf/core.h"

namespace seqobf {

struct Event {
  std::int64_t timestamp = 0;  // seconds since epoch
  std::string category;

  friend bool operator==(const Event&, const Event&) = default;
};

struct RawTrace {
  std::string user_id;
  std::vector<Event> events;  // non-decreasing timestamps
};

struct ParsedEvents {
  std::vector<RawTrace> traces;  // in order of first appearance
  std::vector<std::string> warnings;
};

// Reads `user_id,timestamp,category` rows (header required). Blank lines
// are skipped; rows with a wrong field count or an unparseable timestamp
// throw ParseError naming the line. Out-of-order events are sorted stably
// per user and reported in `warnings`.
ParsedEvents parse_csv(std::istream& in);
ParsedEvents parse_csv(const std::string& path);

// Greedy thinning: keeps the first event and every event at least
// `min_interval` seconds after the last kept one.
RawTrace resample(const RawTrace& raw, std::int64_t min_interval);

struct Encoded {
  std::vector<Trace> traces;
  std::vector<std::string> users;              // parallel to traces
  std::map<std::string, Symbol> symbol_of;     // category -> symbol
  std::size_t dropped_events = 0;              // events outside the top r
  std::vector<std::string> rejected_users;     // shorter than min_length
};

// Maps the r most frequent categories to 0..r-1 (frequency descending,
// lexicographic tie-break) and drops every other event. Traces shorter than
// `min_length` after encoding are rejected; longer ones are kept whole.
// Throws std::invalid_argument if fewer than r categories exist.
Encoded encode(const std::vector<RawTrace>& raws, std::size_t r,
               std::size_t min_length = 0);

// Trace files: one trace per line, symbols separated by whitespace or
// commas; '#' starts a comment line.
std::vector<Trace> ReadTraces(std::istream& in);
std::vector<Trace> ReadTraces(const std::string& path);
void WriteTraces(std::ostream& out, const std::vector<Trace>& traces,
                 char separator = ' ');
void WriteTraces(const std::string& path, const std::vector<Trace>& traces);

}  // namespace seqobf

#endif  // SEQOBF_INGEST_H_
