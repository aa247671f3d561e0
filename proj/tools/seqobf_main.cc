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

// seqobf command-line front end. Every subcommand first prints its resolved
// configuration as "# key=value" lines, then its results.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqobf/bounds.h"
#include "seqobf/core.h"
#include "seqobf/detect.h"
#include "seqobf/engines.h"
#include "seqobf/ingest.h"
#include "seqobf/kernels.h"
#include "seqobf/sim.h"
#include "seqobf/superstring.h"

namespace {

using seqobf::Symbol;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Thrown for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv("SEQOBF_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SEQOBF_SEED is not an unsigned integer");
    }
  }
  return 1;
}

class ConfigPrinter {
 public:
  explicit ConfigPrinter(std::ostream& out) : out_(out) {
    out_.precision(15);
  }
  template <typename T>
  ConfigPrinter& operator()(const std::string& key, const T& value) {
    out_ << "# " << key << '=' << value << '\n';
    return *this;
  }

 private:
  std::ostream& out_;
};

std::string JoinDoubles(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(15);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) os << ',';
    os << values[i];
  }
  return os.str();
}

std::vector<Symbol> ParseSymbols(const std::string& text) {
  std::istringstream in(text);
  const auto traces = seqobf::ReadTraces(in);
  if (traces.size() != 1 || traces[0].empty()) {
    throw UsageError("--pattern must be one non-empty list of symbols");
  }
  return traces[0].vec();
}

std::size_t ParseGap(const std::string& text) {
  if (text == "inf" || text == "unbounded") return seqobf::kUnboundedGap;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used == text.size() && value >= 1) return value;
  } catch (const std::exception&) {
  }
  throw UsageError("--h must be a positive integer or 'inf'");
}

std::size_t InferAlphabet(const std::vector<seqobf::Trace>& traces) {
  std::size_t r = 2;
  for (const auto& t : traces) {
    for (Symbol s : t.symbols()) r = std::max<std::size_t>(r, s + 1u);
  }
  return r;
}

// --- gen-superstring -------------------------------------------------------

struct GenOptions {
  std::size_t r = 2;
  std::size_t l = 2;
  std::string kind = "shortest";
};

void RunGen(const GenOptions& opt, std::uint64_t seed) {
  const auto kind = seqobf::ParseKind(opt.kind);
  if (!kind) throw UsageError("--kind must be shortest or concat");
  ConfigPrinter config(std::cout);
  config("command", "gen-superstring")("r", opt.r)("l", opt.l)(
      "kind", seqobf::KindName(*kind))("seed", seed);
  seqobf::RandomSource source(seed, 0);
  const auto s = seqobf::MakeSuperstring(*kind, opt.r, opt.l, source);
  if (*kind == seqobf::SuperstringKind::kShortest) config("rotation", s.rotation);
  seqobf::WriteTraces(std::cout, {seqobf::Trace(s.symbols)});
}

// --- obfuscate -------------------------------------------------------------

struct ObfuscateOptions {
  std::string method = "sl_sbu";
  double p_obf = 0.1;
  double gamma = 0.1;
  std::size_t h = 10;
  std::size_t l = 2;
  std::optional<std::size_t> r;
  double a_n = 0;
  std::string in;
  std::string out;
};

void RunObfuscate(const ObfuscateOptions& opt, std::uint64_t seed) {
  const auto method = seqobf::ParseMethod(opt.method);
  if (!method) throw UsageError("unknown --method '" + opt.method + "'");
  const auto traces = seqobf::ReadTraces(opt.in);
  seqobf::EngineConfig engine;
  engine.method = *method;
  engine.r = opt.r.value_or(InferAlphabet(traces));
  engine.p_obf = opt.p_obf;
  engine.gamma = opt.gamma;
  engine.gap = opt.h;
  engine.order = opt.l;
  if (*method == seqobf::Method::kTwoStage) {
    engine.stage1_noise = opt.a_n;
    engine.stage2_noise = opt.p_obf;
  }
  engine.validate();

  ConfigPrinter config(std::cout);
  config("command", "obfuscate")("method", seqobf::MethodName(*method))(
      "r", engine.r)("p_obf", engine.p_obf)("gamma", engine.gamma)(
      "h", engine.gap)("l", engine.order)("a_n", engine.stage1_noise)(
      "seed", seed)("in", opt.in)("out", opt.out.empty() ? "-" : opt.out)(
      "traces", traces.size());

  std::vector<seqobf::Trace> out;
  out.reserve(traces.size());
  for (std::size_t u = 0; u < traces.size(); ++u) {
    seqobf::RandomSource source(seed, u);
    out.push_back(seqobf::obfuscate(traces[u], engine, source));
  }
  if (opt.out.empty() || opt.out == "-") {
    seqobf::WriteTraces(std::cout, out);
  } else {
    seqobf::WriteTraces(opt.out, out);
  }
}

// --- detect ----------------------------------------------------------------

struct DetectOptions {
  std::string trace_file;
  std::string pattern;
  std::string h = "1";
  std::optional<std::size_t> r;
};

void RunDetect(const DetectOptions& opt) {
  seqobf::Pattern pattern{ParseSymbols(opt.pattern), ParseGap(opt.h)};
  const auto traces = seqobf::ReadTraces(opt.trace_file);
  std::size_t r = opt.r.value_or(InferAlphabet(traces));
  for (Symbol s : pattern.symbols) r = std::max<std::size_t>(r, s + 1u);
  const seqobf::Alphabet alphabet(r);

  ConfigPrinter config(std::cout);
  config("command", "detect")("trace_file", opt.trace_file)(
      "pattern", opt.pattern)("h", opt.h)("r", r)("traces", traces.size());

  std::cout << "trace,match,first_occurrence\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const bool match = seqobf::has_pattern(traces[i], pattern, alphabet);
    std::cout << i << ',' << (match ? "true" : "false") << ',';
    if (pattern.gap == 1) {
      const auto t = seqobf::first_occurrence(traces[i].symbols(), pattern);
      if (t) std::cout << *t;
    }
    std::cout << '\n';
  }
}

// --- bounds ----------------------------------------------------------------

struct BoundsOptions {
  std::size_t m = 1000;
  std::size_t r = 20;
  std::size_t l = 2;
  std::size_t h = 10;
  double p = 0.1;
  std::string which = "slsbu";
  double n = 1e4;
  double beta = 0.5;
  double theta = 0.25;
};

void RunBounds(const BoundsOptions& opt) {
  ConfigPrinter config(std::cout);
  config("command", "bounds")("which", opt.which)("m", opt.m);
  std::cout.precision(15);

  if (opt.which == "schedule") {
    config("l", opt.l)("h", opt.h)("n", opt.n)("beta", opt.beta)("theta",
                                                                  opt.theta);
    seqobf::ScheduleParams params;
    params.n = opt.n;
    params.l = opt.l;
    params.h = opt.h;
    params.beta = opt.beta;
    params.theta = opt.theta;
    params.m = static_cast<double>(opt.m);
    const seqobf::Schedule s = seqobf::schedule(params);
    std::cout << "d,b,r_min,r_max,m_b,m_b_ok,lemma3_threshold,"
                 "target_probability\n"
              << s.d << ',' << s.b << ',' << s.r_min << ',' << s.r_max << ','
              << s.m_b << ',' << (s.m_b_ok ? "true" : "false") << ','
              << s.lemma3_threshold << ',' << s.target_probability << '\n';
    return;
  }

  config("r", opt.r)("l", opt.l)("h", opt.h)("p", opt.p);
  double value = 0;
  if (opt.which == "sbu") {
    value = seqobf::bound_sbu({opt.m, opt.r, opt.l, opt.h, opt.p});
  } else if (opt.which == "slsbu" || opt.which == "sl_sbu") {
    value = seqobf::bound_slsbu({opt.m, opt.r, opt.l, opt.h, opt.p});
  } else if (opt.which == "lov") {
    value = seqobf::lov_bound(opt.m, opt.r, opt.p);
  } else {
    throw UsageError("--which must be sbu, slsbu, lov or schedule");
  }
  std::cout << "bound,value\n" << opt.which << ',' << value << '\n';
}

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string spec;
  std::string out;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> iterations;
  std::optional<std::string> scenario;
  std::optional<std::size_t> users, m, r, l, h;
  std::optional<std::string> p_obf;
  std::optional<std::string> methods;
};

void RunSimulate(const SimulateOptions& opt, std::optional<std::uint64_t> seed) {
  seqobf::ExperimentSpec spec;
  if (!opt.spec.empty()) {
    spec = seqobf::LoadExperimentSpec(opt.spec);
  }
  if (opt.scenario) {
    const auto scenario = seqobf::ParseScenario(*opt.scenario);
    if (!scenario) throw UsageError("unknown --scenario '" + *opt.scenario + "'");
    spec.scenario = *scenario;
  }
  if (opt.users) spec.users = *opt.users;
  if (opt.m) spec.m = *opt.m;
  if (opt.r) spec.r = *opt.r;
  if (opt.l) spec.l = *opt.l;
  if (opt.h) spec.h = *opt.h;
  if (opt.iterations) spec.iterations = *opt.iterations;
  if (opt.workers) spec.workers = *opt.workers;
  if (opt.p_obf) spec.p_obf = seqobf::ParseRealList(*opt.p_obf);
  if (opt.methods) {
    spec.methods.clear();
    std::stringstream ss(*opt.methods);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto method = seqobf::ParseMethod(name);
      if (!method) throw UsageError("unknown method '" + name + "'");
      spec.methods.push_back(*method);
    }
  }
  if (seed) spec.seed = *seed;

  std::string methods;
  for (auto method : spec.methods) {
    if (!methods.empty()) methods += ',';
    methods += seqobf::MethodName(method);
  }
  ConfigPrinter config(std::cout);
  config("command", "simulate")("spec", opt.spec.empty() ? "-" : opt.spec)(
      "scenario", seqobf::ScenarioName(spec.scenario))(
      "source", spec.source == seqobf::TraceSourceKind::kIngested
                    ? "ingested"
                    : "synthetic_iid");
  if (spec.source == seqobf::TraceSourceKind::kIngested) {
    config("path", spec.ingested_path);
  }
  config("users", spec.users)("m", spec.m)("r", spec.r)("l", spec.l)(
      "h", spec.h)("p_obf", JoinDoubles(spec.p_obf))("methods", methods)(
      "gamma", spec.gamma)("stage1_noise", spec.stage1_noise)(
      "iterations", spec.iterations)("seed", spec.seed)("workers",
                                                        spec.workers)(
      "beta", spec.beta);
  if (spec.match_probability) config("match_probability", *spec.match_probability);
  config("backend", seqobf::kernels::BackendName(
                        seqobf::kernels::ActiveBackend()));

  const seqobf::ExperimentResult result = seqobf::RunExperiment(spec);
  if (opt.out.empty() || opt.out == "-") {
    seqobf::WriteResultCsv(std::cout, result);
  } else {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write " + opt.out);
    seqobf::WriteResultCsv(out, result);
    std::cout << "# wrote " << result.records.size() << " records to "
              << opt.out << '\n';
  }
  std::cout << "# wall_seconds=" << result.wall_seconds << '\n';
}

// --- ingest ----------------------------------------------------------------

struct IngestOptions {
  std::string in;
  std::string out;
  std::int64_t min_interval = 600;
  std::size_t r = 22;
  std::size_t min_length = 0;
};

void RunIngest(const IngestOptions& opt) {
  ConfigPrinter config(std::cout);
  config("command", "ingest")("in", opt.in)("out", opt.out)(
      "min_interval", opt.min_interval)("r", opt.r)("min_length",
                                                    opt.min_length);
  seqobf::ParsedEvents parsed = seqobf::parse_csv(opt.in);
  for (const auto& warning : parsed.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  std::vector<seqobf::RawTrace> thinned;
  thinned.reserve(parsed.traces.size());
  for (const auto& raw : parsed.traces) {
    thinned.push_back(seqobf::resample(raw, opt.min_interval));
  }
  const seqobf::Encoded encoded = seqobf::encode(thinned, opt.r, opt.min_length);
  seqobf::WriteTraces(opt.out, encoded.traces);

  std::cout << "# users_in=" << parsed.traces.size()
            << "\n# users_out=" << encoded.traces.size()
            << "\n# dropped_events=" << encoded.dropped_events
            << "\n# rejected_users=" << encoded.rejected_users.size() << '\n';
  std::cout << "category,symbol\n";
  std::vector<std::pair<Symbol, std::string>> by_symbol;
  for (const auto& [category, symbol] : encoded.symbol_of) {
    by_symbol.emplace_back(symbol, category);
  }
  std::sort(by_symbol.begin(), by_symbol.end());
  for (const auto& [symbol, category] : by_symbol) {
    std::cout << category << ',' << symbol << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqobf: superstring and data-dependent sequence obfuscation"};
  app.require_subcommand(1);
  // "-h" is taken by the gap flag; subcommands inherit this setting.
  app.set_help_flag("--help", "Print this help message and exit");
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag,
                 "Master seed (default: $SEQOBF_SEED, else 1)");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-superstring",
                                     "Emit an (r,l)-superstring");
  gen_cmd->add_option("--r", gen.r, "Alphabet size")->required();
  gen_cmd->add_option("--l", gen.l, "Order")->required();
  gen_cmd->add_option("--kind", gen.kind, "shortest | concat");
  gen_cmd->add_option("--seed", seed_flag, "Master seed");

  ObfuscateOptions obf;
  auto* obf_cmd = app.add_subcommand("obfuscate", "Obfuscate a trace file");
  obf_cmd->add_option("--method", obf.method,
                      "iid | sbu | sl_sbu | two_stage | lov | plov | manp");
  obf_cmd->add_option("--p-obf", obf.p_obf, "Replacement probability");
  obf_cmd->add_option("--gamma", obf.gamma, "PLOV exponent");
  obf_cmd->add_option("--h", obf.h, "MANP gap");
  obf_cmd->add_option("--l", obf.l, "Superstring order");
  obf_cmd->add_option("--r", obf.r, "Alphabet size (default: inferred)");
  obf_cmd->add_option("--a-n", obf.a_n, "two_stage i.i.d. stage noise");
  obf_cmd->add_option("--in", obf.in, "Input trace file")->required();
  obf_cmd->add_option("--out", obf.out, "Output trace file (default stdout)");
  obf_cmd->add_option("--seed", seed_flag, "Master seed");

  DetectOptions det;
  auto* det_cmd = app.add_subcommand("detect", "Search traces for a pattern");
  det_cmd->add_option("--trace-file", det.trace_file, "Trace file")->required();
  det_cmd->add_option("--pattern", det.pattern, "Symbols, e.g. \"0 1\"")
      ->required();
  det_cmd->add_option("--h", det.h, "Gap bound or 'inf'");
  det_cmd->add_option("--r", det.r, "Alphabet size (default: inferred)");

  BoundsOptions bnd;
  auto* bnd_cmd = app.add_subcommand("bounds", "Evaluate privacy bounds");
  bnd_cmd->add_option("--m", bnd.m, "Trace length");
  bnd_cmd->add_option("--r", bnd.r, "Alphabet size");
  bnd_cmd->add_option("--l", bnd.l, "Pattern length");
  bnd_cmd->add_option("--h", bnd.h, "Gap");
  bnd_cmd->add_option("--p", bnd.p, "p_obf");
  bnd_cmd->add_option("--which", bnd.which, "sbu | slsbu | lov | schedule");
  bnd_cmd->add_option("--n", bnd.n, "Users (schedule)");
  bnd_cmd->add_option("--beta", bnd.beta, "beta (schedule)");
  bnd_cmd->add_option("--theta", bnd.theta, "theta (schedule)");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  sim_cmd->add_option("--spec", sim.spec, "Experiment spec file (INI)");
  sim_cmd->add_option("--out", sim.out, "Result CSV (default stdout)");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads");
  sim_cmd->add_option("--iterations", sim.iterations, "Override iterations");
  sim_cmd->add_option("--scenario", sim.scenario, "Override scenario");
  sim_cmd->add_option("--users", sim.users, "Override users");
  sim_cmd->add_option("--m", sim.m, "Override m");
  sim_cmd->add_option("--r", sim.r, "Override r");
  sim_cmd->add_option("--l", sim.l, "Override l");
  sim_cmd->add_option("--h", sim.h, "Override h");
  sim_cmd->add_option("--p-obf", sim.p_obf, "Override p_obf list/range");
  sim_cmd->add_option("--methods", sim.methods, "Override methods");
  sim_cmd->add_option("--seed", seed_flag, "Master seed");

  IngestOptions ing;
  auto* ing_cmd = app.add_subcommand("ingest", "Encode a raw event CSV");
  ing_cmd->add_option("--in", ing.in, "Raw CSV user_id,timestamp,category")
      ->required();
  ing_cmd->add_option("--out", ing.out, "Trace file to write")->required();
  ing_cmd->add_option("--min-interval", ing.min_interval, "Seconds");
  ing_cmd->add_option("--r", ing.r, "Alphabet size");
  ing_cmd->add_option("--min-length", ing.min_length,
                      "Reject traces shorter than this");

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) {
      RunGen(gen, seed_flag.value_or(DefaultSeed()));
    } else if (*obf_cmd) {
      RunObfuscate(obf, seed_flag.value_or(DefaultSeed()));
    } else if (*det_cmd) {
      RunDetect(det);
    } else if (*bnd_cmd) {
      RunBounds(bnd);
    } else if (*sim_cmd) {
      std::optional<std::uint64_t> seed = seed_flag;
      if (!seed && std::getenv("SEQOBF_SEED")) seed = DefaultSeed();
      RunSimulate(sim, seed);
    } else if (*ing_cmd) {
      RunIngest(ing);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
