#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "krchain/arith.hpp"
#include "krchain/chains.hpp"
#include "krchain/error.hpp"
#include "krchain/kummer.hpp"
#include "krchain/version.hpp"

namespace krc::cli {
namespace {

using nlohmann::json;

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::verify, "verify"},           {Command::candidate_check, "candidate-check"},
    {Command::search, "search"},           {Command::density, "density"},
    {Command::exceptional, "exceptional"}, {Command::ff_verify, "ff-verify"},
    {Command::ff_search, "ff-search"},
};

const char* name_of(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

Command command_named(const std::string& name) {
  for (const auto& [cmd, n] : kCommandNames) {
    if (name == n) return cmd;
  }
  throw UsageError("unknown command '" + name + "'");
}

const char* name_of(Level l) {
  switch (l) {
    case Level::chain: return "chain";
    case Level::cyclic: return "cyclic";
    case Level::permutation: return "permutation";
  }
  return "?";
}

Level level_named(const std::string& name) {
  if (name == "chain") return Level::chain;
  if (name == "cyclic") return Level::cyclic;
  if (name == "permutation") return Level::permutation;
  throw UsageError("invalid --require '" + name + "': expected chain, cyclic or permutation");
}

const char* name_of(Format f) {
  switch (f) {
    case Format::table: return "table";
    case Format::json: return "json";
    case Format::csv: return "csv";
  }
  return "?";
}

Format format_named(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw UsageError("invalid --format '" + name + "': expected table, json or csv");
}

// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
json int_json(Int v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
  return to_string(v);
}

Int int_from_json(const json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_unsigned()) return static_cast<Int>(j.get<std::uint64_t>());
  return static_cast<Int>(j.get<std::int64_t>());
}

std::uint64_t parse_u64(const std::string& flag, const std::string& text, std::uint64_t min_value) {
  Int v;
  try {
    v = parse_int(text);
  } catch (const Error&) {
    throw UsageError("invalid " + flag + " '" + text + "': expected a decimal integer");
  }
  if (v < static_cast<Int>(min_value) || v > static_cast<Int>(UINT64_MAX)) {
    throw UsageError("invalid " + flag + " '" + text + "': must be >= " + std::to_string(min_value));
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<int> subset_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1U) out.push_back(i + 1);
  }
  return out;
}

json verdict_json(const ChainVerdict& v, Level required) {
  json j;
  j["is_chain"] = v.is_chain;
  j["is_cyclic"] = v.is_cyclic;
  j["is_permutation"] = v.is_permutation;
  j["required"] = name_of(required);
  if (v.failure_witness) {
    j["failure_witness"] = {
        {"kind", v.failure_witness->kind == FailureWitness::Kind::collision ? "collision" : "non-residue"},
        {"description", v.failure_witness->description}};
  } else {
    j["failure_witness"] = nullptr;
  }
  return j;
}

bool verdict_meets(const ChainVerdict& v, Level required) {
  switch (required) {
    case Level::chain: return v.is_chain;
    case Level::cyclic: return v.is_cyclic;
    case Level::permutation: return v.is_permutation;
  }
  return false;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string sequence_text(const RunConfig& c) {
  std::string out;
  if (c.ring == Ring::integers) {
    for (std::size_t i = 0; i < c.sequence.size(); ++i) out += (i ? "," : "") + to_string(c.sequence[i]);
  } else {
    for (std::size_t i = 0; i < c.poly_sequence.size(); ++i) {
      out += (i ? "," : "") + c.poly_sequence[i].to_string();
    }
  }
  return out;
}

std::string verdict_table(const RunConfig& c, const ChainVerdict& v, const std::string& modulus) {
  std::ostringstream os;
  os << name_of(c.command) << "  k=" << c.k << "  modulus=" << modulus << "  sequence=" << sequence_text(c) << "\n"
     << "  chain:        " << yes_no(v.is_chain) << "\n"
     << "  cyclic chain: " << yes_no(v.is_cyclic) << "\n"
     << "  permutation:  " << yes_no(v.is_permutation) << "\n";
  if (v.failure_witness) os << "  witness:      " << v.failure_witness->description << "\n";
  return os.str();
}

json collision_json(std::uint32_t first, std::uint32_t second, json sum) {
  return {{"first", subset_indices(first)}, {"second", subset_indices(second)}, {"sum", std::move(sum)}};
}

RunReport run_verify(const RunConfig& c) {
  RunReport r;
  const CandidateSequence seq(c.sequence);
  const PrimeModulus p(*c.modulus);
  const ChainVerdict v = is_permutation_chain(seq, c.k, p, {.cap = c.cap});
  r.result = verdict_json(v, c.require);
  r.exit_code = verdict_meets(v, c.require) ? 0 : 1;
  r.table = verdict_table(c, v, std::to_string(p.value()));
  return r;
}

RunReport run_ff_verify(const RunConfig& c) {
  RunReport r;
  const PolySequence seq(c.poly_sequence);
  const IrreducibleModulus f(*c.poly_modulus);
  const ChainVerdict v = ff_is_permutation_chain(seq, c.k, f, c.cap);
  r.result = verdict_json(v, c.require);
  r.exit_code = verdict_meets(v, c.require) ? 0 : 1;
  r.table = verdict_table(c, v, f.poly().to_string());
  return r;
}

RunReport run_candidate_check(const RunConfig& c) {
  RunReport r;
  const CandidateSequence seq(c.sequence);
  const SumDistinctness d = is_sum_distinct(seq, c.cap);
  r.result["sum_distinct"] = d.distinct;
  std::ostringstream os;
  os << "candidate-check  sequence=" << sequence_text(c) << "\n  sum-distinct: " << yes_no(d.distinct) << "\n";
  if (d.collision) {
    r.result["collision"] = collision_json(d.collision->first_mask, d.collision->second_mask, int_json(d.collision->sum));
    os << "  collision:    " << d.collision->describe() << "\n";
  } else {
    r.result["collision"] = nullptr;
    const SumSet sums = subset_sums(seq, c.cap);
    r.result["sum_set_size"] = sums.values.size();
    os << "  |sum set|:    " << sums.values.size() << "\n";
  }
  r.exit_code = d.distinct ? 0 : 1;
  r.table = os.str();
  return r;
}

RunReport run_exceptional(const RunConfig& c) {
  RunReport r;
  const CandidateSequence seq(c.sequence);
  const SumDistinctness d = is_sum_distinct(seq, c.cap);
  std::ostringstream os;
  os << "exceptional  sequence=" << sequence_text(c) << "\n";
  r.result["sum_distinct"] = d.distinct;
  if (!d.distinct) {
    r.result["collision"] = collision_json(d.collision->first_mask, d.collision->second_mask, int_json(d.collision->sum));
    r.result["primes"] = nullptr;
    os << "  not sum-distinct: " << d.collision->describe() << "\n";
    r.exit_code = 1;
  } else {
    const ExceptionalPrimeSet set = exceptional_primes(seq, c.cap);
    r.result["collision"] = nullptr;
    r.result["primes"] = set.primes;
    os << "  exceptional primes:";
    for (const auto q : set.primes) os << " " << q;
    os << "\n";
    r.exit_code = 0;
  }
  r.table = os.str();
  return r;
}

RunReport run_search(const RunConfig& c) {
  RunReport r;
  const CandidateSequence seq(c.sequence);
  const auto primes =
      find_chain_primes(seq, c.k, c.limit, {.max_count = c.max_count, .workers = c.workers, .cap = c.cap});
  r.result["primes"] = primes;
  r.result["count"] = primes.size();
  std::ostringstream os;
  os << "search  k=" << c.k << "  limit=" << c.limit << "  sequence=" << sequence_text(c) << "\n"
     << "  found " << primes.size() << " prime(s)";
  if (!primes.empty()) {
    os << ":";
    const std::size_t shown = std::min<std::size_t>(primes.size(), 50);
    for (std::size_t i = 0; i < shown; ++i) os << " " << primes[i];
    if (shown < primes.size()) os << " ...";
  }
  os << "\n";
  r.table = os.str();
  r.exit_code = primes.empty() ? 1 : 0;
  return r;
}

RunReport run_ff_search(const RunConfig& c) {
  RunReport r;
  const PolySequence seq(c.poly_sequence);
  std::ostringstream os;
  os << "ff-search  k=" << c.k << "  max-degree=" << c.max_degree << "  sequence=" << sequence_text(c) << "\n";
  const auto distinct = ff_is_sum_distinct(seq, c.cap);
  if (!distinct.distinct) {
    r.result["sum_distinct"] = false;
    r.result["collision"] = collision_json(distinct.collision->first_mask, distinct.collision->second_mask,
                                           distinct.collision->sum.to_string());
    r.result["moduli"] = json::array();
    r.result["count"] = 0;
    os << "  not sum-distinct: " << distinct.collision->describe() << "\n";
    r.table = os.str();
    r.exit_code = 1;
    return r;
  }
  const auto moduli = find_chain_irreducibles(seq, c.k, seq.characteristic(), c.max_degree, c.workers, c.cap);
  json list = json::array();
  for (const auto& f : moduli) list.push_back(f.poly().to_string());
  r.result["sum_distinct"] = true;
  r.result["collision"] = nullptr;
  r.result["moduli"] = list;
  r.result["count"] = moduli.size();
  os << "  found " << moduli.size() << " irreducible modul" << (moduli.size() == 1 ? "us" : "i") << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(moduli.size(), 50); ++i) {
    os << "    " << moduli[i].poly().to_string() << "\n";
  }
  r.table = os.str();
  r.exit_code = moduli.empty() ? 1 : 0;
  return r;
}

RunReport run_density(const RunConfig& c) {
  RunReport r;
  const CandidateSequence seq(c.sequence);
  const DensityReport d = empirical_density(seq, c.k, c.limit, {.workers = c.workers, .cap = c.cap});
  r.result = {
      {"k", d.k},
      {"limit", d.limit},
      {"total_primes", d.total_primes},
      {"hits", d.hits},
      {"empirical", d.empirical.to_string()},
      {"empirical_value", d.empirical.to_double()},
      {"predicted_lower_bound", d.predicted_lower_bound.to_string()},
      {"predicted_value", d.predicted_lower_bound.to_double()},
      {"standard_error", d.standard_error},
      {"exceptional_excluded", d.exceptional_excluded},
      {"sum_distinct", d.sum_distinct},
      {"zero_in_sum_set", d.zero_in_sum_set},
      {"consistent_with_lower_bound", d.consistent_with_lower_bound()},
  };
  std::ostringstream os;
  os << "density  k=" << c.k << "  limit=" << c.limit << "  sequence=" << sequence_text(c) << "\n"
     << "  primes tested:        " << d.total_primes << "\n"
     << "  hits:                 " << d.hits << "\n"
     << std::setprecision(6) << "  empirical density:    " << d.empirical.to_string() << " (" << d.empirical.to_double()
     << ")\n"
     << "  predicted lower bound: " << d.predicted_lower_bound.to_string() << " ("
     << d.predicted_lower_bound.to_double() << ")\n"
     << "  standard error:       " << d.standard_error << "\n"
     << "  exceptional excluded:";
  for (const auto q : d.exceptional_excluded) os << " " << q;
  os << "\n  consistent:           " << yes_no(d.consistent_with_lower_bound()) << "\n";
  r.table = os.str();
  r.exit_code = d.consistent_with_lower_bound() ? 0 : 1;
  return r;
}

std::string csv_of(const RunReport& report) {
  std::ostringstream os;
  const json& res = report.result;
  switch (report.config.command) {
    case Command::search:
      os << "prime\n";
      for (const auto& p : res.at("primes")) os << p.get<std::uint64_t>() << "\n";
      break;
    case Command::ff_search:
      os << "degree,modulus\n";
      for (const auto& m : res.at("moduli")) {
        const FFPoly f = FFPoly::parse(m.get<std::string>());
        os << f.degree() << ",\"" << m.get<std::string>() << "\"\n";
      }
      break;
    case Command::density:
      os << "k,limit,total_primes,hits,empirical,predicted_lower_bound,standard_error\n"
         << res.at("k").get<std::uint64_t>() << "," << res.at("limit").get<std::uint64_t>() << ","
         << res.at("total_primes").get<std::uint64_t>() << "," << res.at("hits").get<std::uint64_t>() << ","
         << res.at("empirical").get<std::string>() << "," << res.at("predicted_lower_bound").get<std::string>()
         << "," << std::setprecision(10) << res.at("standard_error").get<double>() << "\n";
      break;
    default:
      throw UsageError(std::string("CSV output is not available for '") + name_of(report.config.command) + "'");
  }
  return os.str();
}

unsigned default_workers(Command c) {
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    return static_cast<unsigned>(parse_u64(std::string("$") + kWorkersEnv, env, 1));
  }
  if (c == Command::search || c == Command::density) {
    return std::max(1U, std::thread::hardware_concurrency());
  }
  return 1;
}

}  // namespace

std::vector<Int> parse_int_sequence(std::string_view text) {
  std::vector<Int> out;
  const std::string whole(text);
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string token(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    try {
      out.push_back(parse_int(token));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::overflow) throw UsageError("sequence term '" + token + "' overflows 128 bits");
      throw UsageError("invalid sequence term '" + token + "' in '" + whole + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<FFPoly> parse_poly_sequence(std::string_view text) {
  std::vector<FFPoly> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t close = text.find(']', start);
    const std::string literal(text.substr(start, close == std::string_view::npos ? std::string_view::npos
                                                                                 : close - start + 1));
    try {
      out.push_back(FFPoly::parse(literal));
    } catch (const Error&) {
      throw UsageError("invalid polynomial '" + literal + "' (expected GF(p)[c0,c1,...])");
    }
    if (close == std::string_view::npos || close + 1 == text.size()) break;
    if (text[close + 1] != ',') {
      throw UsageError("invalid polynomial list '" + std::string(text) + "': expected ',' after '" + literal + "'");
    }
    start = close + 2;
  }
  if (out.empty()) throw UsageError("empty polynomial sequence");
  return out;
}

json RunConfig::to_json() const {
  json j;
  j["command"] = name_of(command);
  j["ring"] = ring == Ring::integers ? "integers" : "polynomial";
  j["k"] = k;
  if (ring == Ring::integers) {
    json seq = json::array();
    for (const Int v : sequence) seq.push_back(int_json(v));
    j["sequence"] = seq;
  } else {
    json seq = json::array();
    for (const auto& f : poly_sequence) seq.push_back(f.to_string());
    j["sequence"] = seq;
    j["characteristic"] = poly_sequence.empty() ? 0 : poly_sequence.front().characteristic();
  }
  if (modulus) j["modulus"] = *modulus;
  if (poly_modulus) j["modulus"] = poly_modulus->to_string();
  if (command == Command::search || command == Command::density) j["limit"] = limit;
  if (max_count) j["max_count"] = *max_count;
  if (command == Command::ff_search) j["max_degree"] = max_degree;
  if (command == Command::verify || command == Command::ff_verify) j["require"] = name_of(require);
  j["format"] = name_of(format);
  j["max_terms"] = cap;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.command = command_named(j.at("command").get<std::string>());
  c.ring = j.at("ring").get<std::string>() == "integers" ? Ring::integers : Ring::polynomial;
  c.k = j.at("k").get<std::uint64_t>();
  for (const auto& v : j.at("sequence")) {
    if (c.ring == Ring::integers) {
      c.sequence.push_back(int_from_json(v));
    } else {
      c.poly_sequence.push_back(FFPoly::parse(v.get<std::string>()));
    }
  }
  if (j.contains("modulus")) {
    if (c.ring == Ring::integers) {
      c.modulus = j.at("modulus").get<std::uint64_t>();
    } else {
      c.poly_modulus = FFPoly::parse(j.at("modulus").get<std::string>());
    }
  }
  if (j.contains("limit")) c.limit = j.at("limit").get<std::uint64_t>();
  if (j.contains("max_count")) c.max_count = j.at("max_count").get<std::size_t>();
  if (j.contains("max_degree")) c.max_degree = j.at("max_degree").get<int>();
  if (j.contains("require")) c.require = level_named(j.at("require").get<std::string>());
  c.format = format_named(j.at("format").get<std::string>());
  c.cap = j.at("max_terms").get<std::size_t>();
  return c;
}

json RunReport::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = version;
  j["command"] = name_of(config.command);
  j["config"] = config.to_json();
  j["result"] = result;
  j["exit_code"] = exit_code;
  if (config.timing && elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

RunReport RunReport::from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw UsageError("unsupported schema_version " + j.at("schema_version").dump());
  }
  RunReport r;
  r.config = RunConfig::from_json(j.at("config"));
  r.result = j.at("result");
  r.version = j.at("version").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  if (j.contains("elapsed_ms")) {
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.config.timing = true;
  }
  return r;
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
  CLI::App app{"kth power residue chains: verification, prime search and density checks", "krchain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Raw {
    std::string k, modulus, seq, vegh, tpowers, charac, limit, max_count, max_degree, require = "permutation",
        format, workers, max_terms;
    bool json = false, csv = false, timing = false;
  } raw;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", raw.format, "table | json | csv");
    sub->add_flag("--json", raw.json, "Shorthand for --format json");
    sub->add_flag("--csv", raw.csv, "Shorthand for --format csv");
    sub->add_flag("--timing", raw.timing, "Include elapsed_ms in JSON output");
    sub->add_option("--max-terms", raw.max_terms, "Cap on the number of terms (default 24)");
    sub->add_option("--workers", raw.workers, std::string("Worker threads (default $") + kWorkersEnv + ")");
  };
  auto int_seq = [&](CLI::App* sub) {
    sub->add_option("--seq", raw.seq, "Comma-separated integers, e.g. 1,2,4");
    sub->add_option("--vegh", raw.vegh, "m,base: the sequence 1, base, ..., base^(m-1)");
  };
  auto poly_seq = [&](CLI::App* sub) {
    sub->add_option("--seq", raw.seq, "Comma-separated polynomials, e.g. GF(3)[1],GF(3)[0,1]");
    sub->add_option("--tpowers", raw.tpowers, "m: the sequence 1, t, ..., t^(m-1) (needs --char)");
    sub->add_option("--char", raw.charac, "Characteristic p for --tpowers");
  };

  CLI::App* verify = app.add_subcommand("verify", "Chain / cyclic / permutation verdict modulo a prime");
  verify->add_option("--k", raw.k, "Residue power k >= 1")->required();
  verify->add_option("--modulus", raw.modulus, "Prime modulus")->required();
  verify->add_option("--require", raw.require, "Level deciding the exit code: chain | cyclic | permutation");
  int_seq(verify);
  common(verify);

  CLI::App* check = app.add_subcommand("candidate-check", "Check that all subset sums are distinct");
  int_seq(check);
  common(check);

  CLI::App* search = app.add_subcommand("search", "Primes p <= limit realizing a permutation chain");
  search->add_option("--k", raw.k, "Residue power k >= 1")->required();
  search->add_option("--limit", raw.limit, "Search bound")->required();
  search->add_option("--max-count", raw.max_count, "Stop after this many primes");
  int_seq(search);
  common(search);

  CLI::App* density = app.add_subcommand("density", "Empirical vs predicted density of chain primes");
  density->add_option("--k", raw.k, "Residue power k >= 1")->required();
  density->add_option("--limit", raw.limit, "Sweep bound")->required();
  int_seq(density);
  common(density);

  CLI::App* exceptional = app.add_subcommand("exceptional", "Primes dividing differences of subset sums");
  int_seq(exceptional);
  common(exceptional);

  CLI::App* ff_verify = app.add_subcommand("ff-verify", "Polynomial chain verdict modulo an irreducible");
  ff_verify->add_option("--k", raw.k, "Residue power k >= 1")->required();
  ff_verify->add_option("--modulus", raw.modulus, "Monic irreducible, e.g. GF(3)[1,0,1]")->required();
  ff_verify->add_option("--require", raw.require, "Level deciding the exit code: chain | cyclic | permutation");
  poly_seq(ff_verify);
  common(ff_verify);

  CLI::App* ff_search = app.add_subcommand("ff-search", "Irreducible moduli realizing a polynomial chain");
  ff_search->add_option("--k", raw.k, "Residue power k >= 1")->required();
  ff_search->add_option("--max-degree", raw.max_degree, "Largest modulus degree")->required();
  poly_seq(ff_search);
  common(ff_search);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream text, ignored;
    app.exit(e, text, ignored);
    throw HelpRequested(text.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  CLI::App* chosen = app.get_subcommands().front();
  c.command = command_named(chosen->get_name());
  c.ring = (c.command == Command::ff_verify || c.command == Command::ff_search) ? Ring::polynomial : Ring::integers;

  if (!raw.k.empty()) c.k = parse_u64("--k", raw.k, 1);
  if (!raw.max_terms.empty()) {
    c.cap = parse_u64("--max-terms", raw.max_terms, 1);
    if (c.cap > 31) throw UsageError("invalid --max-terms '" + raw.max_terms + "': must be <= 31");
  }

  int formats = (raw.json ? 1 : 0) + (raw.csv ? 1 : 0) + (raw.format.empty() ? 0 : 1);
  if (formats > 1) throw UsageError("choose one of --format, --json, --csv");
  if (raw.json) c.format = Format::json;
  if (raw.csv) c.format = Format::csv;
  if (!raw.format.empty()) c.format = format_named(raw.format);
  if (c.format == Format::csv && c.command != Command::search && c.command != Command::density &&
      c.command != Command::ff_search) {
    throw UsageError(std::string("CSV output is not available for '") + name_of(c.command) + "'");
  }
  c.timing = raw.timing;
  c.workers = raw.workers.empty() ? default_workers(c.command)
                                  : static_cast<unsigned>(parse_u64("--workers", raw.workers, 1));
  c.require = level_named(raw.require);

  if (c.ring == Ring::integers) {
    if (raw.seq.empty() == raw.vegh.empty()) throw UsageError("give exactly one of --seq and --vegh");
    if (!raw.seq.empty()) {
      c.sequence = parse_int_sequence(raw.seq);
    } else {
      const auto parts = parse_int_sequence(raw.vegh);
      if (parts.size() != 2) throw UsageError("invalid --vegh '" + raw.vegh + "': expected m,base");
      if (parts[0] < 1 || parts[0] > 1000) throw UsageError("invalid --vegh m '" + to_string(parts[0]) + "'");
      try {
        const CandidateSequence seq = vegh_sequence(static_cast<std::size_t>(parts[0]), parts[1]);
        c.sequence.assign(seq.terms().begin(), seq.terms().end());
      } catch (const Error& e) {
        throw UsageError("invalid --vegh '" + raw.vegh + "': " + e.what());
      }
    }
  } else {
    if (raw.seq.empty() == raw.tpowers.empty()) throw UsageError("give exactly one of --seq and --tpowers");
    if (!raw.seq.empty()) {
      if (!raw.charac.empty()) throw UsageError("--char only applies to --tpowers");
      c.poly_sequence = parse_poly_sequence(raw.seq);
    } else {
      if (raw.charac.empty()) throw UsageError("--tpowers needs --char");
      const std::uint64_t p = parse_u64("--char", raw.charac, 2);
      if (p > UINT32_MAX || !is_prime(p)) throw UsageError("invalid --char '" + raw.charac + "': not a prime");
      const std::uint64_t m = parse_u64("--tpowers", raw.tpowers, 1);
      if (m > 31) throw UsageError("invalid --tpowers '" + raw.tpowers + "': at most 31 terms");
      const PolySequence seq = t_powers(static_cast<std::uint32_t>(p), m);
      c.poly_sequence.assign(seq.terms().begin(), seq.terms().end());
    }
  }

  if (c.command == Command::verify) {
    c.modulus = parse_u64("--modulus", raw.modulus, 0);
    if (!is_prime(*c.modulus)) throw UsageError("invalid --modulus '" + raw.modulus + "': not a prime");
  }
  if (c.command == Command::ff_verify) {
    try {
      c.poly_modulus = FFPoly::parse(raw.modulus);
    } catch (const Error& e) {
      throw UsageError("invalid --modulus '" + raw.modulus + "': " + e.what());
    }
  }
  if (c.command == Command::search || c.command == Command::density) {
    c.limit = parse_u64("--limit", raw.limit, c.command == Command::density ? 2 : 0);
  }
  if (!raw.max_count.empty()) c.max_count = parse_u64("--max-count", raw.max_count, 0);
  if (c.command == Command::ff_search) {
    const std::uint64_t d = parse_u64("--max-degree", raw.max_degree, 1);
    if (d > 64) throw UsageError("invalid --max-degree '" + raw.max_degree + "': at most 64");
    c.max_degree = static_cast<int>(d);
  }
  return c;
}

RunReport run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  switch (config.command) {
    case Command::verify: report = run_verify(config); break;
    case Command::candidate_check: report = run_candidate_check(config); break;
    case Command::search: report = run_search(config); break;
    case Command::density: report = run_density(config); break;
    case Command::exceptional: report = run_exceptional(config); break;
    case Command::ff_verify: report = run_ff_verify(config); break;
    case Command::ff_search: report = run_ff_search(config); break;
  }
  report.config = config;
  report.version = kVersion;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render(const RunReport& report) {
  switch (report.config.format) {
    case Format::json: return report.to_json().dump(2) + "\n";
    case Format::csv: return csv_of(report);
    case Format::table: {
      std::ostringstream os;
      os << report.table;
      if (report.elapsed_ms) os << std::fixed << std::setprecision(1) << "  elapsed: " << *report.elapsed_ms << " ms\n";
      return os.str();
    }
  }
  return {};
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_command_line(args);
    const RunReport report = run(config);
    out << render(report);
    return report.exit_code;
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
}

}  // namespace krc::cli
