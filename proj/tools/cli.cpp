#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dki/analysis.hpp"
#include "dki/errors.hpp"
#include "dki/families.hpp"
#include "dki/machine.hpp"
#include "dki/oracle.hpp"
#include "dki/permutation.hpp"
#include "dki/strategy.hpp"

namespace dki::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PermSource {
  std::string literal;
  std::string file;
  bool from_stdin = false;
};

std::vector<Permutation> load_permutations(const PermSource& src,
                                           std::istream& in) {
  std::vector<Permutation> perms;
  auto read_lines = [&perms](std::istream& stream) {
    std::string line;
    while (std::getline(stream, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      perms.push_back(parse_permutation(line));
    }
  };
  const int sources = (src.literal.empty() ? 0 : 1) +
                      (src.file.empty() ? 0 : 1) + (src.from_stdin ? 1 : 0);
  if (sources != 1)
    throw UsageError("exactly one of --perm, --file, --stdin is required");
  if (!src.literal.empty()) {
    perms.push_back(parse_permutation(src.literal));
  } else if (!src.file.empty()) {
    std::ifstream f(src.file);
    if (!f) throw UsageError("cannot open file: " + src.file);
    read_lines(f);
  } else {
    read_lines(in);
  }
  return perms;
}

void add_perm_options(CLI::App* cmd, PermSource& src) {
  cmd->add_option("--perm", src.literal, "permutation literal");
  cmd->add_option("--file", src.file, "file with one permutation per line");
  cmd->add_flag("--stdin", src.from_stdin,
                "read permutations from standard input");
}

StrategyId parse_strategy(const std::string& name, std::optional<int> k) {
  const auto id = StrategyId::parse(name, k);
  if (!id)
    throw UsageError("unknown strategy '" + name +
                     "' or inconsistent --k (optimal2 needs k=2, stacksort "
                     "k=0, lg/qlg an explicit --k)");
  return *id;
}

json report_to_json(const SortReport& r) {
  json steps = json::array();
  for (const TraceStep& s : r.trace)
    steps.push_back({{"op", operation_name(s.op)},
                     {"instruction", s.instruction}});
  json j{{"input", r.input.values()},
         {"k", r.strategy.k},
         {"strategy", r.strategy.name()},
         {"steps", std::move(steps)},
         {"output", r.output.values()},
         {"sorted", r.sorted}};
  if (r.first_failure)
    j["first_failure"] = *r.first_failure;
  else
    j["first_failure"] = nullptr;
  return j;
}

json table_to_json(const CountTable& t) {
  json rows = json::array();
  for (const auto& [n, count] : t.rows)
    rows.push_back({{"n", n}, {"count", count}});
  return json{{"strategy", t.decider}, {"k", t.k}, {"rows", std::move(rows)}};
}

json verification_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"title", r.title},
              {"checks", std::move(checks)},
              {"notes", r.notes},
              {"pass", r.all_pass()}};
}

json charact_to_json(const CharactReport& r) {
  json occs = json::array();
  for (const OccurrenceVerdict& v : r.occurrences_52314) {
    json via = json::array();
    for (int idx : v.matched)
      via.push_back(format_permutation(
          extension_patterns()[static_cast<size_t>(idx)].pattern));
    occs.push_back({{"positions", v.positions},
                    {"extends", v.extends},
                    {"via", std::move(via)}});
  }
  return json{{"avoids_3214", r.avoids_3214},
              {"occurrences", std::move(occs)},
              {"overall", r.overall}};
}

int print_verification(const VerificationReport& report,
                       const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << verification_to_json(report).dump() << "\n";
  } else {
    for (const CheckResult& c : report.checks) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (!c.pass && !c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    for (const std::string& note : report.notes) out << note << "\n";
    out << (report.all_pass() ? "ALL PASS" : "FAILED") << "\n";
  }
  return report.all_pass() ? kExitOk : kExitNegative;
}

int cmd_trace(const PermSource& src, const std::string& strategy_name,
              std::optional<int> k, const std::string& format,
              std::istream& in, std::ostream& out) {
  const StrategyId id = parse_strategy(strategy_name, k);
  bool all_sorted = true;
  for (const Permutation& p : load_permutations(src, in)) {
    const SortReport report = run(id, p, /*record_digests=*/true);
    all_sorted = all_sorted && report.sorted;
    if (format == "json") {
      out << report_to_json(report).dump() << "\n";
      continue;
    }
    out << "strategy " << id.name() << " k=" << id.k << " input "
        << format_permutation(p) << "\n";
    out << "     " << Configuration(p, id.k).render() << "\n";
    for (size_t i = 0; i < report.trace.size(); ++i) {
      const TraceStep& s = report.trace[i];
      out << i << ": " << operation_name(s.op) << " [" << s.instruction
          << "] " << s.digest << "\n";
    }
    out << "output " << format_permutation(report.output) << "\n";
    out << "sorted " << (report.sorted ? "true" : "false") << "\n";
    if (report.first_failure)
      out << "first_failure " << *report.first_failure << "\n";
  }
  return all_sorted ? kExitOk : kExitNegative;
}

int cmd_check(const PermSource& src, const std::string& strategy_name,
              std::optional<int> k, bool use_oracle, bool prune, bool witness,
              std::istream& in, std::ostream& out) {
  if (use_oracle == !strategy_name.empty())
    throw UsageError("choose exactly one of --oracle or --strategy");
  if (witness && !use_oracle)
    throw UsageError("--witness requires --oracle");

  std::optional<Oracle> oracle;
  std::optional<StrategyRunner> runner;
  if (use_oracle) {
    if (!k) throw UsageError("--oracle requires --k");
    oracle.emplace(*k, OracleOptions{.prune_trapped = prune});
  } else {
    runner.emplace(parse_strategy(strategy_name, k));
  }

  bool all_sortable = true;
  for (const Permutation& p : load_permutations(src, in)) {
    bool sortable;
    std::optional<Witness> w;
    if (oracle) {
      if (witness) {
        w = oracle->sorting_witness(p);
        sortable = w.has_value();
      } else {
        sortable = oracle->is_sortable(p);
      }
    } else {
      sortable = runner->sorts(p.values());
    }
    all_sortable = all_sortable && sortable;
    out << format_permutation(p) << " "
        << (sortable ? "sortable" : "unsortable") << "\n";
    if (witness && w) out << "witness " << format_witness(*w) << "\n";
  }
  return all_sortable ? kExitOk : kExitNegative;
}

int cmd_enumerate(const std::string& strategy_name, std::optional<int> k,
                  bool use_oracle, bool prune, int n_max, int jobs,
                  bool enable_n11, const std::string& format,
                  std::ostream& out, std::ostream& err) {
  if (use_oracle == !strategy_name.empty())
    throw UsageError("choose exactly one of --oracle or --strategy");
  DeciderSpec spec = [&] {
    if (use_oracle) {
      if (!k) throw UsageError("--oracle requires --k");
      return DeciderSpec::oracle(*k, OracleOptions{.prune_trapped = prune});
    }
    return DeciderSpec::strategy(parse_strategy(strategy_name, k));
  }();

  const auto start = std::chrono::steady_clock::now();
  const CountTable table =
      count_sortable_by_length(spec, n_max, jobs, enable_n11);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  err << "elapsed_ms " << elapsed.count() << "\n";

  if (format == "json") {
    out << table_to_json(table).dump() << "\n";
  } else if (format == "csv") {
    out << "n,count\n";
    for (const auto& [n, count] : table.rows) out << n << "," << count << "\n";
  } else {
    for (const auto& [n, count] : table.rows) out << n << " " << count << "\n";
  }
  return kExitOk;
}

int cmd_basis(int k, int n_max, bool prune, const std::string& format,
              std::ostream& out) {
  const auto basis =
      basis_up_to(n_max, k, OracleOptions{.prune_trapped = prune});
  if (format == "json") {
    json arr = json::array();
    for (const Permutation& p : basis) arr.push_back(p.values());
    out << json{{"k", k}, {"max", n_max}, {"basis", std::move(arr)}}.dump()
        << "\n";
  } else {
    for (const Permutation& p : basis) out << format_permutation(p) << "\n";
  }
  return kExitOk;
}

int cmd_charact(const PermSource& src, std::optional<int> necessity_max,
                const std::string& format, std::istream& in,
                std::ostream& out) {
  if (necessity_max) {
    const NecessityReport report = verify_charact_necessity(*necessity_max);
    if (format == "json") {
      json j{{"n_max", report.n_max},
             {"sortable_checked", report.sortable_checked},
             {"violations", json::array()},
             {"condition_only", json::array()},
             {"pass", report.pass()}};
      for (const Permutation& p : report.violations)
        j["violations"].push_back(p.values());
      for (const auto& [n, count] : report.condition_only)
        j["condition_only"].push_back({{"n", n}, {"count", count}});
      out << j.dump() << "\n";
    } else {
      out << "sortable_checked " << report.sortable_checked << "\n";
      out << "violations " << report.violations.size() << "\n";
      for (const Permutation& p : report.violations)
        out << "violation " << format_permutation(p) << "\n";
      for (const auto& [n, count] : report.condition_only)
        out << "condition_only n=" << n << " " << count << "\n";
      out << (report.pass() ? "PASS" : "FAIL") << "\n";
    }
    return report.pass() ? kExitOk : kExitNegative;
  }

  bool all_pass = true;
  for (const Permutation& p : load_permutations(src, in)) {
    const CharactReport report = charact_conditions(p);
    all_pass = all_pass && report.overall;
    if (format == "json") {
      out << charact_to_json(report).dump() << "\n";
      continue;
    }
    out << "avoids_3214 " << (report.avoids_3214 ? "true" : "false") << "\n";
    out << "occurrences_52314 " << report.occurrences_52314.size() << "\n";
    for (const OccurrenceVerdict& v : report.occurrences_52314) {
      out << "occurrence";
      for (int pos : v.positions) out << " " << pos;
      out << (v.extends ? " extends via" : " does not extend");
      for (int idx : v.matched)
        out << " "
            << format_permutation(
                   extension_patterns()[static_cast<size_t>(idx)].pattern);
      out << "\n";
    }
    out << "overall " << (report.overall ? "true" : "false") << "\n";
  }
  return all_pass ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{
      "dki: sorting permutations with k decreasing stacks feeding an "
      "increasing stack"};
  app.require_subcommand(1);

  std::string strategy_name;
  std::optional<int> k;
  PermSource src;
  std::string format = "text";
  int n_max = 0;
  int jobs = 1;
  bool use_oracle = false;
  bool prune = false;
  bool witness = false;
  bool enable_n11 = false;
  int jmax = 0;
  int mmax = 1;
  std::optional<int> necessity_max;

  auto* trace = app.add_subcommand("trace", "run a strategy step by step");
  trace->add_option("--strategy", strategy_name)->required();
  trace->add_option("--k", k);
  add_perm_options(trace, src);
  trace->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check", "decide sortability");
  check->add_option("--strategy", strategy_name);
  check->add_flag("--oracle", use_oracle);
  check->add_option("--k", k);
  check->add_flag("--prune", prune, "enable the oracle's trap pruning");
  check->add_flag("--witness", witness, "print a sorting operation sequence");
  add_perm_options(check, src);

  auto* enumerate = app.add_subcommand(
      "enumerate", "count sortable permutations per length");
  enumerate->add_option("--strategy", strategy_name);
  enumerate->add_flag("--oracle", use_oracle);
  enumerate->add_option("--k", k);
  enumerate->add_option("--max", n_max)->required();
  enumerate->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  enumerate->add_flag("--enable-n11", enable_n11,
                      "allow the multi-minute n = 11 sweep");
  enumerate->add_flag("--prune", prune);
  enumerate->add_option("--format", format)
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* basis = app.add_subcommand("basis",
                                   "minimal non-sortable permutations");
  int basis_k = 0;
  basis->add_option("--k", basis_k)->required();
  basis->add_option("--max", n_max)->required();
  basis->add_flag("--prune", prune);
  basis->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* antichain = app.add_subcommand(
      "antichain", "verify the infinite-basis antichain for k = 2");
  antichain->add_option("--jmax", jmax)->required();
  antichain->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));

  auto* gamma = app.add_subcommand(
      "gamma", "verify the parity-alternating qlg-2 chain");
  gamma->add_option("--mmax", mmax)->required();
  gamma->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* charact = app.add_subcommand(
      "charact", "necessary conditions for qlg-2 sortability");
  add_perm_options(charact, src);
  charact->add_option("--necessity", necessity_max,
                      "sweep every permutation up to this length");
  charact->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (trace->parsed())
      return cmd_trace(src, strategy_name, k, format, in, out);
    if (check->parsed())
      return cmd_check(src, strategy_name, k, use_oracle, prune, witness, in,
                       out);
    if (enumerate->parsed())
      return cmd_enumerate(strategy_name, k, use_oracle, prune, n_max, jobs,
                           enable_n11, format, out, err);
    if (basis->parsed()) return cmd_basis(basis_k, n_max, prune, format, out);
    if (antichain->parsed())
      return print_verification(verify_antichain(jmax), format, out);
    if (gamma->parsed())
      return print_verification(verify_parity_chain(mmax), format, out);
    if (charact->parsed())
      return cmd_charact(src, necessity_max, format, in, out);
  } catch (const LimitError& e) {
    err << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dki::cli
