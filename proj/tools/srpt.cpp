// srpt: reproduction cases and ad-hoc SRPT evaluation from the command line.
//
//   srpt run <case> [--param k=v]... [--out path] [--format json|csv]
//   srpt check <state> [<A> <B>] [--witness name:args] [--subsystem k] [--unchecked]
//   srpt list-cases
//   srpt state <name:args> [--out path]
//   srpt witness <name:args> [--out stem]   (writes stem.A.json, stem.B.json)
//   srpt eigenstates 2d|3d <n> [--out path]
//
// Exit codes: 0 success, 1 usage or input error, 2 case mismatch,
// 3 inadmissible observable.

#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srpt/criteria.hpp"
#include "srpt/repro.hpp"
#include "srpt/serialization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInadmissible = 3;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    srpt::write_text_file(out, text);
  }
}

srpt::Params parse_params(const std::vector<std::string>& raw) {
  srpt::Params params;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw srpt::UsageError("--param expects key=value, got '" + kv + "'");
    }
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return params;
}

// A state argument is a JSON file if one exists at that path, else a named state such as "ghz:3".
srpt::AnyState load_state(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    return srpt::any_state_from_json(srpt::read_json_file(arg));
  }
  return srpt::named_state(arg);
}

srpt::Observable load_observable(const std::string& path) {
  return srpt::observable_from_json(srpt::read_json_file(path));
}

int run_command(const std::string& id, const std::vector<std::string>& raw_params,
                const std::string& out, const std::string& format) {
  const srpt::CaseReport report = srpt::run_case(id, parse_params(raw_params));
  emit(format == "csv" ? srpt::render_csv(report) : srpt::render_json(report), out);
  for (const auto& c : report.checks) {
    if (c.status() == "pass") continue;
    std::cerr << id << ": " << c.name << " " << c.status() << " (measured "
              << srpt::format_number(c.measured) << ", expected "
              << srpt::format_number(c.expected) << ", " << c.source << ")\n";
  }
  return report.passed() ? kExitOk : kExitMismatch;
}

int check_command(const std::string& state_arg, const std::vector<std::string>& observables,
                  const std::string& witness, std::size_t subsystem, bool unchecked) {
  if (witness.empty() == (observables.size() != 2)) {
    throw srpt::UsageError("check needs either two observable files or --witness");
  }
  auto pair = witness.empty()
                  ? srpt::ObservablePair{load_observable(observables[0]),
                                         load_observable(observables[1])}
                  : srpt::named_witness(witness);
  const srpt::AnyState state = load_state(state_arg);
  const auto& space =
      std::visit([](const auto& s) -> const srpt::HilbertSpace& { return s.space(); }, state);
  if (!(pair.a.space() == space) || !(pair.b.space() == space)) {
    throw srpt::DimensionMismatch("state is on " + space.to_string() + ", observables on " +
                                  pair.a.space().to_string() + " and " +
                                  pair.b.space().to_string());
  }
  if (subsystem >= space.subsystems()) throw srpt::UsageError("--subsystem out of range");

  const srpt::AdmissibilityReport adm_a = srpt::is_admissible(pair.a, subsystem);
  const srpt::AdmissibilityReport adm_b = srpt::is_admissible(pair.b, subsystem);
  nlohmann::json out{{"subsystem", subsystem},
                     {"admissibility_A", srpt::to_json(adm_a)},
                     {"admissibility_B", srpt::to_json(adm_b)}};
  const bool admissible = adm_a.admissible && adm_b.admissible;
  if (!admissible && !unchecked) {
    out["report"] = nullptr;
    std::cout << out.dump(2) << "\n";
    std::cerr << "refusing to evaluate: " << (adm_a.admissible ? "B" : "A")
              << " is not admissible (residual "
              << srpt::format_number(adm_a.admissible ? adm_b.residual : adm_a.residual)
              << "); pass --unchecked to evaluate anyway\n";
    return kExitInadmissible;
  }
  const auto check = srpt::AdmissibilityCheck::skip_unsound;
  const srpt::UncertaintyReport report = std::visit(
      [&](const auto& s) { return srpt::srpt_evaluate(s, pair.a, pair.b, subsystem, check); },
      state);
  out["report"] = srpt::to_json(report);
  if (!admissible) out["warning"] = "evaluated with an inadmissible observable; unsound";
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schrodinger-Robertson partial-transpose entanglement criterion"};
  app.require_subcommand(1);

  std::string case_id, out, format = "json";
  std::vector<std::string> params;
  auto* run = app.add_subcommand("run", "Run a registered reproduction case");
  run->add_option("case", case_id, "Case id (see list-cases)")->required();
  run->add_option("--param", params, "Override a case parameter, key=value");
  run->add_option("--out", out, "Write the report here instead of stdout");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  std::string state_arg, witness;
  std::vector<std::string> observables;
  std::size_t subsystem = 0;
  bool unchecked = false;
  auto* check = app.add_subcommand("check", "Evaluate the criterion on a state and two observables");
  check->add_option("state", state_arg, "State JSON file or named state")->required();
  check->add_option("observables", observables, "Observable JSON files A and B")->expected(0, 2);
  check->add_option("--witness", witness, "Named observable pair instead of files");
  check->add_option("--subsystem", subsystem, "Subsystem to transpose");
  check->add_flag("--unchecked", unchecked, "Evaluate even if an observable is inadmissible");

  auto* list = app.add_subcommand("list-cases", "List registered cases and their parameters");

  std::string descriptor;
  auto* state = app.add_subcommand("state", "Write a named state as JSON");
  state->add_option("state", descriptor, "Named state, e.g. werner-bell:0.6")->required();
  state->add_option("--out", out, "Output path");
  state->footer(srpt::state_help());

  std::string which;
  auto* witness_cmd = app.add_subcommand("witness", "Write a named observable pair as JSON");
  witness_cmd->add_option("pair", descriptor, "Named pair, e.g. prop1:0,1")->required();
  witness_cmd->add_option("--out", out, "Output path");
  witness_cmd->footer(srpt::witness_help());

  std::size_t quanta = 0;
  auto* eigen = app.add_subcommand("eigenstates", "Oscillator eigenstate coefficient table (CSV)");
  eigen->add_option("dimension", which, "2d or 3d")->required()->check(CLI::IsMember({"2d", "3d"}));
  eigen->add_option("n", quanta, "Total quanta")->required();
  eigen->add_option("--out", out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return run_command(case_id, params, out, format);
    if (*check) return check_command(state_arg, observables, witness, subsystem, unchecked);
    if (*list) {
      for (const auto& c : srpt::registered_cases()) {
        std::cout << c.id << "\n    " << c.description << "\n";
        for (const auto& [k, v] : c.defaults) std::cout << "    --param " << k << "=" << v << "\n";
      }
      return kExitOk;
    }
    if (*state) {
      const srpt::AnyState s = srpt::named_state(descriptor);
      emit(std::visit([](const auto& v) { return srpt::to_json(v); }, s) + "\n", out);
      return kExitOk;
    }
    if (*witness_cmd) {
      const srpt::ObservablePair pair = srpt::named_witness(descriptor);
      if (out.empty()) {
        std::cout << "{\"A\":" << srpt::to_json(pair.a) << ",\"B\":" << srpt::to_json(pair.b)
                  << "}\n";
      } else {
        srpt::write_text_file(out + ".A.json", srpt::to_json(pair.a) + "\n");
        srpt::write_text_file(out + ".B.json", srpt::to_json(pair.b) + "\n");
      }
      return kExitOk;
    }
    if (*eigen) {
      emit(which == "2d" ? srpt::oscillator2d_csv(quanta) : srpt::oscillator3d_csv(quanta), out);
      return kExitOk;
    }
  } catch (const srpt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
