// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The command-line front end. Exit codes: 0 success (and passing
// verification), 1 type error / failed verification / runtime error,
// 2 parse error, 3 internal error.
#ifndef SOLO_CLI_HPP
#define SOLO_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "solo/json_io.hpp"
#include "solo/verify.hpp"

namespace solo::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SoloError(Code::kInternal, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TypedProgram load(const std::string& path) {
  return typecheck_program(parse_program(read_file(path)));
}

inline Grid parse_grid(const std::string& text) {
  Grid g;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &g.lo, &g.hi, &g.step) != 3)
    throw SoloError(Code::kDomain, "grid must be lo:hi:step, got '" + text + "'");
  g.bins();
  return g;
}

inline nlohmann::json value_to_json(const Value& v) {
  switch (v.k) {
    case Value::K::kBool: return v.bv;
    case Value::K::kReal: return v.num;
    case Value::K::kPair:
      return nlohmann::json::array(
          {value_to_json((*v.items)[0]), value_to_json((*v.items)[1])});
    case Value::K::kList: {
      nlohmann::json a = nlohmann::json::array();
      for (const Value& x : *v.items) a.push_back(value_to_json(x));
      return a;
    }
    default: return value_str(v);
  }
}

inline std::map<std::string, Value> load_inputs(const std::string& path,
                                                const Program& p) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  return inputs_from_json(j, p);
}

inline nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  j["trials"] = r.trials;
  j["max_observed"] = r.max_observed;
  j["bound"] = r.bound;
  if (!r.note.empty()) j["note"] = r.note;
  nlohmann::json vs = nlohmann::json::array();
  for (const Violation& v : r.violations)
    vs.push_back({{"detail", v.detail}, {"observed", v.observed}, {"bound", v.bound}});
  j["violations"] = vs;
  return j;
}

inline void print_report(const VerifyReport& r, bool json, std::ostream& out) {
  if (json) {
    out << report_to_json(r).dump(2) << "\n";
    return;
  }
  out << r.check << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.trials
      << " trials, seed " << r.seed << ")\n";
  if (!r.note.empty()) out << "  " << r.note << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r.max_observed);
  out << "  max observed: " << buf << "\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 10; ++i) {
    const Violation& v = r.violations[i];
    out << "  violation: " << v.detail << " observed " << v.observed << " > bound "
        << v.bound << "\n";
  }
  if (r.violations.size() > 10)
    out << "  ... " << r.violations.size() - 10 << " more violations\n";
}

}  // namespace detail

// Runs the CLI on the given arguments. Streams are injectable so tests can
// check byte-identical output.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"solo: sensitivity and privacy analyzer for .solo programs"};
  app.require_subcommand(1);

  std::string path, inputs_path, inputs2_path, grid_text = "-20:21:0.01";
  std::string format = "text", mode, dist_flags, dir = "corpus";
  std::uint64_t seed = 0, fuel = 1u << 24, trials = 0;
  double tol = 1e-3, claim_eps = -1, claim_delta = 0;
  bool trace = false;
  std::vector<std::string> distances;

  CLI::App* check = app.add_subcommand("check", "typecheck a program and print its type");
  check->add_option("file", path)->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* budget = app.add_subcommand("budget", "per-source privacy budget");
  budget->add_option("file", path)->required();
  budget->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* run_cmd = app.add_subcommand("run", "execute with sampled noise");
  run_cmd->add_option("file", path)->required();
  run_cmd->add_option("--inputs", inputs_path)->required();
  run_cmd->add_option("--seed", seed);
  run_cmd->add_option("--fuel", fuel);
  run_cmd->add_flag("--trace", trace);
  run_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* verify = app.add_subcommand("verify", "empirical soundness checks");
  verify->add_option("file", path)->required();
  verify->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"metric", "dp", "lemmas"}));
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  verify->add_option("--inputs", inputs_path);
  verify->add_option("--inputs2", inputs2_path);
  verify->add_option("--grid", grid_text);
  verify->add_option("--tol", tol);
  verify->add_option("--claim-eps", claim_eps);
  verify->add_option("--claim-delta", claim_delta);
  verify->add_option("--distance", distances,
                     "per-source distance as name=value (metric mode)");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* examples = app.add_subcommand("examples", "list the bundled corpus");
  examples->add_option("--dir", dir);
  examples->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<const char*> argv = {"solo"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print through CLI11's own stream handling.
      std::stringstream ss;
      int code = app.exit(e, ss, ss);
      out << ss.str();
      return code;
    }
    err << "solo: " << e.what() << "\n";
    return 2;
  }

  bool json = format == "json";
  try {
    if (*check) {
      TypedProgram tp = detail::load(path);
      if (json) {
        nlohmann::json j;
        j["main_type"] = pretty_type(tp.main_type);
        nlohmann::json defs = nlohmann::json::object();
        for (const auto& [name, t] : tp.def_types) defs[name] = t;
        j["defs"] = defs;
        out << j.dump(2) << "\n";
      } else {
        out << pretty_type(tp.main_type) << "\n";
      }
      return 0;
    }

    if (*budget) {
      TypedProgram tp = detail::load(path);
      std::vector<BudgetRow> rows = budget_report(tp);
      if (json) {
        nlohmann::json j = nlohmann::json::array();
        for (const BudgetRow& r : rows)
          j.push_back({{"source", r.source}, {"cost", r.cost}, {"numeric", r.numeric}});
        out << j.dump(2) << "\n";
      } else {
        for (const BudgetRow& r : rows) {
          out << r.source << ": " << r.cost;
          if (r.numeric != r.cost) out << "  ~  " << r.numeric;
          out << "\n";
        }
      }
      return 0;
    }

    if (*run_cmd) {
      TypedProgram tp = detail::load(path);
      auto inputs = detail::load_inputs(inputs_path, tp.program);
      RunResult r = run_program(tp, inputs, seed, fuel, trace);
      if (json) {
        nlohmann::json j;
        j["result"] = detail::value_to_json(r.value);
        j["steps"] = r.steps;
        if (trace) {
          nlohmann::json t = nlohmann::json::array();
          for (const TraceEntry& te : r.trace) t.push_back(nlohmann::json::parse(te.json()));
          j["trace"] = t;
        }
        out << j.dump(2) << "\n";
      } else {
        if (trace)
          for (const TraceEntry& te : r.trace) out << te.json() << "\n";
        out << "result: " << value_str(r.value) << "\n";
        out << "steps: " << r.steps << "\n";
      }
      return 0;
    }

    if (*verify) {
      TypedProgram tp = detail::load(path);
      VerifyReport report;
      if (mode == "lemmas") {
        Rng rng(seed);
        report = check_lemmas(trials ? trials : 100000, rng);
      } else if (mode == "metric") {
        DistanceSpec spec;
        for (const SourceDecl& s : tp.program.sources) spec.distance[s.name] = 1.0;
        for (const std::string& d : distances) {
          std::size_t eq = d.find('=');
          if (eq == std::string::npos)
            throw SoloError(Code::kDomain, "--distance needs name=value, got '" + d + "'");
          spec.distance[d.substr(0, eq)] = std::stod(d.substr(eq + 1));
        }
        Rng rng(seed);
        report = check_metric_preservation(tp, spec, trials ? trials : 100, rng);
      } else {
        Grid grid = detail::parse_grid(grid_text);
        std::map<std::string, Value> in1, in2;
        if (!inputs_path.empty()) {
          in1 = detail::load_inputs(inputs_path, tp.program);
          if (inputs2_path.empty())
            throw SoloError(Code::kDomain, "dp mode needs --inputs2 with --inputs");
          in2 = detail::load_inputs(inputs2_path, tp.program);
        } else {
          // Default neighbors: bump the first diff-metric scalar source by 1.
          bool bumped = false;
          for (const SourceDecl& s : tp.program.sources) {
            if (s.stype->k != SType::K::kSReal)
              throw SoloError(Code::kDomain,
                              "dp mode needs --inputs/--inputs2 for non-scalar sources");
            in1[s.name] = Value::real(0.0);
            in2[s.name] = Value::real(!bumped ? 1.0 : 0.0);
            bumped = true;
          }
        }
        std::optional<DpClaim> claim;
        if (claim_eps >= 0) claim = DpClaim{claim_eps, claim_delta};
        report = check_dp(tp, in1, in2, grid, tol, claim);
      }
      report.seed = seed;
      detail::print_report(report, json, out);
      return report.pass() ? 0 : 1;
    }

    if (*examples) {
      nlohmann::json j = nlohmann::json::array();
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".solo") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::string text = detail::read_file(f.string());
        std::string expect;
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
          auto at = line.find("-- expect-");
          if (at != std::string::npos) {
            expect = line.substr(at + 3);
            break;
          }
        }
        if (json)
          j.push_back({{"file", f.filename().string()}, {"expect", expect}});
        else
          out << f.filename().string() << ": " << expect << "\n";
      }
      if (json) out << j.dump(2) << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    err << e.render(path) << "\n";
    return 2;
  } catch (const TypeError& e) {
    err << e.render(path) << "\n";
    return e.code() == Code::kInternal ? 3 : 1;
  } catch (const EvalError& e) {
    err << e.render(path) << "\n";
    return 1;
  } catch (const VerifyError& e) {
    err << e.render(path) << "\n";
    return 1;
  } catch (const SoloError& e) {
    err << e.render(path) << "\n";
    return e.code() == Code::kInternal ? 3 : 1;
  } catch (const std::exception& e) {
    err << "solo: internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace solo::cli

#endif  // SOLO_CLI_HPP
