// Copyright 2026 The qkdsim Authors
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

#include "qkdsim/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "qkdsim/adversary.hpp"
#include "qkdsim/diagnostics.hpp"
#include "qkdsim/error.hpp"
#include "qkdsim/feasibility.hpp"
#include "qkdsim/scenario.hpp"
#include "qkdsim/tolerance.hpp"

namespace qkd::cli {

namespace {

constexpr const char* kToleranceEnv = "QKDSIM_TOL";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_tolerance(const std::string& text, const std::string& source) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || errno != 0 || !std::isfinite(value) || value <= 0.0 || value >= 1.0) {
        throw UsageError(source + ": tolerance must be a number in (0, 1), got '" + text + "'");
    }
    return value;
}

// Writes through a sibling temporary file so a failed run never leaves a
// truncated report behind.
void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
        file << content;
        file.flush();
        if (!file) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move report into place at '" + path + "'");
    }
}

void emit(const std::string& content, const std::optional<std::string>& path, std::ostream& out) {
    if (path) {
        write_atomically(*path, content);
    } else {
        out << content;
        out.flush();
    }
}

Scenario load(const std::string& path) {
    try {
        return load_scenario(path);
    } catch (const std::ios_base::failure& e) {
        throw IoError(e.what());
    }
}

int cmd_validate(const std::string& path, std::ostream& out) {
    const Scenario scenario = load(path);
    out << "ok: " << path << " (d=" << scenario.d;
    if (scenario.rounds) out << ", rounds=" << *scenario.rounds << ", attack=" << scenario.attack_preset;
    if (scenario.template_id) out << ", template=" << *scenario.template_id;
    out << ")\n";
    return kExitOk;
}

struct RunOptions {
    std::string path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string format = "json";
    std::string tol;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    const double tolerance = resolve_tolerance(options.tol);
    const Scenario scenario = load(options.path);
    if (!scenario.rounds) throw ScenarioError("rounds", "run needs a session scenario (rounds and keys)", std::nullopt);

    const ProtocolConfig config = to_protocol_config(scenario, options.seed, tolerance);
    const AttackScript script = to_attack_script(scenario, config);
    const SessionResult result = run_session(config, script);

    const std::string report = options.format == "text" ? session_to_text(config, script, result)
                                                        : dump_json(session_to_json(config, script, result)) + "\n";
    emit(report, options.out ? options.out : scenario.output, out);
    if (!result.violations.empty()) {
        for (const auto& v : result.violations) err << "invariant violation: " << v << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

struct SearchOptions {
    std::string path;
    std::optional<int> depth;
    std::optional<std::string> out;
    std::string tol;
};

int cmd_search(const SearchOptions& options, std::ostream& out) {
    const double tolerance = resolve_tolerance(options.tol);
    const Scenario scenario = load(options.path);
    if (!scenario.template_id) throw ScenarioError("template", "search needs a template", std::nullopt);

    const RoundTemplate tmpl = to_round_template(scenario);
    const int depth = options.depth.value_or(scenario.depth.value_or(1));
    if (depth > kMaxSearchDepth) {
        throw Error(ErrorCode::DepthCapExceeded,
                    "depth " + std::to_string(depth) + " exceeds the cap of " + std::to_string(kMaxSearchDepth));
    }
    if (depth < 0) throw UsageError("--depth must be non-negative");

    const std::vector<int> first(static_cast<std::size_t>(tmpl.key_arity), 0);
    const auto eve = eve_labels_in(tmpl.build(first).layout());
    if (eve.empty()) throw Error(ErrorCode::MissingRegister, "template has no Eve register");

    const GateFamily family = affine_ke_family(tmpl.d, eve.front());
    const std::vector<GateSequence> probes = {{ControlledAdd{"k", eve.front(), tmpl.d - 1}}};
    const FeasibilityReport report = feasibility_search(tmpl, family, depth, tolerance, probes);
    emit(render_report(report), options.out ? options.out : scenario.output, out);
    return kExitOk;
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::InvariantViolation ? kExitInvariant : kExitConfig;
}

}  // namespace

double resolve_tolerance(const std::string& flag_value) {
    if (!flag_value.empty()) return parse_tolerance(flag_value, "--tol");
    if (const char* env = std::getenv(kToleranceEnv); env != nullptr && *env != '\0') {
        return parse_tolerance(env, kToleranceEnv);
    }
    return tol::kSchmidtCutoff;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qudit key-distribution protocol simulator", "qkdsim"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file against the schema");
    validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

    RunOptions run_options;
    std::uint64_t seed = 0;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Run a protocol session and write its transcript");
    run->add_option("scenario", run_options.path, "Scenario JSON file")->required();
    auto* seed_option = run->add_option("--seed", seed, "Measurement seed (overrides the scenario seed)");
    auto* run_out_option = run->add_option("--out", run_out, "Report path (default: scenario output, else stdout)");
    run->add_option("--format", run_options.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    run->add_option("--tol", run_options.tol, "Schmidt rank tolerance");

    SearchOptions search_options;
    int depth = 1;
    std::string search_out;
    auto* search = app.add_subcommand("search", "Search Eve's exit operations on a round template");
    search->add_option("scenario", search_options.path, "Scenario JSON file")->required();
    auto* depth_option = search->add_option("--depth", depth, "Maximum sequence length");
    auto* search_out_option = search->add_option("--out", search_out, "Report path (default: scenario output, else stdout)");
    search->add_option("--tol", search_options.tol, "Schmidt rank tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*validate) return cmd_validate(validate_path, out);
        if (*run) {
            if (*seed_option) run_options.seed = seed;
            if (*run_out_option) run_options.out = run_out;
            return cmd_run(run_options, out, err);
        }
        if (*depth_option) search_options.depth = depth;
        if (*search_out_option) search_options.out = search_out;
        return cmd_search(search_options, out);
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace qkd::cli
