// Copyright 2026 The qcover Authors
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

// qcover: coverage and mutation analysis for OpenQASM 2.0 circuits.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qcover/coverage.hpp"
#include "qcover/error.hpp"
#include "qcover/instrumenter.hpp"
#include "qcover/mutation.hpp"
#include "qcover/parallel.hpp"
#include "qcover/pipeline.hpp"
#include "qcover/qasm.hpp"
#include "qcover/transpiler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
    std::uint64_t seed{0};
    double epsilon{qcover::kDefaultEpsilon};
    std::size_t qubit_limit{26};
    std::size_t jobs{1};
    bool json{false};
    bool quiet{false};
};

struct Failure {
    std::string path;
    std::string error;
};

// Expands directories into their .qasm files (sorted); plain paths pass through.
std::vector<std::string> expand_paths(const std::vector<std::string> &inputs) {
    std::vector<std::string> out;
    for (const auto &input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            std::vector<std::string> found;
            for (const auto &entry : fs::recursive_directory_iterator(input)) {
                if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
                    found.push_back(entry.path().generic_string());
                }
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(input);
        }
    }
    return out;
}

void report_failures(const std::vector<Failure> &failures) {
    for (const auto &f : failures) {
        std::cerr << "error: " << f.path << ": " << f.error << "\n";
    }
}

json failures_json(const std::vector<Failure> &failures) {
    json out = json::array();
    for (const auto &f : failures) {
        out.push_back({{"path", f.path}, {"error", f.error}});
    }
    return out;
}

qcover::PipelineOptions pipeline_options(const GlobalFlags &g, std::optional<double> time_limit) {
    qcover::PipelineOptions options;
    options.epsilon = g.epsilon;
    options.simulator.qubit_limit = g.qubit_limit;
    options.simulator.seed = g.seed;
    options.time_limit_seconds = time_limit;
    return options;
}

struct CoverFlags {
    std::vector<std::string> paths;
    bool summary{false};
    std::optional<double> time_limit;
    std::size_t shots{0};
};

int cmd_cover(const GlobalFlags &g, const CoverFlags &flags) {
    const auto paths = expand_paths(flags.paths);
    struct Slot {
        std::optional<qcover::CoverageReport> report;
        std::map<std::string, std::size_t> counts;
        std::string error;
    };
    std::vector<Slot> slots(paths.size());
    const auto options = pipeline_options(g, flags.time_limit);
    qcover::parallel_for(paths.size(), g.jobs, [&](std::size_t i) {
        try {
            const qcover::Circuit circuit = qcover::qasm::parse_file(paths[i]);
            slots[i].report = qcover::cover(circuit, paths[i], options).report;
            if (flags.shots > 0) {
                slots[i].counts = qcover::sample_counts(circuit, flags.shots, options.simulator);
            }
        } catch (const std::exception &e) {
            slots[i].error = e.what();
        }
    });

    std::vector<qcover::CoverageReport> reports;
    std::vector<Failure> failures;
    json report_docs = json::array();
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (!slots[i].report) {
            failures.push_back({paths[i], slots[i].error});
            continue;
        }
        const auto &report = *slots[i].report;
        reports.push_back(report);
        if (g.json) {
            json doc = qcover::to_json(report);
            if (flags.shots > 0) {
                doc["counts"] = slots[i].counts;
            }
            report_docs.push_back(std::move(doc));
        } else if (!g.quiet) {
            std::cout << qcover::format_report(report);
            if (flags.shots > 0) {
                std::cout << fmt::format("  counts over {} shots:\n", flags.shots);
                for (const auto &[bits, n] : slots[i].counts) {
                    std::cout << fmt::format("    {} {}\n", bits.empty() ? "-" : bits, n);
                }
            }
            std::cout << "\n";
        }
    }

    const auto groups = qcover::summarize(reports);
    if (g.json) {
        json doc{{"schema", "qcover.cover.v1"}, {"reports", std::move(report_docs)}};
        if (flags.summary) {
            doc["summary"] = qcover::summary_to_json(groups);
        }
        doc["failures"] = failures_json(failures);
        std::cout << doc.dump(2) << "\n";
    } else if (flags.summary) {
        std::cout << qcover::format_summary(groups);
    }
    report_failures(failures);
    return failures.empty() ? kExitOk : kExitPartial;
}

struct MutateFlags {
    std::vector<std::string> paths;
    std::string operators{"qgr,qgd,qgi"};
    std::optional<std::size_t> budget;
    double timeout_factor{1.10};
    double timeout_floor{0.05};
    double tolerance{1e-8};
    std::string csv;
};

std::vector<qcover::MutationOperator> parse_operators(const std::string &text) {
    std::vector<qcover::MutationOperator> ops;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string name = text.substr(start, end - start);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        const auto op = qcover::operator_from_name(name);
        if (!op) {
            throw CLI::ValidationError("--operators", "unknown mutation operator '" + name + "'");
        }
        if (std::find(ops.begin(), ops.end(), *op) == ops.end()) {
            ops.push_back(*op);
        }
        start = end + 1;
    }
    return ops;
}

json campaign_json(const qcover::CampaignResult &r) {
    json verdicts = json::array();
    for (std::size_t i = 0; i < r.mutants.size(); ++i) {
        const auto &m = r.mutants[i];
        const auto &v = r.verdicts[i];
        json entry{{"id", m.id},
                   {"operator", std::string(qcover::operator_name(m.op))},
                   {"site", m.site},
                   {"detail", m.detail},
                   {"status", std::string(qcover::status_name(v.status))}};
        entry["fidelity"] = v.fidelity ? json(*v.fidelity) : json(nullptr);
        if (!v.error.empty()) {
            entry["error"] = v.error;
        }
        verdicts.push_back(std::move(entry));
    }
    auto counts = [](const qcover::VerdictCounts &c) {
        json out{{"mutants", c.mutants},
                 {"killed", c.killed},
                 {"survived", c.survived},
                 {"timeout", c.timeout},
                 {"errors", c.errors}};
        const auto score = c.score();
        out["score"] = score ? json(*score) : json(nullptr);
        return out;
    };
    json per_operator = json::object();
    for (const auto &[op, c] : r.per_operator) {
        per_operator[std::string(qcover::operator_name(op))] = counts(c);
    }
    return json{{"circuit", r.circuit},
                {"qubits", r.qubits},
                {"total", counts(r.total)},
                {"per_operator", std::move(per_operator)},
                {"verdicts", std::move(verdicts)}};
}

int cmd_mutate(const GlobalFlags &g, const MutateFlags &flags, const std::vector<qcover::MutationOperator> &ops) {
    const auto paths = expand_paths(flags.paths);
    qcover::CampaignOptions options;
    options.operators = ops;
    options.seed = g.seed;
    options.budget = flags.budget;
    options.jobs = g.jobs;
    options.judge.tolerance = flags.tolerance;
    options.judge.timeout_factor = flags.timeout_factor;
    options.judge.timeout_floor_seconds = flags.timeout_floor;
    options.judge.simulator.qubit_limit = g.qubit_limit;
    options.judge.simulator.seed = g.seed;
    const auto cover_options = pipeline_options(g, std::nullopt);

    std::vector<Failure> failures;
    std::string csv = qcover::csv_header();
    json campaigns = json::array();
    bool engine_errors = false;
    for (const auto &path : paths) {
        qcover::CampaignResult result;
        try {
            const qcover::Circuit circuit = qcover::qasm::parse_file(path);
            auto report = qcover::cover(circuit, path, cover_options).report;
            result = qcover::campaign(circuit, path, options, std::move(report));
        } catch (const std::exception &e) {
            failures.push_back({path, e.what()});
            continue;
        }
        engine_errors = engine_errors || result.total.errors > 0;
        csv += qcover::csv_rows(result);
        if (g.json) {
            campaigns.push_back(campaign_json(result));
            continue;
        }
        const auto score = result.total.score();
        std::cout << fmt::format("{}: {} mutants, {} killed, {} survived, {} timeout, {} errors, score {}\n", path,
                                 result.total.mutants, result.total.killed, result.total.survived,
                                 result.total.timeout, result.total.errors,
                                 score ? fmt::format("{:.4f}", *score) : "null");
        if (!g.quiet) {
            for (std::size_t i = 0; i < result.mutants.size(); ++i) {
                const auto &m = result.mutants[i];
                const auto &v = result.verdicts[i];
                std::string extra;
                if (v.fidelity) {
                    extra = fmt::format(" (fidelity {:.6f})", *v.fidelity);
                } else if (!v.error.empty()) {
                    extra = " (" + v.error + ")";
                }
                std::cout << fmt::format("  #{} {} {}: {}{}\n", m.id, qcover::operator_name(m.op), m.detail,
                                         qcover::status_name(v.status), extra);
            }
        }
    }
    if (!flags.csv.empty()) {
        std::ofstream out(flags.csv, std::ios::binary);
        out << csv;
        if (!out) {
            failures.push_back({flags.csv, "cannot write CSV"});
        }
    }
    if (g.json) {
        std::cout << json{{"schema", "qcover.mutate.v1"},
                          {"campaigns", std::move(campaigns)},
                          {"failures", failures_json(failures)}}
                         .dump(2)
                  << "\n";
    }
    report_failures(failures);
    return failures.empty() && !engine_errors ? kExitOk : kExitPartial;
}

struct InstrumentFlags {
    std::string path;
    std::string stage{"instrumented"};
    bool provenance{false};
};

int cmd_instrument(const GlobalFlags &g, const InstrumentFlags &flags) {
    std::string text;
    std::size_t probes = 0;
    try {
        const qcover::Circuit circuit = qcover::qasm::parse_file(flags.path);
        const auto transpiled = qcover::transpile(circuit);
        if (flags.stage == "transpiled") {
            text = flags.provenance ? qcover::dump_provenance(transpiled) : qcover::qasm::serialize(transpiled.circuit);
            if (transpiled.origins.empty()) {
                text += "// fully sequential, coverage 100% by definition\n";
            }
        } else {
            const auto instrumented = qcover::instrument(transpiled);
            probes = instrumented.probe_count();
            text = qcover::render_instrumented(instrumented);
            if (flags.provenance) {
                const std::string table = qcover::dump_provenance(transpiled);
                text += table.substr(table.find("// provenance:"));
            }
        }
    } catch (const std::exception &e) {
        report_failures({{flags.path, e.what()}});
        return kExitPartial;
    }
    if (g.json) {
        std::cout << json{{"schema", "qcover.instrument.v1"},
                          {"circuit", flags.path},
                          {"stage", flags.stage},
                          {"probes", probes},
                          {"text", text}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Coverage and mutation analysis for OpenQASM 2.0 circuits", "qcover"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Seed for measurement sampling and mutant subsampling")->envname("QCOVER_SEED");
    app.add_option("--epsilon", g.epsilon, "Threshold for classifying expectation values as certain")
        ->envname("QCOVER_EPSILON")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--qubit-limit", g.qubit_limit, "Largest circuit the simulator accepts")
        ->envname("QCOVER_QUBIT_LIMIT")
        ->check(CLI::Range(1, 40));
    app.add_option("--jobs", g.jobs, "Worker threads")->envname("QCOVER_JOBS")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "Write one JSON document to stdout")->envname("QCOVER_JSON");
    app.add_flag("--quiet", g.quiet, "Only print summaries and errors")->envname("QCOVER_QUIET");

    CoverFlags cover_flags;
    auto *cover = app.add_subcommand("cover", "Measure condition, decision and path coverage");
    cover->add_option("paths", cover_flags.paths, "Files or directories of .qasm files")->required();
    cover->add_flag("--summary", cover_flags.summary, "Add min/max/median/avg rows over all circuits");
    cover->add_option("--time-limit", cover_flags.time_limit, "Per-circuit wall-time limit in seconds")
        ->envname("QCOVER_TIME_LIMIT")
        ->check(CLI::PositiveNumber);
    cover->add_option("--shots", cover_flags.shots, "Also sample final measurement counts")->envname("QCOVER_SHOTS");

    MutateFlags mutate_flags;
    auto *mutate = app.add_subcommand("mutate", "Run a mutation campaign");
    mutate->add_option("paths", mutate_flags.paths, "Files or directories of .qasm files")->required();
    mutate->add_option("--operators", mutate_flags.operators, "Comma-separated subset of qgr,qgd,qgi")
        ->envname("QCOVER_OPERATORS");
    mutate->add_option("--budget", mutate_flags.budget, "Maximum mutants per circuit")
        ->envname("QCOVER_BUDGET")
        ->check(CLI::PositiveNumber);
    mutate->add_option("--timeout-factor", mutate_flags.timeout_factor, "Slowdown that counts as a timeout")
        ->envname("QCOVER_TIMEOUT_FACTOR")
        ->check(CLI::PositiveNumber);
    mutate->add_option("--timeout-floor", mutate_flags.timeout_floor, "Runtimes below this never time out (s)")
        ->envname("QCOVER_TIMEOUT_FLOOR")
        ->check(CLI::NonNegativeNumber);
    mutate->add_option("--tolerance", mutate_flags.tolerance, "Fidelity tolerance for equivalence")
        ->envname("QCOVER_TOLERANCE")
        ->check(CLI::Range(0.0, 1.0));
    mutate->add_option("--csv", mutate_flags.csv, "Write per-operator rows to this CSV file");

    InstrumentFlags instrument_flags;
    auto *instrument = app.add_subcommand("instrument", "Print the transpiled or instrumented circuit");
    instrument->add_option("path", instrument_flags.path, "OpenQASM 2.0 file")->required();
    instrument->add_option("--stage", instrument_flags.stage, "transpiled or instrumented")
        ->check(CLI::IsMember({"transpiled", "instrumented"}));
    instrument->add_flag("--provenance", instrument_flags.provenance, "Append the cx provenance table");

    std::vector<qcover::MutationOperator> ops;
    try {
        app.parse(argc, argv);
        if (mutate->parsed()) {
            ops = parse_operators(mutate_flags.operators);
        }
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cover->parsed()) {
            return cmd_cover(g, cover_flags);
        }
        if (mutate->parsed()) {
            return cmd_mutate(g, mutate_flags, ops);
        }
        return cmd_instrument(g, instrument_flags);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
}
