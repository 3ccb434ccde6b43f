// holo: command line front end for batch experiments.
//
//   holo run <config.json> [--output report.json]
//   holo emit <report.json> --format rows|structured [--output file]
//   holo parse-check <map-text>
//   holo list-builtins
//
// Exit codes: 0 success, 1 usage or I/O error, 2 invalid input, 3 numerical failure.

#include "holo/errors.hpp"
#include "holo/experiment.hpp"
#include "holo/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

int cmd_run(const std::string& config_path, std::string output) {
    holo::ExperimentConfig cfg;
    try {
        cfg = holo::load_config(config_path);
    } catch (const holo::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const auto outcome = holo::run_experiment(cfg);
    if (output.empty()) output = cfg.output.empty() ? config_path + ".report.json" : cfg.output;
    if (int rc = write_text(output, outcome.report.dump(2) + "\n")) return rc;
    if (outcome.exit_code != 0) std::cerr << "error: " << outcome.report.value("error", "") << "\n";
    else if (output != "-") std::cerr << "wrote " << output << "\n";
    return outcome.exit_code;
}

int cmd_emit(const std::string& report_path, const std::string& format, const std::string& output) {
    std::ifstream in(report_path);
    if (!in) {
        std::cerr << "error: cannot open " << report_path << "\n";
        return 1;
    }
    try {
        const auto report = nlohmann::json::parse(in);
        const auto fmt = format == "rows" ? holo::EmitFormat::Rows : holo::EmitFormat::Structured;
        return write_text(output, holo::emit_series(report, fmt));
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << report_path << ": " << e.what() << "\n";
        return 2;
    } catch (const holo::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_parse_check(const std::string& text) {
    try {
        const auto m = holo::parse(text);
        std::cout << holo::print(m) << "\n";
        std::cout << "dimension " << m.dim() << "\n";
        return 0;
    } catch (const holo::ParseError& e) {
        std::cerr << text << "\n" << std::string(e.position, ' ') << "^\n" << e.what() << "\n";
        return 2;
    } catch (const holo::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_list_builtins() {
    for (const auto& b : holo::builtins()) std::cout << b.signature << "\n    " << b.description << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments with holomorphic maps of C^k"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(holo::kVersion));
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for sampling and certification")
        ->check(CLI::Range(1u, 256u));

    std::string config, report, output, format = "structured", map_text;

    auto* run = app.add_subcommand("run", "run an experiment config and write its report");
    run->add_option("config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", output, "report path ('-' for stdout)");

    auto* emit = app.add_subcommand("emit", "print a report's series as rows or structured JSON");
    emit->add_option("report", report, "report produced by 'run'")->required()->check(CLI::ExistingFile);
    emit->add_option("-f,--format", format, "rows or structured")
        ->check(CLI::IsMember({"rows", "structured"}));
    emit->add_option("-o,--output", output, "output path");

    auto* pc = app.add_subcommand("parse-check", "parse a map expression and print its canonical form");
    pc->add_option("map", map_text, "map expression")->required();

    auto* lb = app.add_subcommand("list-builtins", "list the built-in map families");

    CLI11_PARSE(app, argc, argv);
    holo::set_worker_count(threads);

    if (run->parsed()) return cmd_run(config, output);
    if (emit->parsed()) return cmd_emit(report, format, output);
    if (pc->parsed()) return cmd_parse_check(map_text);
    if (lb->parsed()) return cmd_list_builtins();
    return 1;
}
