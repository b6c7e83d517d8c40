#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_commands.hpp"

namespace {

using affineproj::cli::CommandResult;
using affineproj::cli::RunConfig;

std::uint64_t budget_from_env() {
    const char* raw = std::getenv("AFFINEPROJ_BUDGET");
    if (raw == nullptr) return affineproj::kDefaultWordBudget;
    try {
        const unsigned long long v = std::stoull(raw);
        if (v == 0) throw std::invalid_argument("zero");
        return v;
    } catch (const std::exception&) {
        throw affineproj::ConfigError("AFFINEPROJ_BUDGET must be a positive integer");
    }
}

void emit(const CommandResult& result, const std::string& out_path,
          const std::string& default_csv_name) {
    if (!result.text.empty()) std::cerr << result.text;
    if (!result.csv.empty()) {
        const std::string path = out_path.empty() ? default_csv_name : out_path;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw affineproj::ConfigError("cannot write output file '" + path + "'");
        out << result.csv;
        std::cerr << "csv written to " << path << '\n';
    } else if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw affineproj::ConfigError("cannot write output file '" + out_path + "'");
        out << result.summary.dump(2) << '\n';
    }
    std::cout << result.summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension theory of planar self-affine sets and measures"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 1;

    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--workers", workers, "worker threads for row-parallel scans")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output path for CSV (or JSON copy)");

    auto* validate = app.add_subcommand("validate", "validate the system and report flags");
    auto* dims = app.add_subcommand("dims", "affinity and Lyapunov dimensions, block ladder");
    auto* scan = app.add_subcommand("scan", "projected-dimension estimates over a direction grid");
    auto* furstenberg =
        app.add_subcommand("furstenberg", "Furstenberg measure sample and stationarity residual");
    auto* equidist =
        app.add_subcommand("equidist", "equidistribution of the time-N direction orbit");
    auto* render = app.add_subcommand("render", "attractor point cloud");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig config = affineproj::cli::load_config(config_path);
        if (seed_given) config.seed = seed;
        config.workers = workers;
        config.budget = budget_from_env();

        if (validate->parsed()) {
            emit(affineproj::cli::cmd_validate(config), out_path, "validate.json");
        } else if (dims->parsed()) {
            emit(affineproj::cli::cmd_dims(config), out_path, "dims.json");
        } else if (scan->parsed()) {
            emit(affineproj::cli::cmd_scan(config), out_path, "scan.csv");
        } else if (furstenberg->parsed()) {
            emit(affineproj::cli::cmd_furstenberg(config), out_path, "furstenberg.csv");
        } else if (equidist->parsed()) {
            emit(affineproj::cli::cmd_equidist(config), out_path, "equidist.json");
        } else if (render->parsed()) {
            emit(affineproj::cli::cmd_render(config), out_path, "render.csv");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return affineproj::cli::exit_code_for(e);
    }
    return 0;
}
