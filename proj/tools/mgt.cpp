#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mgt/cli.hpp"

namespace {

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"micro gas turbine analysis toolkit"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario config and list every violation");
    validate->add_option("config", validate_path, "config file")->required();

    std::string module, config_path, out_dir, sweep;
    auto* run = app.add_subcommand("run", "run an analysis and write CSV outputs");
    run->add_option("module", module, "cycle | combustor | turbine | bearing | all")
        ->required()
        ->check(CLI::IsMember({"cycle", "combustor", "turbine", "bearing", "all"}));
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--sweep", sweep, "section.key=start:stop:n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : mgt::cli::kValidationFailure;
    }

    const std::string& path = validate->parsed() ? validate_path : config_path;
    const auto text = slurp(path);
    if (!text) {
        std::cerr << "cannot read config " << path << "\n";
        return mgt::cli::kValidationFailure;
    }
    if (validate->parsed()) return mgt::cli::validate_command(*text, std::cout, std::cerr);
    std::optional<std::string> sw;
    if (!sweep.empty()) sw = sweep;
    return mgt::cli::run_command(module, *text, out_dir, sw, std::cout, std::cerr);
}
