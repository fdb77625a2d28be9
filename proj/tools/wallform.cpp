#include <iostream>

#include "CLI11.hpp"
#include "wallform/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Wall forms over a coefficient group: validation, ranks, complements and complexes"};
    std::string command;
    wallform::RunConfig config;
    std::string format = "json";
    app.add_option("command", command, "validate | rank | stable-rank | complement | complex | homology | lcm | "
                                       "connectivity | transitivity | kernel-witness | cancel | standard-form")
        ->required();
    app.add_option("args", config.args, "input file; lcm also takes n; standard-form takes g H parameter");
    app.add_option("--bound", config.bound, "coordinate bound of the search window")->capture_default_str();
    app.add_option("--jmax", config.j_max, "largest padding for stable-rank")->capture_default_str();
    app.add_option("--max-degree", config.max_degree, "highest homology degree")->capture_default_str();
    app.add_option("--budget", config.budget, "cap on candidates or simplices")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app.add_option("--seed", config.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--emit", config.emit, "write the generated form file here");
    CLI11_PARSE(app, argc, argv);

    config.format = format == "table" ? wallform::OutputFormat::table : wallform::OutputFormat::json;
    return wallform::run(command, config, std::cout);
}
