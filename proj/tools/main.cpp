#include "groupoidrep/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace groupoidrep;
    CLI::App app{"Representations of finite groupoids"};
    app.require_subcommand(1);
    RunConfig config;
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--input,-i", config.input, "input document (JSON)")->required();
        sub->add_option("--seed", config.seed, "random seed");
        sub->add_option("--tol", config.tol, "tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", config.format, "report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out,-o", config.out, "write the report here");
        sub->add_option("--rep", config.rep, "representation name");
        sub->add_option("--rep2", config.rep2, "second representation name");
        sub->add_option("--bibundle", config.bibundle, "bibundle name");
        sub->callback([&config, name] { config.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run_and_write(config, std::cout, std::cerr);
}
