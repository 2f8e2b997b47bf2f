#include "immig/commands.hpp"
#include "immig/config.hpp"
#include "immig/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments for random processes with immigration"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::vector<std::string> overrides;
    for (const auto& name : immig::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("config", config_path, "experiment config file")->required();
        sub->add_option("--set", overrides, "override section.key=value")->take_all();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return immig::exit_config;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    immig::Config config;
    try {
        config = immig::Config::load(config_path);
        for (const auto& o : overrides) config.set(o);
    } catch (const immig::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return immig::exit_config;
    }
    return immig::run_command(command, config, std::cerr);
}
