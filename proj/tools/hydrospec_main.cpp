#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "hydrospec/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Viscous spectra and inviscid resonances of 2D shear flows"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int N_override = 0;
    double tau_override = -1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--N", N_override, "override grid size");
        sub->add_option("--tau", tau_override, "override deformation scale");
    };

    for (const char* name : {"spectrum", "resonances", "track", "validate", "sweep-alpha",
                             "sweep-tau"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        hydrospec::ExperimentConfig config = hydrospec::load_config(config_path);
        if (hydrospec::command_from_string(command) != config.command)
            throw hydrospec::config_error("config command '" +
                                          hydrospec::to_string(config.command) +
                                          "' does not match subcommand '" + command + "'");
        hydrospec::RunOptions options;
        options.out_dir = out_dir;
        if (N_override > 0) options.N_override = N_override;
        if (tau_override >= 0.0) options.tau_override = tau_override;

        const hydrospec::RunResult result = hydrospec::run_experiment(config, options);
        std::cout << hydrospec::render_report(result.validation);
        std::cout << "wrote " << result.csv.string() << "\n";
        return 0;
    } catch (const hydrospec::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hydrospec::validation_error& e) {
        std::cerr << "contour validation failed:\n" << e.what();
        return 3;
    } catch (const hydrospec::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
