#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "thermocq/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"transient thermoelastic scattering studies"};
    app.require_subcommand(1);

    std::string run_cfg;
    CLI::App* run = app.add_subcommand("run", "execute the study described by a config file");
    run->add_option("config", run_cfg, "path to a key = value config file")->required();

    std::string check_cfg;
    CLI::App* validate =
        app.add_subcommand("validate", "parse a config file and echo the resolved settings");
    validate->add_option("config", check_cfg, "path to a key = value config file")->required();

    std::string scheme = "bdf2";
    double dt = 0.1;
    int n = 8;
    CLI::App* weights =
        app.add_subcommand("cq-weights", "print convolution weights of the symbols s and s^2");
    weights->add_option("--scheme", scheme, "bdf2 or trap");
    weights->add_option("--dt", dt, "time step");
    weights->add_option("--n", n, "number of weights (1..4096)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return thermocq::run_study(thermocq::parse_config(run_cfg));
        if (*validate) {
            std::fputs(thermocq::describe(thermocq::parse_config(check_cfg)).c_str(), stdout);
            return 0;
        }
        if (*weights) {
            thermocq::dump_cq_weights(scheme, dt, n);
            return 0;
        }
    } catch (const thermocq::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
