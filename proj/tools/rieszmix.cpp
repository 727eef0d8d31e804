#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "riesz/driver.hpp"
#include "riesz/instance_io.hpp"

namespace {

void add_common_flags(CLI::App* cmd, riesz::RunConfig& config) {
    cmd->add_option("--instance", config.instance_path, "instance or scenario file");
    cmd->add_option("--seed", config.seed, "seed for all derived randomness");
    cmd->add_option("--cap", config.cap, "block cap for brute-force enumeration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--window", config.window, "index window length (0 = command default)");
    cmd->add_option("--out", config.out_path, "report file (stdout when omitted)");
    cmd->add_option("--format", config.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for conditional mixing, near-epoch dependence and "
                 "AR(1) processes on finite weighted atom spaces"};
    app.require_subcommand(1);

    riesz::RunConfig config;
    for (const char* name : {"validate", "norms", "mixing", "ned", "ar1-demo", "lln", "all"}) {
        CLI::App* cmd = app.add_subcommand(name, std::string("run the ") + name + " suite");
        add_common_flags(cmd, config);
        cmd->callback([&config, name] { config.command = name; });
    }

    std::uint64_t gen_seed = 1;
    int gen_atoms = 8;
    int gen_partitions = 2;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("generate", "write a random instance file");
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--atoms", gen_atoms, "atom count (at most 64)");
    gen->add_option("--partitions", gen_partitions, "number of random partitions");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)")->required(false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            riesz::Instance inst =
                riesz::generate_random_instance(gen_seed, gen_atoms, gen_partitions);
            std::string text = riesz::serialize_instance(inst);
            if (gen_out.empty()) {
                std::fputs(text.c_str(), stdout);
            } else {
                riesz::write_file(gen_out, text);
            }
            return 0;
        }
        return riesz::run(config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
