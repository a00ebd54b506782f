#include "common.hpp"

#include "gossip/experiment.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace gossipsim {

namespace {

struct ExperimentOptions {
    std::string plan_path;
    std::string results_path;
    std::string summary_path;
    unsigned jobs = 1;
    std::uint64_t base_seed = 0;
};

}  // namespace

void setup_experiment(CLI::App& app) {
    auto cmd = app.add_subcommand(
        "experiment", "Run a Monte Carlo plan and emit per-trial and summary CSV");
    auto opts = std::make_shared<ExperimentOptions>();
    cmd->add_option("plan", opts->plan_path, "Plan JSON file")->required();
    cmd->add_option("--results", opts->results_path,
                    "Write per-trial CSV here (omitted otherwise)");
    cmd->add_option("--summary", opts->summary_path,
                    "Write summary CSV here (default: stdout)");
    cmd->add_option("--jobs", opts->jobs, "Parallel trial workers (output-invariant)");
    const CLI::Option* seed_flag = cmd->add_option(
        "--seed", opts->base_seed, "Override the plan's base_seed ($GOSSIP_SEED honored)");

    cmd->callback([opts, seed_flag] {
        std::ifstream in(opts->plan_path);
        if (!in) {
            throw gossip::IoError("cannot open plan file: " + opts->plan_path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        gossip::ExperimentPlan plan = gossip::plan_from_json_text(buffer.str());
        if (seed_flag->count() > 0 || std::getenv("GOSSIP_SEED") != nullptr) {
            plan.base_seed = resolve_seed(seed_flag, opts->base_seed);
        }

        const gossip::ExperimentResult result = gossip::run_experiment(plan, opts->jobs);
        if (result.censored_runs > 0) {
            std::cerr << "warning: " << result.censored_runs
                      << " run(s) hit max_rounds and were excluded from means\n";
        }

        if (!opts->results_path.empty()) {
            std::ostringstream text;
            gossip::write_results_csv(plan, result, text);
            write_output(opts->results_path, text.str());
        }
        std::ostringstream summary;
        gossip::write_summary_csv(plan, result, summary);
        write_output(opts->summary_path, summary.str());
    });
}

}  // namespace gossipsim
