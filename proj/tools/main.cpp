#include "common.hpp"

#include "gossip/graph.hpp"

#include "CLI11.hpp"

#include <exception>
#include <iostream>

namespace gossipsim {

void setup_gen(CLI::App& app);
void setup_run(CLI::App& app);
void setup_couple(CLI::App& app);
void setup_bounds(CLI::App& app);
void setup_experiment(CLI::App& app);

}  // namespace gossipsim

int main(int argc, char** argv) {
    CLI::App app{
        "gossipsim - randomized rumor spreading simulator (push/pull, classical and "
        "buffered models)"};
    app.require_subcommand(1);

    gossipsim::setup_gen(app);
    gossipsim::setup_run(app);
    gossipsim::setup_couple(app);
    gossipsim::setup_bounds(app);
    gossipsim::setup_experiment(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: " << e.what() << "\n";
        return gossipsim::kExitUsage;
    } catch (const gossipsim::CensoredRun& e) {
        std::cerr << e.what() << "\n";
        return gossipsim::kExitCensored;
    } catch (const gossip::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gossipsim::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gossipsim::kExitUsage;
    }
    return gossipsim::kExitOk;
}
