/* rpbis -- probabilistic bisimilarity checker and distinguishing-formula
 * synthesizer for reactive probabilistic transition systems. */

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "rpbis/cli.hpp"
#include "rpbis/errors.hpp"

using namespace rpbis;

int main(int argc, char** argv) {
    CLI::App app{"probabilistic bisimilarity and distinguishing formulas"};
    app.require_subcommand(1);

    std::string file, s1, s2, state, formula, logic_flag = "or";
    bool json = false, decimal = false, dot = false;
    unsigned depth = 0;
    bool depth_set = false;
    cli::SelftestParams st;

    auto* bisim = app.add_subcommand("bisim", "decide probabilistic bisimilarity");
    bisim->add_option("file", file)->required();
    bisim->add_option("s1", s1)->required();
    bisim->add_option("s2", s2)->required();
    bisim->add_flag("--json", json);

    auto* dist = app.add_subcommand("distinguish", "synthesize a distinguishing formula");
    dist->add_option("file", file)->required();
    dist->add_option("s1", s1)->required();
    dist->add_option("s2", s2)->required();
    dist->add_option("--logic", logic_flag, "neg-and | neg-or | and | or")
        ->check(CLI::IsMember({"neg-and", "neg-or", "and", "or"}));
    dist->add_flag("--json", json);
    dist->add_flag("--decimal", decimal, "render probabilities as decimals");

    auto* check = app.add_subcommand("check", "evaluate a formula at a state");
    check->add_option("file", file)->required();
    check->add_option("state", state)->required();
    check->add_option("formula", formula)->required();

    auto* canon = app.add_subcommand("canon", "canonical tree of a state");
    canon->add_option("file", file)->required();
    canon->add_option("state", state)->required();
    canon->add_option("--depth", depth)->each([&](const std::string&) { depth_set = true; });
    canon->add_flag("--dot", dot, "emit GraphViz");

    auto* selftest = app.add_subcommand("selftest", "randomized property suite");
    selftest->add_option("--cases", st.cases);
    selftest->add_option("--seed", st.seed)->envname("RPBIS_SEED");
    selftest->add_option("--threads", st.threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bisim) {
            cli::Report r = cli::cmd_bisim(file, s1, s2);
            std::cout << (json ? cli::report_to_json(r) + "\n" : cli::report_to_text(r));
            return r.verdict == "bisimilar" ? 0 : 1;
        }
        if (*dist) {
            cli::Report r =
                cli::cmd_distinguish(file, s1, s2, logic_from_name(logic_flag), decimal);
            std::cout << (json ? cli::report_to_json(r) + "\n" : cli::report_to_text(r));
            return r.verdict == "bisimilar" ? 0 : 1;
        }
        if (*check) {
            bool sat = cli::cmd_check(file, state, formula);
            std::cout << (sat ? "true" : "false") << "\n";
            return sat ? 0 : 1;
        }
        if (*canon) {
            if (!depth_set) depth = cli::load_system(file).num_states();
            std::cout << cli::cmd_canon(file, state, depth, dot);
            return 0;
        }
        if (*selftest) {
            unsigned failed = cli::run_selftest(st, std::cout);
            return failed == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << err_kind_name(e.kind()) << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
