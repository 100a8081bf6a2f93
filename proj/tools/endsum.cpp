// endsum: end-cohomology calculator for ladder-type open manifolds.
//
// Scenario files declare spaces (stringers, ladders, merged sums, capped
// ladder chains) and ask for invariants, pairwise comparisons, self-sum
// censuses, or direct-limit oracle checks.  See README.md for the grammar.

#include "endsum/run.hpp"
#include "endsum/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

int load_scenario(const std::string& path, endsum::ScenarioDoc& doc)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        doc = endsum::parse_scenario(buffer.str());
    } catch (const endsum::ScenarioError& e) {
        std::cerr << e.diagnostic.to_string(path) << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"end-cohomology calculator for ladder-type open manifolds"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "human";
    std::optional<int> depth;
    bool seedless = false;

    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("file", file, "scenario file")->required();
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "structured"}));
    run->add_option("--depth", depth, "override oracle-check truncation depths");
    run->add_flag("--seedless", seedless,
                  "deterministic evaluation (the only mode; accepted for compatibility)");

    CLI::App* check = app.add_subcommand("check", "parse and elaborate only");
    check->add_option("file", file, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    endsum::ScenarioDoc doc;
    if (int rc = load_scenario(file, doc))
        return rc;

    if (check->parsed()) {
        std::cout << "ok: " << doc.decl_count() << " declarations, " << doc.directive_count()
                  << " directives\n";
        return 0;
    }

    endsum::RunOptions opts;
    opts.structured = format == "structured";
    opts.depth_override = depth;
    endsum::RunOutput result = endsum::run_scenario(doc, opts);
    std::cout << result.out;
    std::cerr << result.log;
    return result.ok ? 0 : 1;
}
