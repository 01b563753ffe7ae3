#include <iostream>

#include <CLI11.hpp>

#include "criteria.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion")
        ->check(CLI::Range(1, modfront::acceptance::criterion_count()));
    CLI11_PARSE(app, argc, argv);

    bool ok = true;
    for (int id = 1; id <= modfront::acceptance::criterion_count(); ++id) {
        if (only != 0 && id != only) continue;
        const auto r = modfront::acceptance::run_criterion(id);
        std::cout << modfront::acceptance::format_result(r) << std::endl;
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}
