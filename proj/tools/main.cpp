#include <iostream>

#include "commands.hpp"
#include "modfront/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Modulating-front toolkit"};
    app.require_subcommand(1);
    const auto commands = cli::register_commands(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        std::cerr << '\n' << app.help();
        return 2;
    }
    try {
        for (const auto& c : commands)
            if (c.app->parsed()) return c.run();
    } catch (const modfront::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
