#include <farpoint/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    const auto parsed = farpoint::cli::parse_args(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return farpoint::cli::run(*parsed.config, std::cout, std::cerr);
}
