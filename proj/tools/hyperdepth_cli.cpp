#include <cstdlib>
#include <iostream>

#include "hyperdepth/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto r = hyperdepth::cli::run(args, std::getenv("HYPERDEPTH_SEED"));
    std::cout << r.out;
    std::cerr << r.err;
    return r.exitCode;
}
