#include <string>
#include <vector>

#include "beamball/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return beamball::run_subcommand(args);
}
