#include <string>
#include <vector>

#include "pdechunk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pdechunk::cli_dispatch(args);
}
