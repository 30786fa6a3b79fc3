#include <vector>

#include "opspec/cli.hpp"

int main(int argc, char** argv) {
    return opspec::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
