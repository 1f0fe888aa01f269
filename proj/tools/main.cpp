#include <vector>

#include "figjudge/cli.hpp"

int main(int argc, char** argv) {
    return figjudge::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
