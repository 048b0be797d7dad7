#include "clearvid/cli.hpp"

int main(int argc, char** argv) {
    return clearvid::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
