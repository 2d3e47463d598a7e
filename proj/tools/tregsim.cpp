#include "tregsim/commands.hpp"

int main(int argc, char** argv) {
    return tregsim::cli_main(argc, argv);
}
