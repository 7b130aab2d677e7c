#include <cstdlib>
#include <iostream>

#include "vortexlab/acceptance.hpp"

int main(int argc, char** argv) {
    int fine = 1024, coarse = 512;
    if (argc > 1) fine = std::atoi(argv[1]);
    if (argc > 2) coarse = std::atoi(argv[2]);
    const vortexlab::AcceptanceOutcome outcome =
        vortexlab::run_acceptance(std::cout, fine, coarse);
    return outcome.all_pass() ? 0 : 1;
}
