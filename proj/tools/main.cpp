#include <exception>
#include <iostream>

#include "macnf/cli.hpp"

int main(int argc, char** argv) {
    try {
        return macnf::cli::run(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return macnf::cli::kInternal;
    }
}
