#include <iostream>

#include "cacw_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cacw::app::run(std::move(args), std::cout, std::cerr);
}
