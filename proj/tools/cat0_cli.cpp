#include <iostream>

#include "cat0/reports.hpp"

int main(int argc, char** argv) {
    return cat0::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
