#include <iostream>

#include "wtc2/cli.hpp"

int main(int argc, char** argv)
{
    return wtc2::run_cli(argc, argv, std::cout, std::cerr);
}
