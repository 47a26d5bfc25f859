#include <iostream>

#include "dbv/cli.hpp"

int main(int argc, char **argv)
{
    return dbv::run_cli(argc, argv, std::cout, std::cerr);
}
