#include <iostream>

#include <mnconvex/cli/commands.hpp>

int main(int argc, char **argv)
{
    return mnconvex::cli::run(argc, argv, std::cout, std::cerr);
}
