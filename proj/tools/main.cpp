#include "hyperdeg/cli.hpp"

int main(int argc, char** argv) { return hyperdeg::run(argc, argv); }
