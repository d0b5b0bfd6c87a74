#include <iostream>

#include "harness/commands.hpp"

int main(int argc, char** argv) {
	return slsched::harness::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
