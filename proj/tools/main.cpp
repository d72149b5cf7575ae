#include <string>
#include <vector>

#include "randmarkov/experiments.hpp"

int main(int argc, char** argv) {
  return randmarkov::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
