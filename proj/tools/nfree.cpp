#include <string>
#include <vector>

#include "nfree/cli.hpp"

int main(int argc, char** argv) {
  return nfree::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
