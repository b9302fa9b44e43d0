#include "toroidal/cli.hpp"

int main(int argc, char** argv) {
  return toroidal::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
