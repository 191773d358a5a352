#include "dsuq/cli.hpp"

int main(int argc, char** argv) {
  return dsuq::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
