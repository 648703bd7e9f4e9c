#include <vector>

#include "bcstat/cli_reports.hpp"

int main(int argc, char** argv) {
  return bcstat::run(std::vector<std::string>(argv + 1, argv + argc));
}
