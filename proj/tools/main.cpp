#include <vector>
#include <string>

#include "stefan/cli_main.hpp"

int main(int argc, char** argv) {
  return stefan::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
