#include <exception>
#include <iostream>

#include "config.hpp"
#include "gaugeprop/error.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace gaugeprop;
  try {
    std::string help;
    const auto cfg = cli::parse_config(argc, argv, help);
    if (!cfg) {
      std::cout << help;
      return 0;
    }
    return cli::run(*cfg, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "gaugeprop: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "gaugeprop: " << e.what() << '\n';
    return 1;
  }
}
