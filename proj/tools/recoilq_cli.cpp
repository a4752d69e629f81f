#include "recoilq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  recoilq::RunConfig cfg;
  try {
    cfg = recoilq::parse_config(argc, argv);
  } catch (const recoilq::ConfigError& e) {
    std::string msg = e.what();
    if (msg.rfind("help:", 0) == 0) {
      std::cout << msg.substr(5);
      return 0;
    }
    std::cerr << "config error: " << msg << '\n';
    return 1;
  }
  return recoilq::run(cfg, std::cerr);
}
