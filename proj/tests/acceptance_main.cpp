#include "torusinv_app/acceptance.hpp"

#include <iostream>
#include <string>

// Usage: torusinv_acceptance [filter] [--inject-fault]
int main(int argc, char** argv) {
  torusinv::app::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--inject-fault")
      opts.flipPsi0Sign = true;
    else
      opts.filter = a;
  }
  bool all = true;
  try {
    for (const auto& r : torusinv::app::run_acceptance(opts, std::cout)) all = all && r.pass;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::cout << (all ? "ALL PASS" : "FAILURES PRESENT") << std::endl;
  return all ? 0 : 1;
}
