#include <iostream>

#include "bouncer/acceptance.hpp"

int main() {
  bool ok = true;
  for (const auto& r : bouncer::run_acceptance(&std::cout)) ok = ok && r.pass();
  return ok ? 0 : 1;
}
