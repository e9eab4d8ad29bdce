#include <iostream>

int main() {
  std::cerr << "not yet wired\n";
  return 1;
}
