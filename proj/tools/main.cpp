#include "khom/abelian.hpp"

#include <cstdio>

int main() {
  std::puts("khom cli placeholder");
  return 0;
}
