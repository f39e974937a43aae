#include <cstdio>

int main() {
  std::puts("virmart: no subcommand given");
  return 2;
}
