#include <cstdio>

int main() {
  std::puts("lobert: subcommands not wired yet");
  return 0;
}
