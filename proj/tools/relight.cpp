// Command-line entry point. Subcommands are wired up as the modules land;
// this stub only reports usage for now.
#include <cstdio>

int main() {
  std::fprintf(stderr, "relight: no subcommands wired yet\n");
  return 1;
}
