#include <cstdio>

int main()
{
  std::puts("bisetlab: command-line interface not wired up yet");
  return 1;
}
