#include <cstdio>
int main() { std::printf("mlcorr: not yet implemented\n"); return 1; }
