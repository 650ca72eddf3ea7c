#include <cstdio>
int main() { std::puts("pkdyn placeholder"); return 0; }
