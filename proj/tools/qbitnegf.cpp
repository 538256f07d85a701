#include <cstdio>
int main() { std::puts("qbitnegf cli placeholder"); return 0; }
