#include <cstdio>
int main() { std::puts("habiro cli placeholder"); return 0; }
