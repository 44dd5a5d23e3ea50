#include <fvoa/scalar.hpp>

#include <cstdio>

int main() {
    std::puts("fvoa: suites not wired up yet");
    return 2;
}
