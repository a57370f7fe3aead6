// Acceptance suite: one pass/fail line per criterion. Returns nonzero if
// any criterion fails.

#include <cstdio>

int main() {
    std::printf("acceptance suite placeholder\n");
    return 0;
}
