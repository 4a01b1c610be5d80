#include <cstdio>

int main()
{
    std::puts("cmzv: subcommands pending");
    return 0;
}
