#include <iostream>

#include "f2alg/acceptance.hpp"

int main() {
    f2alg::AcceptanceOptions opt;
    bool ok = f2alg::run_acceptance(std::cout, opt);
    return ok ? 0 : 1;
}
