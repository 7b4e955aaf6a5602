// Linearize a planar vector field with spectrum (2, 5) and print the change
// of variables, cross-checked against the order-by-order oracle.

#include <cstdio>

#include "moulcalc/moulcalc.hpp"

using namespace moulcalc;

int main() {
    // X = 2x dx + 5y dy + x^2 dx + (1/3) y^2 dy + y^2 dx
    PreparedField f = decompose(2, {Scalar(2), Scalar(5)},
                                {{Scalar(1), {2, 0}, 0}, {Scalar(1, 3), {0, 2}, 1}, {Scalar(1), {0, 2}, 0}});
    std::printf("alphabet A(X):");
    for (const auto& [n, op] : f.parts) std::printf(" %s", Letter::degree(n).str().c_str());
    std::printf("\n");

    const int degree = 5;
    auto lin = linearize(f, degree);
    auto orc = oracle_normalize(f, degree, NormalizeMode::linearize);

    std::printf("normalizer x = h(y):\n");
    for (int i = 0; i < f.nu; ++i) std::printf("  h_%d = %s\n", i + 1, lin.normalizer[static_cast<std::size_t>(i)].str().c_str());
    std::printf("conjugated field:\n");
    for (int i = 0; i < f.nu; ++i) std::printf("  X'_%d = %s\n", i + 1, lin.conjugated[static_cast<std::size_t>(i)].str().c_str());
    bool match = lin.normalizer == orc.normalizer && lin.conjugated == orc.conjugated;
    std::printf("oracle agreement: %s\n", match ? "exact" : "MISMATCH");
    return match ? 0 : 1;
}
