#include "ssepfree/numbers.hpp"

#include <vector>

#include "ssepfree/errors.hpp"

namespace ssepfree {

BigInt factorial(int n) {
    if (n < 0) throw DomainError("factorial of negative number");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt catalan(int n) {
    if (n < 0) throw DomainError("catalan of negative number");
    return binomial(2 * n, n) / (n + 1);
}

BigInt bell(int n) {
    if (n < 0) throw DomainError("bell of negative number");
    // Bell triangle
    std::vector<BigInt> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> next{row.back()};
        for (const auto& x : row) next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

}  // namespace ssepfree
