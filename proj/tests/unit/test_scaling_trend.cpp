#include <doctest.h>

#include <cmath>

#include "ssepfree/bernoulli.hpp"
#include "ssepfree/ssep.hpp"

using namespace ssepfree;

namespace {

// Cumulants synthesized as K_n = N^(1-n) psi_n(x_i1, ..., x_in), x_i = i / (N + 1).
CumulantTable scaled_ssep_table(int N) {
    return CumulantTable([N](const std::vector<int>& key) {
        std::vector<double> x;
        for (int i : key) x.push_back(static_cast<double>(i) / (N + 1));
        const double psi = key.size() == 1 ? x[0] : psi_ssep(x);
        return std::pow(static_cast<double>(N), 1.0 - static_cast<double>(key.size())) * psi;
    });
}

}  // namespace

TEST_CASE("tree graphs dominate: loop to tree weight ratio falls at least like 1/N") {
    std::vector<double> ratio;
    for (int N : {4, 5, 6}) {
        const auto w = tree_loop_weights(scaled_ssep_table(N), N, 4);
        REQUIRE(w.tree > 0);
        ratio.push_back(w.loop / w.tree);
    }
    CAPTURE(ratio[0]);
    CAPTURE(ratio[1]);
    CAPTURE(ratio[2]);
    CHECK(ratio[1] <= ratio[0] * 4.0 / 5.0);
    CHECK(ratio[2] <= ratio[0] * 4.0 / 6.0);
}
