#include "support.hpp"

namespace fdgl::test {

std::vector<u32> random_abelian_auto(std::mt19937_64& g, const AbelianPGroup& H) {
    auto mods = H.moduli();
    size_t n = H.rank();
    while (true) {
        IntMatrix m(n, std::vector<std::int64_t>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                u64 step = (H.exponents[i] > H.exponents[j]) ? ipow(H.p, H.exponents[i] - H.exponents[j]) : 1;
                m[i][j] = static_cast<std::int64_t>(step * uniform(g, 0, mods[i] / step - 1));
            }
        if (!is_auto(m, H)) continue;
        auto t = image_table(make_endo(m, H));
        return std::vector<u32>(t.begin(), t.end());
    }
}

}  // namespace fdgl::test
