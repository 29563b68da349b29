#include "hatlab/linear_system.hpp"

#include <stdexcept>

namespace hatlab {

namespace {
int pivot_cost(const RationalFunction& f) {
    return std::max(f.numerator().degree(), 0) + std::max(f.denominator().degree(), 0);
}
}

std::vector<RationalFunction> solve_linear_system(LinearSystem sys) {
    const std::size_t n = sys.size();
    if (n == 0 || sys.matrix.size() != n) throw std::invalid_argument("inconsistent system dimensions");
    for (const auto& row : sys.matrix)
        if (row.size() != n) throw std::invalid_argument("inconsistent system dimensions");

    auto& a = sys.matrix;
    auto& b = sys.rhs;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        int best_cost = 0;
        for (std::size_t r = col; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            int cost = pivot_cost(a[r][col]);
            if (best == n || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (best == n) throw DomainError("singular renewal system");
        std::swap(a[col], a[best]);
        std::swap(b[col], b[best]);

        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            RationalFunction factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<RationalFunction> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace hatlab
