#pragma once

#include <vector>

#include "hatlab/rational_function.hpp"

namespace hatlab {

// Square system A x = b over the rational-function field.
struct LinearSystem {
    std::vector<std::vector<RationalFunction>> matrix;
    std::vector<RationalFunction> rhs;

    std::size_t size() const { return rhs.size(); }
};

// Gaussian elimination with pivoting on the lowest-degree nonzero pivot
// (degree growth is the cost driver in this field).
// Throws DomainError("singular renewal system") on a singular matrix.
std::vector<RationalFunction> solve_linear_system(LinearSystem sys);

}  // namespace hatlab
