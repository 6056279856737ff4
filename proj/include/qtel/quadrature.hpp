#pragma once

#include <cstddef>
#include <vector>

namespace qtel {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

}  // namespace qtel
