#ifndef DTASA_QUADRATURE_HPP
#define DTASA_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace dtasa {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule mapped to (0, 1).
const QuadRule& gauss_legendre_01(int n);

// Gauss-Hermite rule for weight exp(-x^2) on the real line.
const QuadRule& gauss_hermite(int n);

} // namespace dtasa

#endif
