#ifndef VOAPF_ETA_HPP
#define VOAPF_ETA_HPP

#include "voapf/qseries.hpp"

namespace voapf {

// q-expansion of prod_{n>=1} (1 - q^n)^power, truncated
USeries euler_product_pow(long power, int trunc);

// normalized Eisenstein series of weight 4: 1 + 240 sum sigma_3(n) q^n
USeries eisenstein4(int trunc);

// Coefficients c(n), n = -1..trunc, of the modular j-function
// j = E4^3 / (q prod (1-q^n)^24), indexed so that j_coefficients(N)[n+1]
// is the coefficient of q^n.
std::vector<Int> j_coefficients(int trunc);

// graded dimensions of a c=24 theory with character j - 744:
// 1, 0, 196884, 21493760, ... (the constant term is removed)
std::vector<Int> moonshine_graded_dims(int trunc);

} // namespace voapf

#endif
