#include "voapf/eta.hpp"

namespace voapf {

USeries euler_product_pow(long power, int trunc) {
    USeries out(trunc);
    out[0] = 1;
    long reps = power >= 0 ? power : -power;
    for (long r = 0; r < reps; ++r) {
        if (power > 0) {
            // multiply by (1 - q^m) for every m
            for (int m = 1; m <= trunc; ++m)
                for (int k = trunc; k >= m; --k) out[k] -= out[k - m];
        } else {
            for (int m = 1; m <= trunc; ++m)
                for (int k = m; k <= trunc; ++k) out[k] += out[k - m];
        }
    }
    return out;
}

USeries eisenstein4(int trunc) {
    USeries out(trunc);
    out[0] = 1;
    for (int n = 1; n <= trunc; ++n) {
        Int sigma3 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sigma3 += Int(d) * d * d;
        out[n] = Rat(240 * sigma3);
    }
    return out;
}

std::vector<Int> j_coefficients(int trunc) {
    // j * q = E4^3 / prod (1-q^n)^24 as a power series
    int n = trunc + 1;
    USeries e4 = eisenstein4(n);
    USeries num = e4 * e4 * e4;
    USeries den = euler_product_pow(24, n);
    USeries jq = num * den.inverse();
    std::vector<Int> out;
    for (int k = 0; k <= n; ++k) {
        require(jq[k].get_den() == 1, "j_coefficients: non-integer coefficient");
        out.push_back(jq[k].get_num());
    }
    return out;
}

std::vector<Int> moonshine_graded_dims(int trunc) {
    std::vector<Int> j = j_coefficients(trunc);
    std::vector<Int> out;
    // Tr q^{L0} = q (j - 744): dims 1, 0, 196884, 21493760, ...
    for (int n = 0; n <= trunc; ++n) {
        Int c = j[size_t(n)];
        if (n == 1) c -= 744;
        out.push_back(c);
    }
    return out;
}

} // namespace voapf
