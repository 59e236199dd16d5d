#ifndef VOAPF_ERRORS_HPP
#define VOAPF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voapf {

// Exit-code taxonomy used by the CLI: 2 usage, 3 budget, 4 math domain,
// 5 internal invariant.

struct math_domain_error : std::runtime_error {
    explicit math_domain_error(const std::string& what) : std::runtime_error(what) {}
};

// shape mismatch between series operands (var count / truncation)
struct shape_error : math_domain_error {
    explicit shape_error(const std::string& what) : math_domain_error(what) {}
};

struct not_invertible_error : math_domain_error {
    explicit not_invertible_error(const std::string& what) : math_domain_error(what) {}
};

struct composition_error : math_domain_error {
    explicit composition_error(const std::string& what) : math_domain_error(what) {}
};

struct pole_error : math_domain_error {
    explicit pole_error(const std::string& what) : math_domain_error(what) {}
};

struct domain_error : math_domain_error {
    explicit domain_error(const std::string& what) : math_domain_error(what) {}
};

struct lattice_error : math_domain_error {
    explicit lattice_error(const std::string& what) : math_domain_error(what) {}
};

struct not_loxodromic_error : math_domain_error {
    explicit not_loxodromic_error(const std::string& what) : math_domain_error(what) {}
};

struct degenerate_map_error : math_domain_error {
    explicit degenerate_map_error(const std::string& what) : math_domain_error(what) {}
};

struct parabolic_error : math_domain_error {
    explicit parabolic_error(const std::string& what) : math_domain_error(what) {}
};

// requested computation exceeds the configured work budget
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// a structural invariant the code relies on failed; always a bug
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool ok, const char* what) {
    if (!ok) throw invariant_error(what);
}

} // namespace voapf

#endif
