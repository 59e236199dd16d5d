#ifndef VOAPF_SERIALIZE_HPP
#define VOAPF_SERIALIZE_HPP

#include <string>

#include "voapf/correlators.hpp"
#include "voapf/lattice.hpp"
#include "voapf/qseries.hpp"

namespace voapf {

// {"vars": g, "trunc": N, "terms": [{"exp": [...], "num": "...", "den": "..."}]}
// with integers as decimal strings and terms sorted by exponent
std::string qseries_to_json(const QSeries& s);
QSeries qseries_from_json(const std::string& text);

std::string qseries_to_csv(const QSeries& s);

// {"name": "...", "rank": r, "gram": [[...]]}
std::string lattice_to_json(const EvenLattice& L);
EvenLattice lattice_from_json(const std::string& text);

// {"points": ["num/den", ...]}
std::string points_to_json(const PointConfig& pts);
PointConfig points_from_json(const std::string& text);

} // namespace voapf

#endif
