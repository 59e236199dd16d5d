#include "voapf/serialize.hpp"

#include <json.hpp>

#include <sstream>

namespace voapf {

using nlohmann::json;

std::string qseries_to_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) {
        json exp = json::array();
        for (uint32_t n : e) exp.push_back(n);
        terms.push_back(json{{"exp", exp},
                             {"num", c.get_num().get_str()},
                             {"den", c.get_den().get_str()}});
    }
    json out{{"vars", s.num_vars()}, {"trunc", s.truncation()}, {"terms", terms}};
    return out.dump(2);
}

QSeries qseries_from_json(const std::string& text) {
    json in = json::parse(text);
    QSeries s(in.at("vars").get<int>(), in.at("trunc").get<int>());
    for (const json& t : in.at("terms")) {
        Exponent e;
        for (const json& n : t.at("exp")) e.push_back(n.get<uint32_t>());
        Rat c(Int(t.at("num").get<std::string>()), Int(t.at("den").get<std::string>()));
        c.canonicalize();
        s.set_coeff(e, c);
    }
    return s;
}

std::string qseries_to_csv(const QSeries& s) {
    std::ostringstream os;
    for (int i = 0; i < s.num_vars(); ++i) os << 'n' << (i + 1) << ',';
    os << "num,den\n";
    for (const auto& [e, c] : s.terms()) {
        for (uint32_t n : e) os << n << ',';
        os << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    }
    return os.str();
}

std::string lattice_to_json(const EvenLattice& L) {
    json gram = json::array();
    for (const auto& row : L.gram) {
        json r = json::array();
        for (long v : row) r.push_back(v);
        gram.push_back(r);
    }
    json out{{"name", L.name}, {"rank", L.rank()}, {"gram", gram}};
    return out.dump(2);
}

EvenLattice lattice_from_json(const std::string& text) {
    json in = json::parse(text);
    EvenLattice L;
    L.name = in.at("name").get<std::string>();
    size_t rank = in.at("rank").get<size_t>();
    for (const json& row : in.at("gram")) {
        std::vector<long> r;
        for (const json& v : row) r.push_back(v.get<long>());
        L.gram.push_back(r);
    }
    if (L.gram.size() != rank) throw lattice_error("lattice json: rank mismatch");
    L.validate();
    return L;
}

std::string points_to_json(const PointConfig& pts) {
    json arr = json::array();
    for (const Rat& p : pts.all()) arr.push_back(p.get_str());
    return json{{"points", arr}}.dump(2);
}

PointConfig points_from_json(const std::string& text) {
    json in = json::parse(text);
    std::vector<Rat> pts;
    for (const json& p : in.at("points")) pts.push_back(parse_rat(p.get<std::string>()));
    return PointConfig::of(pts);
}

} // namespace voapf
