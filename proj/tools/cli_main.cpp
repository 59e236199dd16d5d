// Batch front-end: model selection, computation orchestration, and
// machine-readable output. Every number is emitted as an exact fraction
// string; reruns are byte-identical.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "voapf/casimir.hpp"
#include "voapf/eta.hpp"
#include "voapf/partition.hpp"
#include "voapf/schottky.hpp"
#include "voapf/serialize.hpp"
#include "voapf/threading.hpp"

using namespace voapf;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json provenance(const std::string& command, const std::string& model,
                const PointConfig* pts, int trunc) {
    json p{{"command", command}, {"version", kVersion}, {"trunc", trunc}};
    if (!model.empty()) p["model"] = model;
    if (pts) {
        json arr = json::array();
        for (const Rat& x : pts->all()) arr.push_back(x.get_str());
        p["points"] = arr;
    }
    return p;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open output file: " + path);
    out << text << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

EvenLattice resolve_lattice(const std::string& name) {
    if (!name.empty() && name[0] == '@') return lattice_from_json(slurp(name.substr(1)));
    return builtin_lattice(name);
}

VOAModel parse_simple_model(const std::string& text) {
    if (text.rfind("heisenberg:", 0) == 0)
        return VOAModel::heisenberg(std::stoi(text.substr(11)));
    if (text.rfind("lattice:", 0) == 0)
        return VOAModel::lattice_model(resolve_lattice(text.substr(8)));
    throw domain_error("cannot parse model: " + text);
}

VOAModel parse_model(const std::string& text) {
    if (text.rfind("tensor:", 0) == 0) {
        std::vector<VOAModel> factors;
        std::string rest = text.substr(7);
        size_t pos = 0;
        while (pos < rest.size()) {
            size_t next = rest.find(",lattice:", pos);
            size_t next2 = rest.find(",heisenberg:", pos);
            size_t cut = std::min(next == std::string::npos ? rest.size() : next,
                                  next2 == std::string::npos ? rest.size() : next2);
            factors.push_back(parse_simple_model(rest.substr(pos, cut - pos)));
            pos = cut + (cut < rest.size() ? 1 : 0);
        }
        if (factors.empty()) throw domain_error("tensor model needs factors");
        return VOAModel::tensor(std::move(factors));
    }
    return parse_simple_model(text);
}

PointConfig resolve_points(const std::string& text) {
    if (text == "builtin:g1a") return PointConfig::of({Rat(3), Rat(1)});
    if (text == "builtin:g1b") return PointConfig::of({Rat(7), Rat(2)});
    if (text == "builtin:g2a") return PointConfig::of({Rat(13), Rat(7), Rat(3), Rat(1)});
    return points_from_json(slurp(text));
}

// largest grid rational r with all pairwise center gaps above 2r; the series
// then lives in the region with parameters below r^2 on each handle
Rat certify_radius(const PointConfig& pts) {
    Rat min_gap;
    bool first = true;
    const std::vector<Rat>& xs = pts.all();
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) {
            Rat gap = xs[i] - xs[j];
            if (sgn(gap) < 0) gap = -gap;
            if (first || gap < min_gap) {
                min_gap = gap;
                first = false;
            }
        }
    if (first) return 0;
    Rat r = min_gap * rat(99, 200);
    SchottkyGenerators gens;
    for (size_t h = 0; h < pts.genus(); ++h)
        gens.handles.push_back({GQ{pts.w(h)}, GQ{pts.z(h)}, GQ{r * r / 2}});
    URegionReport rep = in_U_gr(gens, r);
    require(rep.in_region, "certify_radius: fixture fails its own certificate");
    return r;
}

json gq_json(const GQ& z) {
    return json{{"re", z.re.get_str()}, {"im", z.im.get_str()}};
}

GQ parse_gq(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos) return GQ{parse_rat(text)};
    return GQ{parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1))};
}

GradedVector state_from_json(const json& spec, const FlatModel& M) {
    GradedVector v;
    for (const json& term : spec) {
        VoaState s;
        if (term.contains("modes"))
            for (const json& m : term.at("modes")) {
                int color = m.at(0).get<int>();
                int level = m.at(1).get<int>();
                require(color >= 1 && size_t(color) <= M.rank(), "state color out of range");
                require(level >= 1, "state mode level must be positive");
                s.fock.modes.push_back(FockMode{int32_t(color - 1), int32_t(level)});
            }
        s.fock.normalize();
        s.charge.assign(M.rank(), 0);
        if (term.contains("charge")) {
            const json& ch = term.at("charge");
            require(ch.size() == M.rank(), "charge arity mismatch");
            for (size_t i = 0; i < M.rank(); ++i) s.charge[i] = ch.at(i).get<long>();
        }
        Rat coeff =
            term.contains("coeff") ? parse_rat(term.at("coeff").get<std::string>()) : Rat(1);
        v.add(s, coeff);
    }
    return v;
}

int run_partition(const std::string& model_text, int genus, int trunc,
                  const std::string& points_text, const std::string& variant,
                  const std::string& sep_w, const std::string& sep_z, int sep_trunc,
                  long long budget, int threads, const std::string& format,
                  const std::string& out_path) {
    PartitionRequest req;
    req.model = parse_model(model_text);
    req.genus = genus;
    req.trunc = trunc;
    req.points = resolve_points(points_text);
    req.budget = budget;
    req.threads = threads;
    if (variant.rfind("sep:", 0) == 0) {
        SeparatingVariant sep;
        sep.i = std::stoi(variant.substr(4));
        sep.w = parse_rat(sep_w);
        sep.z = parse_rat(sep_z);
        sep.extra_trunc = sep_trunc;
        req.separating = sep;
    } else if (variant != "plain") {
        throw domain_error("--variant must be plain or sep:i");
    }

    QSeries z = partition_series(req);
    if (format == "csv") {
        write_output(out_path, qseries_to_csv(z));
        return 0;
    }
    json out = json::parse(qseries_to_json(z));
    out["provenance"] = provenance("partition", req.model.describe(), &req.points, trunc);
    out["provenance"]["u_region_radius"] = certify_radius(req.points).get_str();
    write_output(out_path, out.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact partition series, correlators and lattice data"};
    app.require_subcommand(1);

    auto* partition = app.add_subcommand("partition", "genus-g series in the sewing parameters");
    std::string model_text, points_text = "builtin:g1a", variant = "plain";
    std::string sep_w = "40", sep_z = "1/2";
    std::string format = "json", out_path = "-";
    int genus = 1, trunc = 2, sep_trunc = 0, threads = 1;
    long long budget = 10000000;
    partition->add_option("--model", model_text)->required();
    partition->add_option("--genus", genus);
    partition->add_option("--trunc", trunc);
    partition->add_option("--points", points_text);
    partition->add_option("--variant", variant);
    partition->add_option("--sep-w", sep_w);
    partition->add_option("--sep-z", sep_z);
    partition->add_option("--sep-trunc", sep_trunc);
    partition->add_option("--budget", budget)->envname("VOAPF_BUDGET");
    partition->add_option("--threads", threads);
    partition->add_option("--out", format);
    partition->add_option("--output", out_path);

    auto* oracle =
        app.add_subcommand("oracle", "trace-form depth-one series and stored characters");
    std::string om = "heisenberg:1", opts_text = "builtin:g1a", o_out = "-";
    int o_trunc = 2;
    bool moonshine = false;
    oracle->add_option("--model", om);
    oracle->add_option("--trunc", o_trunc);
    oracle->add_option("--points", opts_text);
    oracle->add_flag("--moonshine", moonshine, "emit the stored c=24 character dimensions");
    oracle->add_option("--output", o_out);

    auto* correlate = app.add_subcommand("correlate", "exact sphere correlator");
    std::string c_model, c_file, c_out = "-";
    correlate->add_option("--model", c_model)->required();
    correlate->add_option("--insertions", c_file)->required();
    correlate->add_option("--output", c_out);

    auto* theta = app.add_subcommand("theta", "lattice theta series");
    std::string t_lattice, t_out = "-";
    int t_trunc = 3, t_genus = 1;
    long t_maxT = 1;
    theta->add_option("--lattice", t_lattice)->required();
    theta->add_option("--trunc", t_trunc);
    theta->add_option("--genus", t_genus);
    theta->add_option("--maxT", t_maxT);
    theta->add_option("--output", t_out);

    auto* pv = app.add_subcommand("pv", "graded dimensions of the Casimir subalgebra");
    std::string p_model, p_format = "json", p_out = "-";
    int p_cutoff = 6;
    pv->add_option("--model", p_model)->required();
    pv->add_option("--cutoff", p_cutoff);
    pv->add_option("--out", p_format);
    pv->add_option("--output", p_out);

    auto* compare = app.add_subcommand("compare", "first differing series coefficient");
    std::string a_model, b_model, cmp_points = "builtin:g1a", cmp_out = "-";
    int cmp_genus = 1, cmp_trunc = 2, cmp_threads = 1;
    compare->add_option("--a", a_model)->required();
    compare->add_option("--b", b_model)->required();
    compare->add_option("--genus", cmp_genus);
    compare->add_option("--trunc", cmp_trunc);
    compare->add_option("--points", cmp_points);
    compare->add_option("--threads", cmp_threads);
    compare->add_option("--output", cmp_out);

    auto* schottky = app.add_subcommand("schottky", "generator coordinates and region checks");
    std::string s_mode = "convert", s_wzq, s_fixed, s_x, s_y, s_radius = "9/10", s_file,
                s_out = "-";
    schottky->add_option("--mode", s_mode, "convert | check-ur | plumb");
    schottky->add_option("--wzq", s_wzq, "w;z;q with entries re[,im]");
    schottky->add_option("--fixed", s_fixed, "W;Z;mu");
    schottky->add_option("--x", s_x);
    schottky->add_option("--y", s_y);
    schottky->add_option("--radius", s_radius);
    schottky->add_option("--file", s_file, "json {\"handles\": [[w,z,q],...]}");
    schottky->add_option("--output", s_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (partition->parsed())
            return run_partition(model_text, genus, trunc, points_text, variant, sep_w, sep_z,
                                 sep_trunc, budget, threads, format, out_path);

        if (oracle->parsed()) {
            if (moonshine) {
                json dims = json::array();
                for (const Int& d : moonshine_graded_dims(o_trunc)) dims.push_back(d.get_str());
                json out{{"dims", dims},
                         {"provenance",
                          provenance("oracle --moonshine", "c24-character", nullptr, o_trunc)}};
                write_output(o_out, out.dump(2));
                return 0;
            }
            VOAModel m = parse_model(om);
            PointConfig pts = resolve_points(opts_text);
            QSeries z = genus1_oracle(m, o_trunc, pts.w(0), pts.z(0));
            json out = json::parse(qseries_to_json(z));
            out["provenance"] = provenance("oracle", m.describe(), &pts, o_trunc);
            write_output(o_out, out.dump(2));
            return 0;
        }

        if (correlate->parsed()) {
            VOAModel m = parse_model(c_model);
            FlatModel M(m);
            json spec = json::parse(slurp(c_file));
            std::vector<Insertion> ins;
            json echo = json::array();
            for (const json& entry : spec.at("insertions")) {
                GradedVector state = state_from_json(entry.at("state"), M);
                Rat point = parse_rat(entry.at("point").get<std::string>());
                echo.push_back(json{{"point", point.get_str()}, {"state", state.to_string()}});
                ins.push_back(Insertion{std::move(state), point});
            }
            Rat value = wick_correlator(M, ins);
            json out{{"value", value.get_str()},
                     {"num", value.get_num().get_str()},
                     {"den", value.get_den().get_str()},
                     {"insertions", echo},
                     {"provenance", provenance("correlate", m.describe(), nullptr, 0)}};
            write_output(c_out, out.dump(2));
            return 0;
        }

        if (theta->parsed()) {
            EvenLattice L = resolve_lattice(t_lattice);
            if (t_genus == 1) {
                USeries series = theta_genus1(L, t_trunc);
                json coeffs = json::array();
                for (int i = 0; i <= t_trunc; ++i)
                    coeffs.push_back(series[i].get_num().get_str());
                json out{
                    {"lattice", L.name},
                    {"coeffs", coeffs},
                    {"provenance", provenance("theta", "lattice:" + L.name, nullptr, t_trunc)}};
                write_output(t_out, out.dump(2));
            } else if (t_genus == 2) {
                auto rep = theta_genus2(L, t_maxT);
                json entries = json::array();
                for (const auto& [key, count] : rep)
                    entries.push_back(json{
                        {"a", key[0]}, {"c", key[1]}, {"b2", key[2]}, {"count", count.get_str()}});
                json out{{"lattice", L.name},
                         {"entries", entries},
                         {"provenance", provenance("theta --genus 2", "lattice:" + L.name,
                                                   nullptr, int(t_maxT))}};
                write_output(t_out, out.dump(2));
            } else {
                throw domain_error("theta: genus must be 1 or 2");
            }
            return 0;
        }

        if (pv->parsed()) {
            VOAModel m = parse_model(p_model);
            FlatModel M(m);
            PVFiltration filt = pv_filtration(M, p_cutoff);
            if (p_format == "csv") {
                std::ostringstream os;
                os << "weight,dim_pv,dim_v\n";
                for (long w = 0; w <= filt.cutoff; ++w)
                    os << w << ',' << filt.dims[size_t(w)] << ',' << M.graded_dim(w).get_str()
                       << '\n';
                write_output(p_out, os.str());
            } else {
                json rows = json::array();
                for (long w = 0; w <= filt.cutoff; ++w)
                    rows.push_back(json{{"weight", w},
                                        {"dim_pv", filt.dims[size_t(w)]},
                                        {"dim_v", M.graded_dim(w).get_str()}});
                json out{{"rows", rows},
                         {"stabilized", filt.stabilized},
                         {"contains_conformal_vector", filt.contains_conformal_vector},
                         {"provenance", provenance("pv", m.describe(), nullptr, p_cutoff)}};
                write_output(p_out, out.dump(2));
            }
            return 0;
        }

        if (compare->parsed()) {
            VOAModel a = parse_model(a_model), b = parse_model(b_model);
            PointConfig pts = resolve_points(cmp_points);
            CompareResult res = compare_partitions(a, b, cmp_genus, cmp_trunc, pts, cmp_threads);
            json out{{"equal", res.equal},
                     {"charge_mismatch_warning", res.charge_mismatch_warning},
                     {"provenance", provenance("compare", a.describe() + " vs " + b.describe(),
                                               &pts, cmp_trunc)}};
            if (!res.equal) {
                json e = json::array();
                for (uint32_t n : res.first_difference) e.push_back(n);
                out["first_difference"] = e;
                out["lhs"] = res.lhs.get_str();
                out["rhs"] = res.rhs.get_str();
            }
            write_output(cmp_out, out.dump(2));
            return 0;
        }

        if (schottky->parsed()) {
            json out;
            if (s_mode == "convert") {
                if (!s_wzq.empty()) {
                    std::istringstream is(s_wzq);
                    std::string sw, sz, sq;
                    std::getline(is, sw, ';');
                    std::getline(is, sz, ';');
                    std::getline(is, sq, ';');
                    MoebiusMap g = from_wzq(parse_gq(sw), parse_gq(sz), parse_gq(sq));
                    FixedPointData fp = fixed_points_multiplier(g);
                    out["exact"] = fp.exact;
                    if (fp.exact) {
                        out["attracting"] = gq_json(fp.attracting);
                        out["repelling"] = gq_json(fp.repelling);
                        out["multiplier"] = gq_json(fp.multiplier);
                    } else {
                        out["attracting_re"] = {fp.att_re_lo.get_str(), fp.att_re_hi.get_str()};
                        out["attracting_im"] = {fp.att_im_lo.get_str(), fp.att_im_hi.get_str()};
                        out["multiplier_re"] = {fp.mul_re_lo.get_str(), fp.mul_re_hi.get_str()};
                        out["multiplier_im"] = {fp.mul_im_lo.get_str(), fp.mul_im_hi.get_str()};
                    }
                } else if (!s_fixed.empty()) {
                    std::istringstream is(s_fixed);
                    std::string sW, sZ, sm;
                    std::getline(is, sW, ';');
                    std::getline(is, sZ, ';');
                    std::getline(is, sm, ';');
                    WZQ c = to_wzq(parse_gq(sW), parse_gq(sZ), parse_gq(sm));
                    out["w"] = gq_json(c.w);
                    out["z"] = gq_json(c.z);
                    out["q"] = gq_json(c.q);
                } else {
                    throw domain_error("convert needs --wzq or --fixed");
                }
            } else if (s_mode == "check-ur") {
                json spec = json::parse(slurp(s_file));
                SchottkyGenerators gens;
                for (const json& h : spec.at("handles"))
                    gens.handles.push_back({parse_gq(h.at(0).get<std::string>()),
                                            parse_gq(h.at(1).get<std::string>()),
                                            parse_gq(h.at(2).get<std::string>())});
                URegionReport rep = in_U_gr(gens, parse_rat(s_radius));
                out["in_region"] = rep.in_region;
                out["plus_ordering"] = rep.plus_ordering;
                if (rep.in_region) out["disks_disjoint"] = disks_disjoint(gens);
            } else if (s_mode == "plumb") {
                std::istringstream is(s_wzq);
                std::string sw, sz, sq;
                std::getline(is, sw, ';');
                std::getline(is, sz, ';');
                std::getline(is, sq, ';');
                WZQ gen{parse_gq(sw), parse_gq(sz), parse_gq(sq)};
                std::optional<GQ> x, y;
                if (s_x != "inf") x = parse_gq(s_x);
                if (s_y != "inf") y = parse_gq(s_y);
                out["equivalence_holds"] = plumbing_check(gen, x, y);
            } else {
                throw domain_error("unknown schottky mode: " + s_mode);
            }
            out["provenance"] = provenance("schottky " + s_mode, "", nullptr, 0);
            write_output(s_out, out.dump(2));
            return 0;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 5;
    } catch (const math_domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
