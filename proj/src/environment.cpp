#include "rangeshape/environment.hpp"

#include <stdexcept>

#include "json.hpp"
#include "rangeshape/rng.hpp"

namespace rangeshape {

std::string law_name(LawKind k) {
    switch (k) {
        case LawKind::Constant: return "constant";
        case LawKind::IidUniform: return "iid-uniform";
        case LawKind::IidTwoPoint: return "iid-two-point";
        case LawKind::Periodic: return "periodic";
    }
    return "?";
}

LawKind law_from_name(const std::string& name) {
    if (name == "constant") return LawKind::Constant;
    if (name == "iid-uniform") return LawKind::IidUniform;
    if (name == "iid-two-point") return LawKind::IidTwoPoint;
    if (name == "periodic") return LawKind::Periodic;
    throw std::invalid_argument("unknown weight law: " + name);
}

LawDescriptor LawDescriptor::constant(double w) {
    LawDescriptor d;
    d.kind = LawKind::Constant;
    d.a = d.b = w;
    return d;
}

LawDescriptor LawDescriptor::iid_uniform(double a, double b) {
    LawDescriptor d;
    d.kind = LawKind::IidUniform;
    d.a = a;
    d.b = b;
    return d;
}

LawDescriptor LawDescriptor::iid_two_point(double a, double b, double p) {
    LawDescriptor d;
    d.kind = LawKind::IidTwoPoint;
    d.a = a;
    d.b = b;
    d.p = p;
    return d;
}

LawDescriptor LawDescriptor::periodic(std::vector<std::vector<double>> tile) {
    LawDescriptor d;
    d.kind = LawKind::Periodic;
    d.tile = std::move(tile);
    if (d.tile.empty() || d.tile[0].empty()) throw std::invalid_argument("periodic law: empty tile");
    std::size_t cols = d.tile[0].size();
    double lo = d.tile[0][0], hi = lo;
    for (const auto& row : d.tile) {
        if (row.size() != cols) throw std::invalid_argument("periodic law: ragged tile");
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    d.a = lo;
    d.b = hi;
    return d;
}

WeightField::WeightField(LawDescriptor law, std::uint64_t seed, Box region)
    : law_(std::move(law)), seed_(seed), region_(region) {
    if (!(law_.a > 0.0)) throw std::invalid_argument("weight law not admissible: requires a > 0");
    if (law_.b < law_.a) throw std::invalid_argument("weight law not admissible: requires b >= a");
    if (law_.kind == LawKind::IidTwoPoint && (law_.p < 0.0 || law_.p > 1.0))
        throw std::invalid_argument("two-point law: p outside [0,1]");
    if (region_.empty()) throw std::invalid_argument("weight field: empty region");
}

WeightField build_environment(const LawDescriptor& law, std::uint64_t seed, Box region) {
    return WeightField(law, seed, region);
}

double WeightField::weight(const Edge& e) const {
    switch (law_.kind) {
        case LawKind::Constant:
            return law_.a;
        case LawKind::IidUniform: {
            double u = to_unit(counter_hash(seed_, edge_key(e)));
            return law_.a + (law_.b - law_.a) * u;
        }
        case LawKind::IidTwoPoint: {
            double u = to_unit(counter_hash(seed_, edge_key(e)));
            return u < law_.p ? law_.a : law_.b;
        }
        case LawKind::Periodic: {
            int rows = int(law_.tile.size()), cols = int(law_.tile[0].size());
            int cx = ((e.a.x % cols) + cols) % cols;
            int cy = ((e.a.y % rows) + rows) % rows;
            return law_.tile[std::size_t(cy)][std::size_t(cx)];
        }
    }
    throw std::logic_error("weight: bad law kind");
}

double hamiltonian(const LatticeSet& s, const WeightField& field) {
    double h = 0.0;
    for (Pt p : s.sites())
        for (Pt d : kNeighborStep) {
            Pt q = p + d;
            if (s.contains(q)) continue;
            Edge e = edge_between(p, q);
            if (!field.edge_in_region(e))
                throw std::out_of_range("hamiltonian: boundary edge (" + std::to_string(e.a.x) + "," +
                                        std::to_string(e.a.y) + ")+axis" + std::to_string(e.axis) +
                                        " outside field region");
            h += field.weight(e);
        }
    return h;
}

std::string WeightField::to_json() const {
    nlohmann::json j;
    j["law"] = law_name(law_.kind);
    j["a"] = law_.a;
    j["b"] = law_.b;
    if (law_.kind == LawKind::IidTwoPoint) j["p"] = law_.p;
    if (law_.kind == LawKind::Periodic) j["tile"] = law_.tile;
    j["seed"] = seed_;
    j["region"] = {region_.x0, region_.y0, region_.x1, region_.y1};
    return j.dump();
}

WeightField WeightField::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LawDescriptor law;
    law.kind = law_from_name(j.at("law").get<std::string>());
    law.a = j.at("a").get<double>();
    law.b = j.at("b").get<double>();
    if (j.contains("p")) law.p = j.at("p").get<double>();
    if (j.contains("tile")) law.tile = j.at("tile").get<std::vector<std::vector<double>>>();
    auto r = j.at("region");
    Box region{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()};
    return WeightField(law, j.at("seed").get<std::uint64_t>(), region);
}

}  // namespace rangeshape
