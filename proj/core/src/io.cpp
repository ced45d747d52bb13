#include "holonov/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace holonov {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

Rational parse_rational(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
    throw SchemaError(where + ": expected an integer or a \"p/q\" string");
}

ClassVector parse_class(const json& j, int rank, const std::string& where) {
    if (!j.is_array() || int(j.size()) != rank)
        throw SchemaError(where + ": expected an array of " + std::to_string(rank) + " rationals");
    ClassVector out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const json& field(const json& j, const char* name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(where + ": missing field '" + name + "'");
    return *it;
}

ExpSum parse_expsum(const json& j, const ExpSum& proto, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of terms");
    ExpSum s = ExpSum::zero_like(proto);
    for (size_t t = 0; t < j.size(); ++t) {
        const json& jt = j[t];
        std::string w = where + "[" + std::to_string(t) + "]";
        ClassVector c = parse_class(field(jt, "class", w), proto.rank(), w + ".class");
        Rational re = parse_rational(field(jt, "coeff", w), w + ".coeff");
        Rational im(0);
        if (jt.contains("coeff_im")) im = parse_rational(jt["coeff_im"], w + ".coeff_im");
        s.add_term(c, RationalComplex{re, im});
    }
    return s;
}

}  // namespace

FlowModelFile load_flow_model(const std::string& path) {
    json j = load_json(path);
    FlowModelFile out;
    FlowModel& f = out.flow;
    try {
        f.rank = field(j, "lattice_rank", path).get<int>();
        for (const auto& x : field(j, "theta", path)) f.theta.push_back(x.get<double>());
        if (j.contains("horizon")) f.horizon = j["horizon"].get<double>();
        std::map<std::string, int> names;
        for (const auto& c : field(j, "critical_points", path)) {
            CriticalPoint p;
            p.name = field(c, "name", path + ".critical_points").get<std::string>();
            p.index = field(c, "index", path + ".critical_points").get<int>();
            names[p.name] = int(f.crit.size());
            f.crit.push_back(p);
        }
        int fi = 0;
        for (const auto& fl : field(j, "flows", path)) {
            std::string w = path + ".flows[" + std::to_string(fi++) + "]";
            FlowRecord r;
            std::string from = field(fl, "from", w).get<std::string>();
            std::string to = field(fl, "to", w).get<std::string>();
            if (!names.count(from)) throw SchemaError(w + ": unknown critical point '" + from + "'");
            if (!names.count(to)) throw SchemaError(w + ": unknown critical point '" + to + "'");
            r.from = names[from];
            r.to = names[to];
            r.cls = parse_class(field(fl, "class", w), f.rank, w + ".class");
            r.count = field(fl, "count", w).get<long>();
            f.flows.push_back(r);
        }
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }

    if (j.contains("cellular")) {
        const json& jc = j["cellular"];
        LocalSystemComplex k;
        k.rank = f.rank;
        ExpSum proto(f.rank, f.direction(), f.horizon);
        try {
            for (const auto& x : field(jc, "cells", path + ".cellular")) k.cells.push_back(x.get<int>());
            size_t bi = 0;
            for (const auto& jb : field(jc, "boundaries", path + ".cellular")) {
                std::string w = path + ".cellular.boundaries[" + std::to_string(bi) + "]";
                int rows = bi < k.cells.size() ? k.cells[bi] : 0;
                int cols = bi + 1 < k.cells.size() ? k.cells[bi + 1] : 0;
                ExpSumMatrix m = expsum_zero_matrix(rows, cols, proto);
                if (!jb.is_array() || int(jb.size()) != rows)
                    throw SchemaError(w + ": expected " + std::to_string(rows) + " rows");
                for (int r = 0; r < rows; ++r) {
                    if (int(jb[size_t(r)].size()) != cols)
                        throw SchemaError(w + ": expected " + std::to_string(cols) + " columns");
                    for (int cidx = 0; cidx < cols; ++cidx)
                        m.a[r][cidx] = parse_expsum(jb[size_t(r)][size_t(cidx)], proto, w);
                }
                k.boundary.push_back(std::move(m));
                ++bi;
            }
            k.validate();
        } catch (const json::exception& e) {
            throw SchemaError(path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(path + ": " + e.what());
        }
        out.cellular = std::move(k);
    }
    if (j.contains("synthetic_shells")) {
        GrowthModel g;
        for (const auto& x : j["synthetic_shells"]) g.shell_counts.push_back(x.get<double>());
        out.growth = std::move(g);
    }
    return out;
}

Atlas load_atlas(const std::string& path) {
    json j = load_json(path);
    Atlas a;
    try {
        a.rank = field(j, "lattice_rank", path).get<int>();
        if (j.contains("direction"))
            for (const auto& x : j["direction"]) a.direction.push_back(x.get<double>());
        else
            a.direction.assign(size_t(a.rank), 0.0);
        if (j.contains("horizon")) a.horizon = j["horizon"].get<double>();
        for (const auto& jc : field(j, "charts", path)) {
            ChartPoint c;
            c.label = field(jc, "label", path + ".charts").get<std::string>();
            for (const auto& js : field(jc, "solutions", path + ".charts")) {
                Solution s;
                s.name = field(js, "name", path).get<std::string>();
                s.charge = parse_class(field(js, "charge", path), a.rank, path + ".charge");
                c.solutions.push_back(s);
            }
            a.charts.push_back(c);
        }
        for (const auto& jf : field(j, "transitions", path)) {
            TransitionFamily f;
            f.source = field(jf, "from", path + ".transitions").get<std::string>();
            f.target = field(jf, "to", path + ".transitions").get<std::string>();
            for (const auto& jr : field(jf, "records", path + ".transitions")) {
                TransitionRecord r;
                r.s = field(jr, "s", path).get<std::string>();
                r.s_prime = field(jr, "s_prime", path).get<std::string>();
                r.cls = parse_class(field(jr, "class", path), a.rank, path + ".class");
                r.count = field(jr, "count", path).get<long>();
                f.records.push_back(r);
            }
            a.transitions.push_back(f);
        }
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    try {
        a.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return a;
}

SectionsFile load_sections(const std::string& path, const Atlas& atlas) {
    json j = load_json(path);
    SectionsFile out;
    auto parse_section = [&](const json& js, const std::string& where) {
        SectionData s;
        s.chart = field(js, "chart", where).get<std::string>();
        const ChartPoint& chart = [&]() -> const ChartPoint& {
            try {
                return atlas.chart(s.chart);
            } catch (const std::invalid_argument& e) {
                throw SchemaError(where + ": " + e.what());
            }
        }();
        const json& ents = field(js, "entries", where);
        if (ents.size() != chart.solutions.size())
            throw SchemaError(where + ": expected one entry per chart solution");
        for (size_t i = 0; i < ents.size(); ++i)
            s.entries.push_back(parse_expsum(ents[i], atlas.proto(),
                                             where + ".entries[" + std::to_string(i) + "]"));
        return s;
    };
    try {
        out.g1 = parse_section(field(j, "g1", path), path + ".g1");
        out.g2 = parse_section(field(j, "g2", path), path + ".g2");
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return out;
}

WeightsFile load_weights(const std::string& path) {
    json j = load_json(path);
    WeightsFile out;
    try {
        int rank = 0;
        for (const auto& jc : field(j, "classes", path)) {
            if (rank == 0) rank = int(jc.size());
            out.weights.classes.push_back(parse_class(jc, rank, path + ".classes"));
        }
        out.weights.positivity = parse_class(field(j, "positivity", path), rank, path + ".positivity");
        for (const auto& jw : field(j, "weights", path)) {
            long k = field(jw, "k", path + ".weights").get<long>();
            int ci = field(jw, "class_index", path + ".weights").get<int>();
            out.weights.w[{k, ci}] = parse_rational(field(jw, "value", path + ".weights"),
                                                    path + ".weights.value");
        }
        out.kappa = parse_class(field(j, "kappa", path), rank, path + ".kappa");
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return out;
}

CriticalValueDiagram load_diagram(const std::string& path) {
    json j = load_json(path);
    try {
        std::vector<std::pair<Rational, Rational>> pts;
        for (const auto& jp : field(j, "points", path))
            pts.push_back({parse_rational(jp.at(0), path + ".points"),
                           parse_rational(jp.at(1), path + ".points")});
        std::vector<std::string> labels;
        for (const auto& jl : field(j, "labels", path)) labels.push_back(jl.get<std::string>());
        int n = int(pts.size());
        RatMat table(n, n);
        const json& jt = field(j, "intersections", path);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                table.at(r, c) = parse_rational(jt.at(size_t(r)).at(size_t(c)), path + ".intersections");
        return make_diagram(std::move(pts), std::move(labels), std::move(table));
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

std::vector<CrossingMove> load_moves(const std::string& path) {
    json j = load_json(path);
    std::vector<CrossingMove> out;
    try {
        for (const auto& jm : field(j, "moves", path)) {
            CrossingMove m;
            std::string kind = field(jm, "kind", path + ".moves").get<std::string>();
            if (kind == "segment")
                m.kind = CrossingMove::Kind::segment;
            else if (kind == "ray")
                m.kind = CrossingMove::Kind::ray;
            else
                throw SchemaError(path + ".moves: kind must be 'segment' or 'ray'");
            m.moving = field(jm, "moving", path).get<int>();
            m.i = field(jm, "i", path).get<int>();
            if (jm.contains("j")) m.j = jm["j"].get<int>();
            m.target = {parse_rational(field(jm, "target", path).at(0), path),
                        parse_rational(field(jm, "target", path).at(1), path)};
            out.push_back(m);
        }
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return out;
}

std::string diagram_to_json(const CriticalValueDiagram& d) {
    json j;
    for (const auto& p : d.points) j["points"].push_back({p.first.str(), p.second.str()});
    j["labels"] = d.labels;
    for (int r = 0; r < d.intersections.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < d.intersections.cols(); ++c) row.push_back(d.intersections.at(r, c).str());
        j["intersections"].push_back(row);
    }
    for (int r = 0; r < d.basis_change.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < d.basis_change.cols(); ++c) row.push_back(d.basis_change.at(r, c).str());
        j["basis_change"].push_back(row);
    }
    return j.dump(2);
}

SelfAdjointFamily load_family(const std::string& path) {
    json j = load_json(path);
    SelfAdjointFamily f;
    try {
        for (const auto& x : field(j, "grid", path)) f.grid.push_back(x.get<double>());
        bool cplx = j.value("complex", false);
        if (j.contains("crossing_multiplicity"))
            f.crossing_multiplicity = j["crossing_multiplicity"].get<int>();
        for (const auto& jm : field(j, "matrices", path)) {
            std::vector<std::vector<Cplx>> m;
            for (const auto& jr : jm) {
                std::vector<Cplx> row;
                for (const auto& je : jr) {
                    if (cplx)
                        row.push_back(Cplx(je.at(0).get<double>(), je.at(1).get<double>()));
                    else
                        row.push_back(Cplx(je.get<double>(), 0.0));
                }
                m.push_back(std::move(row));
            }
            f.matrices.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return f;
}

std::string generating_function_to_json(const GeneratingFunction& f) {
    json j;
    j["lattice_rank"] = f.rank;
    for (const auto& c : f.cone_covector) j["cone_covector"].push_back(c.str());
    j["terms"] = json::array();
    for (const auto& [b, n] : f.terms) {
        json t;
        for (const auto& x : b) t["class"].push_back(x.str());
        t["count"] = n.str();
        j["terms"].push_back(t);
    }
    return j.dump(2);
}

}  // namespace holonov
