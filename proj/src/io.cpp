// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace canonring::io {

namespace {

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            bad("unknown key \"" + key + "\" in " + what);
    }
}

const Json& require(const Json& j, const char* key, const char* what) {
    if (!j.contains(key)) bad(std::string(what) + " is missing \"" + key + "\"");
    return j.at(key);
}

Index index_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<Index>();
}

Json label_or_index(const FiniteGraph& g, Index v) {
    Json j;
    j["index"] = v;
    j["label"] = g.label(v);
    return j;
}

Index vertex_by_label(const FiniteGraph& g, const std::string& key) {
    for (Index v = 0; v < g.vertex_count(); ++v)
        if (g.label(v) == key) return v;
    bad("unknown vertex label \"" + key + "\"");
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const Json& x) {
                   return x.is_structured();
               })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << " = " << j.dump() << "\n";
    }
}

}  // namespace

// ---------------------------------------------------------------------------

Json to_json(const Integer& z) {
    if (fits_int64(z)) return Json(static_cast<std::int64_t>(z));
    return Json(z.str());
}

Json to_json(const Rational& q) { return Json(to_string(q)); }

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    bad("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad("expected a rational as an integer or \"p/q\" string, got " + j.dump());
}

FiniteGraph graph_from_json(const Json& j) {
    only_keys(j, {"vertices", "edges", "labels"}, "graph");
    const Index n = index_from_json(require(j, "vertices", "graph"), "vertices");
    const Json& ej = require(j, "edges", "graph");
    if (!ej.is_array()) bad("edges must be an array");
    std::vector<FiniteGraph::Edge> edges;
    for (const auto& e : ej) {
        if (!e.is_array() || e.size() != 2) bad("every edge must be a pair [u, v]");
        edges.emplace_back(index_from_json(e[0], "edge endpoint"), index_from_json(e[1], "edge endpoint"));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) bad("labels must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) bad("labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) bad("labels must be unique");
    }
    return FiniteGraph::build(n, std::move(edges), std::move(labels));
}

Json to_json(const FiniteGraph& g) {
    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = Json::array();
    for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

Divisor divisor_from_json(const FiniteGraph& g, const Json& j) {
    if (j.is_string() && j.get<std::string>() == "K") return canonical_divisor(g);
    IntVector c = IntVector::Zero(g.vertex_count());
    if (j.is_array()) {
        if (static_cast<Index>(j.size()) != g.vertex_count()) bad("divisor needs one coefficient per vertex");
        for (Index v = 0; v < g.vertex_count(); ++v) c(v) = integer_from_json(j[at(v)]);
    } else if (j.is_object() && j.contains("coeffs")) {
        only_keys(j, {"coeffs"}, "divisor");
        if (!j["coeffs"].is_object()) bad("coeffs must map vertex indices to integers");
        for (const auto& [key, value] : j["coeffs"].items()) {
            const Integer v = parse_integer(key);
            if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "vertex " + key + " out of range");
            c(static_cast<Index>(v)) += integer_from_json(value);
        }
    } else if (j.is_object()) {
        for (const auto& [key, value] : j.items()) c(vertex_by_label(g, key)) += integer_from_json(value);
    } else {
        bad("divisor must be \"K\", {\"coeffs\": {...}}, an array or a label map");
    }
    return Divisor(std::move(c));
}

Json to_json(const Divisor& d) {
    Json coeffs = Json::object();
    for (Index v = 0; v < d.size(); ++v)
        if (d[v] != 0) coeffs[std::to_string(v)] = to_json(d[v]);
    return {{"coeffs", coeffs}};
}

RationalFunction function_from_json(const FiniteGraph& g, const Json& j) {
    if (!j.is_array() || static_cast<Index>(j.size()) != g.vertex_count())
        bad("function needs one integer per vertex");
    IntVector values(g.vertex_count());
    for (Index v = 0; v < g.vertex_count(); ++v) values(v) = integer_from_json(j[at(v)]);
    return RationalFunction(std::move(values));
}

Json to_json(const RationalFunction& f) {
    Json j = Json::array();
    for (Index v = 0; v < f.size(); ++v) j.push_back(to_json(f[v]));
    return j;
}

// ---------------------------------------------------------------------------

MetricGraph metric_graph_from_json(const Json& j) {
    only_keys(j, {"vertices", "edges", "labels", "lengths", "refinement"}, "metric graph");
    Json model = j;
    model.erase("lengths");
    model.erase("refinement");
    const FiniteGraph g = graph_from_json(model);
    std::vector<Rational> lengths(at(g.edge_count()), Rational(1));
    if (j.contains("lengths")) {
        const Json& lj = j["lengths"];
        if (lj.is_array()) {
            if (static_cast<Index>(lj.size()) != g.edge_count()) bad("lengths needs one entry per edge");
            for (Index e = 0; e < g.edge_count(); ++e) lengths[at(e)] = rational_from_json(lj[at(e)]);
        } else if (lj.is_object()) {
            std::vector<bool> seen(at(g.edge_count()), false);
            for (const auto& [key, value] : lj.items()) {
                Index e = -1;
                try {
                    std::size_t used = 0;
                    e = static_cast<Index>(std::stoll(key, &used));
                    if (used != key.size()) e = -1;
                } catch (const std::exception&) {
                    e = -1;
                }
                if (e < 0 || e >= g.edge_count()) bad("lengths key \"" + key + "\" is not an edge index");
                lengths[at(e)] = rational_from_json(value);
                seen[at(e)] = true;
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end()) bad("lengths must cover every edge");
        } else {
            bad("lengths must be an array or an object");
        }
    }
    const bool refinement = j.contains("refinement") && j["refinement"].get<bool>();
    return MetricGraph::build(g, std::move(lengths), refinement);
}

Json to_json(const MetricGraph& g) {
    Json j = to_json(g.model());
    Json lengths = Json::object();
    for (Index e = 0; e < g.edge_count(); ++e) lengths[std::to_string(e)] = to_json(g.length(e));
    j["lengths"] = lengths;
    if (g.is_refinement()) j["refinement"] = true;
    return j;
}

PointOnGraph point_from_json(const MetricGraph& g, const Json& j) {
    if (j.is_object() && j.contains("vertex")) {
        only_keys(j, {"vertex"}, "point");
        const Index v = index_from_json(j["vertex"], "vertex");
        if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::IndexOutOfRange, "vertex out of range");
        return PointOnGraph::vertex(v);
    }
    only_keys(j, {"edge", "offset"}, "point");
    return PointOnGraph::on_edge(g, index_from_json(require(j, "edge", "point"), "edge"),
                                 rational_from_json(require(j, "offset", "point")));
}

Json to_json(const PointOnGraph& x) {
    Json j;
    if (x.is_vertex()) {
        j["vertex"] = x.vertex_id();
    } else {
        j["edge"] = x.edge();
        j["offset"] = to_json(x.offset());
    }
    return j;
}

MetricDivisor metric_divisor_from_json(const MetricGraph& g, const Json& j) {
    if (j.is_string() && j.get<std::string>() == "K") return canonical_divisor_metric(g);
    if (!j.is_array()) bad("metric divisor must be \"K\" or an array of {point, coeff}");
    MetricDivisor d;
    for (const auto& t : j) {
        only_keys(t, {"point", "coeff"}, "divisor term");
        d.add(point_from_json(g, require(t, "point", "divisor term")), integer_from_json(require(t, "coeff", "divisor term")));
    }
    return d;
}

Json to_json(const MetricDivisor& d) {
    Json j = Json::array();
    for (const auto& [x, c] : d.terms()) j.push_back({{"point", to_json(x)}, {"coeff", to_json(c)}});
    return j;
}

PLFunction pl_function_from_json(const MetricGraph& g, const Json& j) {
    if (!j.is_array()) bad("PL function must be an array of per-edge breakpoint lists");
    std::vector<PLFunction::Piece> pieces;
    for (const auto& edge : j) {
        if (!edge.is_array()) bad("breakpoint list must be an array");
        PLFunction::Piece piece;
        for (const auto& b : edge) {
            if (!b.is_array() || b.size() != 2) bad("breakpoint must be [offset, value]");
            piece.push_back({rational_from_json(b[0]), rational_from_json(b[1])});
        }
        pieces.push_back(std::move(piece));
    }
    return PLFunction::build(g, std::move(pieces));
}

Json to_json(const PLFunction& f) {
    Json j = Json::array();
    for (const auto& piece : f.pieces()) {
        Json e = Json::array();
        for (const auto& b : piece) e.push_back({to_json(b.offset), to_json(b.value)});
        j.push_back(e);
    }
    return j;
}

Json to_json(const MetricSubgraph& s) {
    Json j;
    j["vertices"] = Json::array();
    for (Index v : s.vertices()) j["vertices"].push_back(v);
    j["intervals"] = Json::array();
    for (std::size_t e = 0; e < s.intervals().size(); ++e)
        for (const auto& [a, b] : s.intervals()[e]) j["intervals"].push_back({e, to_json(a), to_json(b)});
    return j;
}

WitnessInstance instance_from_json(const Json& j) {
    only_keys(j, {"graph", "divisor", "edge", "n", "witness"}, "instance");
    WitnessInstance inst;
    inst.graph = metric_graph_from_json(require(j, "graph", "instance"));
    inst.divisor = metric_divisor_from_json(inst.graph, j.contains("divisor") ? j["divisor"] : Json("K"));
    inst.edge = j.contains("edge") ? index_from_json(j["edge"], "edge") : 0;
    if (inst.edge < 0 || inst.edge >= inst.graph.edge_count()) throw Error(ErrorKind::IndexOutOfRange, "edge out of range");
    inst.n = j.contains("n") ? integer_from_json(j["n"]) : Integer(1);
    if (inst.n < 1) bad("n must be positive");
    if (j.contains("witness")) inst.hypothesis_witness = pl_function_from_json(inst.graph, j["witness"]);
    return inst;
}

// ---------------------------------------------------------------------------

Json to_json(const RgdElement& el) { return {{"degree", to_json(el.degree)}, {"function", to_json(el.function)}}; }

Json to_json(const GeneratorSet& gens) {
    Json j;
    j["size"] = gens.size();
    j["degrees"] = Json::array();
    for (const auto& d : gens.degrees()) j["degrees"].push_back(to_json(d));
    j["generators"] = Json::array();
    for (const auto& g : gens.generators) j["generators"].push_back(to_json(g));
    return j;
}

Json to_json(const GenerationCertificate& cert) {
    Json j;
    j["target"] = to_json(cert.target);
    j["generated"] = cert.generated;
    j["products_examined"] = cert.products_examined;
    j["terms"] = Json::array();
    for (const auto& t : cert.terms) j["terms"].push_back({{"shift", to_json(t.shift)}, {"factors", t.factors}});
    if (!cert.generated) j["uncovered"] = cert.uncovered;
    return j;
}

Json to_json(const GnReport& rep) {
    const FiniteGraph& g = rep.gn.graph;
    Json j;
    j["n"] = rep.n;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["vacuous"] = rep.vacuous;
    j["points"] = {{"p", label_or_index(g, rep.gn.p)}, {"q", label_or_index(g, rep.gn.q)},
                   {"r", label_or_index(g, rep.gn.r)}, {"u", label_or_index(g, rep.gn.u)},
                   {"w", label_or_index(g, rep.gn.w)}};
    if (!rep.vacuous) {
        j["witness"] = to_json(rep.witness);
        j["witness_valid"] = rep.witness_valid;
        j["extremal"] = rep.extremal;
        j["elements_per_degree"] = rep.elements_per_degree;
        j["search_bound"] = rep.n - 1;
        j["products_examined"] = rep.certificate.products_examined;
        j["uncovered"] = rep.certificate.uncovered;
        j["obstruction"] = Json::array();
        for (const auto& row : rep.obstruction)
            j["obstruction"].push_back(
                {{"k", to_json(row.k)}, {"candidates", row.candidates}, {"equivalent", row.equivalent}});
        j["control"] = {{"k", to_json(rep.control_k)},
                        {"equivalent", rep.control_equivalent},
                        {"identity_holds", rep.identity_holds}};
    }
    j["generated_below"] = rep.generated_below;
    j["passed"] = rep.passed();
    return j;
}

Json to_json(const HypothesisReport& rep) {
    Json j;
    j["genus"] = to_json(rep.genus);
    j["degree"] = to_json(rep.degree);
    j["z_metric"] = rep.z_metric;
    j["z_divisor"] = rep.z_divisor;
    j["genus_at_least_2"] = rep.genus_ok;
    j["degree_at_least_2"] = rep.degree_ok;
    j["not_bridge"] = rep.not_bridge;
    j["nd_even"] = rep.nd_even;
    j["equivalent"] = rep.equivalent;
    if (rep.witness) j["witness"] = to_json(*rep.witness);
    j["passed"] = rep.passed();
    return j;
}

Json to_json(const WitnessResult& res) {
    Json j;
    j["s"] = to_json(res.s);
    j["N"] = to_json(res.big_n);
    j["degree"] = to_json(res.degree);
    j["r"] = to_json(res.r);
    j["ftilde"] = to_json(res.ftilde);
    j["f"] = to_json(res.f);
    j["orders"] = {{"p", to_json(res.ord_p)}, {"q", to_json(res.ord_q)}, {"r", to_json(res.ord_r)}};
    j["claims"] = {{"orders", res.orders_match},
                   {"divisor", res.divisor_matches},
                   {"r_off_lattice", res.r_off_lattice},
                   {"extremal", res.extremal}};
    j["firing_subgraphs"] = Json::array();
    for (const auto& s : res.firing_subgraphs) j["firing_subgraphs"].push_back(to_json(s));
    j["obstruction"] = Json::array();
    for (const auto& row : res.obstruction)
        j["obstruction"].push_back({{"k", to_json(row.k)}, {"equivalent", row.equivalent}});
    j["obstruction_holds"] = res.obstruction_holds;
    j["passed"] = res.passed();
    return j;
}

Json to_json(const NonFiniteCertificate& cert) {
    Json j;
    j["hypotheses"] = to_json(cert.hypotheses);
    j["witnesses"] = Json::array();
    for (const auto& w : cert.witnesses) j["witnesses"].push_back(to_json(w));
    j["verified"] = cert.verified();
    return j;
}

// ---------------------------------------------------------------------------

std::string to_dot(const FiniteGraph& g, const Divisor* d) {
    std::ostringstream out;
    out << "graph G {\n";
    for (Index v = 0; v < g.vertex_count(); ++v) {
        std::string label = g.label(v);
        if (d) label += "\\n" + (*d)[v].str();
        out << "  v" << v << " [label=" << quoted(label) << "];\n";
    }
    for (const auto& [u, v] : g.edges()) out << "  v" << u << " -- v" << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string to_dot(const MetricGraph& g, const std::vector<std::pair<std::string, PointOnGraph>>& marks) {
    std::ostringstream out;
    out << "graph G {\n";
    std::map<Index, std::string> vertex_names;
    for (const auto& [name, x] : marks)
        if (x.is_vertex()) vertex_names[x.vertex_id()] += (vertex_names[x.vertex_id()].empty() ? "" : ",") + name;
    for (Index v = 0; v < g.vertex_count(); ++v) {
        std::string label = g.model().label(v);
        if (vertex_names.count(v)) label += " (" + vertex_names[v] + ")";
        out << "  v" << v << " [label=" << quoted(label) << "];\n";
    }
    std::size_t next = 0;
    for (Index e = 0; e < g.edge_count(); ++e) {
        std::vector<std::pair<Rational, std::string>> inner;
        for (const auto& [name, x] : marks)
            if (!x.is_vertex() && x.edge() == e) inner.emplace_back(x.offset(), name);
        std::sort(inner.begin(), inner.end());
        std::string prev = "v" + std::to_string(g.model().edge(e).first);
        Rational prev_offset = 0;
        for (const auto& [offset, name] : inner) {
            const std::string node = "m" + std::to_string(next++);
            out << "  " << node << " [shape=point, xlabel=" << quoted(name + " @ " + to_string(offset)) << "];\n";
            out << "  " << prev << " -- " << node << " [label=" << quoted(to_string(offset - prev_offset)) << "];\n";
            prev = node;
            prev_offset = offset;
        }
        out << "  " << prev << " -- v" << g.model().edge(e).second
            << " [label=" << quoted(to_string(g.length(e) - prev_offset)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_text(const Json& j) {
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

}  // namespace canonring::io
