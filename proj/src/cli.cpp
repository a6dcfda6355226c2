// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "canonring/random.hpp"

namespace canonring::cli {

namespace {

using io::Json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

Index small_index(const std::string& text, const char* what) {
    const Integer z = parse_integer(text);
    if (z < 0 || z > 100000) throw Error(ErrorKind::InvalidInput, std::string(what) + " out of range: " + text);
    return static_cast<Index>(z);
}

// Inline JSON, or the contents of a file.
Json load_json(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    const bool inline_json = first != std::string::npos && std::string("{[\"").find(arg[first]) != std::string::npos;
    try {
        if (inline_json) return Json::parse(arg);
        std::ifstream in(arg);
        if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + arg + "'");
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, "malformed JSON in '" + arg + "': " + e.what());
    }
}

// Named graphs: theta, path:N, complete:N, gn:N; otherwise JSON.
FiniteGraph load_graph(const std::string& arg) {
    const auto parts = split(arg, ':');
    if (!parts.empty()) {
        if (parts[0] == "theta" && parts.size() == 1) return theta_graph();
        if (parts.size() == 2 && parts[0] == "path") return path_graph(small_index(parts[1], "path size"));
        if (parts.size() == 2 && parts[0] == "complete") return complete_graph(small_index(parts[1], "complete size"));
        if (parts.size() == 2 && parts[0] == "gn") return build_gn(small_index(parts[1], "n")).graph;
    }
    return io::graph_from_json(load_json(arg));
}

Divisor load_divisor(const FiniteGraph& g, const std::string& arg) {
    if (arg == "K") return canonical_divisor(g);
    return io::divisor_from_json(g, load_json(arg));
}

// Named metric graphs: theta[:L], complete:N[:L]; otherwise JSON.
MetricGraph load_metric_graph(const std::string& arg) {
    const auto parts = split(arg, ':');
    if (!parts.empty() && parts[0] == "theta" && parts.size() <= 2)
        return theta_metric(parts.size() == 2 ? parse_rational(parts[1]) : Rational(1));
    if (!parts.empty() && parts[0] == "complete" && (parts.size() == 2 || parts.size() == 3))
        return complete_metric(small_index(parts[1], "complete size"),
                               parts.size() == 3 ? parse_rational(parts[2]) : Rational(1));
    return io::metric_graph_from_json(load_json(arg));
}

MetricDivisor load_metric_divisor(const MetricGraph& g, const std::string& arg) {
    if (arg == "K") return canonical_divisor_metric(g);
    return io::metric_divisor_from_json(g, load_json(arg));
}

// Named instances: theta (D = K, e = 0, n = 1), complete:N[:L]; otherwise JSON.
WitnessInstance load_instance(const std::string& arg) {
    const auto parts = split(arg, ':');
    if (parts.size() == 1 && parts[0] == "theta") {
        WitnessInstance inst;
        inst.graph = theta_metric();
        inst.divisor = canonical_divisor_metric(inst.graph);
        return inst;
    }
    if (!parts.empty() && parts[0] == "complete" && (parts.size() == 2 || parts.size() == 3))
        return complete_graph_instance(small_index(parts[1], "complete size"),
                                       parts.size() == 3 ? parse_integer(parts[2]) : Integer(1));
    return io::instance_from_json(load_json(arg));
}

struct Settings {
    std::string format = "json";
    std::size_t max_elements = EnumerationOptions{}.max_elements;
    std::int64_t max_degree = 64;
    std::size_t product_cap = DecomposeOptions{}.product_cap;
    std::int64_t max_points = 200000;

    [[nodiscard]] EnumerationOptions enumeration() const {
        EnumerationOptions o;
        o.max_elements = max_elements;
        return o;
    }
    [[nodiscard]] DecomposeOptions decompose() const {
        DecomposeOptions o;
        o.max_degree = max_degree;
        o.product_cap = product_cap;
        return o;
    }
};

class Emitter {
  public:
    Emitter(const Settings& s, std::ostream& out) : settings_(s), out_(out) {}

    void operator()(const Json& j, const std::string& dot = {}) const {
        if (settings_.format == "dot") {
            if (dot.empty()) throw Error(ErrorKind::InvalidInput, "DOT output is not available for this command");
            out_ << dot;
        } else if (settings_.format == "text") {
            out_ << io::to_text(j);
        } else {
            out_ << j.dump(2) << "\n";
        }
    }

  private:
    const Settings& settings_;
    std::ostream& out_;
};

Json elements_json(const std::vector<RgdElement>& els) {
    Json j = Json::array();
    for (const auto& el : els) j.push_back(io::to_json(el.function));
    return j;
}

std::string instance_dot(const WitnessInstance& inst, const std::optional<PointOnGraph>& r) {
    std::vector<std::pair<std::string, PointOnGraph>> marks{{"p", PointOnGraph::vertex(inst.p())},
                                                            {"q", PointOnGraph::vertex(inst.q())}};
    if (r) marks.emplace_back("r", *r);
    return io::to_dot(inst.graph, marks);
}

int witness_command(const WitnessInstance& inst, std::vector<Integer> s_list, const Emitter& emit, Json head) {
    const HypothesisReport hyp = check_hypotheses(inst);
    if (!hyp.passed()) {
        head["hypotheses"] = io::to_json(hyp);
        head["verified"] = false;
        emit(head, instance_dot(inst, std::nullopt));
        return kFalse;
    }
    if (s_list.empty()) s_list.push_back(inst.n);
    const NonFiniteCertificate cert = nonfinite_certificate(inst, s_list);
    const Json body = io::to_json(cert);
    for (const auto& [k, v] : body.items()) head[k] = v;
    emit(head, instance_dot(inst, cert.witnesses.front().r));
    return cert.verified() ? kOk : kFalse;
}

const CLI::Validator kPositive(
    [](std::string& text) -> std::string {
        try {
            return parse_integer(text) >= 1 ? std::string() : "must be a positive integer";
        } catch (const Error&) {
            return "must be a positive integer";
        }
    },
    "POSITIVE");

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BudgetExceeded:
        case ErrorKind::DegreeOverflow: return kBudget;
        case ErrorKind::VerificationFailure: return kFalse;
        default: return kInputError;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Divisors, linear systems and canonical semi-rings of graphs and metric graphs", "canonring"};
    app.require_subcommand(1);
    Settings settings;
    app.add_option("--format", settings.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--max-elements", settings.max_elements, "Enumeration cap")->check(kPositive);
    app.add_option("--max-degree", settings.max_degree, "Largest degree a decomposition may target")
        ->check(kPositive);
    app.add_option("--product-cap", settings.product_cap, "Cap on products examined")->check(kPositive);
    app.add_option("--max-points", settings.max_points, "Cap on parallelepiped lattice points")
        ->check(kPositive);
    auto sub = [](CLI::App* parent, const char* name, const char* desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    std::string graph_spec, divisor_spec = "K", function_spec;
    std::int64_t m = 1, below = -1, verify_up_to = 0, min_degrees = 0, n_param = 0, len = 1;
    bool use_basis = false;

    CLI::App* rgd = sub(&app, "rgd", "Enumerate R(G, mD) up to constants");
    CLI::App* ext = sub(&app, "extremals", "Extremals of R(G, mD)");
    CLI::App* gens = sub(&app, "generators", "Hilbert basis of the canonical semi-ring cone");
    CLI::App* check = sub(&app, "check-generated", "Decide whether a function is generated in lower degree");
    for (CLI::App* s : {rgd, ext, gens, check}) {
        s->add_option("--graph", graph_spec, "JSON file, inline JSON, or theta | path:N | complete:N | gn:N")
            ->required();
        s->add_option("--divisor", divisor_spec, "K, JSON file or inline JSON");
    }
    for (CLI::App* s : {rgd, ext, check}) s->add_option("--m", m, "Degree")->check(CLI::NonNegativeNumber);
    gens->add_option("--verify-up-to", verify_up_to, "Certify every element up to this degree over the basis")
        ->check(CLI::NonNegativeNumber);
    gens->add_option("--min-degrees", min_degrees, "Degrees needing new generators, up to this degree")
        ->check(CLI::NonNegativeNumber);
    check->add_option("--function", function_spec, "Target function, JSON file or inline array")->required();
    check->add_option("--below", below, "Use all elements of degree 1..below (default m-1)");
    check->add_flag("--basis", use_basis, "Decompose over the Hilbert basis instead");

    CLI::App* gn = sub(&app, "verify-gn", "Verify the non-generation witness on G_n");
    gn->add_option("--n", n_param, "n")->required()->check(kPositive);

    CLI::App* trop = sub(&app, "trop", "Metric graph commands");
    trop->require_subcommand(1);
    CLI::App* equiv = sub(trop, "equiv", "Linear equivalence of two divisors on a metric graph");
    std::string d1_spec, d2_spec, instance_spec;
    equiv->add_option("--graph", graph_spec, "JSON file, inline JSON, or theta[:L] | complete:N[:L]")->required();
    equiv->add_option("--d1", d1_spec, "First divisor")->required();
    equiv->add_option("--d2", d2_spec, "Second divisor")->required();
    CLI::App* witness = sub(trop, "witness", "Non-finite-generation certificate");
    std::vector<std::string> s_values;
    witness->add_option("--instance", instance_spec, "JSON file, inline JSON, or theta | complete:N[:L]")->required();
    witness->add_option("--s", s_values, "Values of s (multiples of n)");
    CLI::App* complete = sub(trop, "complete-graph", "Certificate on the complete graph");
    complete->add_option("--n", n_param, "Number of vertices")->required()->check(CLI::Range(4, 64));
    complete->add_option("--len", len, "Edge length")->check(kPositive);
    complete->add_option("--s", s_values, "Values of s (multiples of the parameter)");

    CLI::App* self = sub(&app, "selfcheck", "Randomized invariant checks");
    std::uint64_t seed = 1;
    std::size_t cases = 100;
    self->add_option("--seed", seed, "Random seed");
    self->add_option("--cases", cases, "Number of random cases")->check(kPositive);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\nRun with --help for more information.\n";
        return kInputError;
    }

    const Emitter emit(settings, out);
    try {
        if (rgd->parsed() || ext->parsed() || gens->parsed() || check->parsed()) {
            const FiniteGraph g = load_graph(graph_spec);
            const Divisor d = load_divisor(g, divisor_spec);
            Json head{{"graph", io::to_json(g)}, {"divisor", io::to_json(d)}};
            if (rgd->parsed() || ext->parsed()) {
                const auto els = rgd->parsed() ? rgd_enumerate(g, d, m, settings.enumeration())
                                               : extremals(g, d, m, settings.enumeration());
                head["m"] = m;
                head["count"] = els.size();
                head[rgd->parsed() ? "elements" : "extremals"] = elements_json(els);
                const Divisor md = Integer(m) * d;
                emit(head, io::to_dot(g, &md));
                return kOk;
            }
            if (gens->parsed()) {
                const MonoidCone cone = graded_cone(g, d);
                HilbertOptions ho;
                ho.max_parallelepiped_points = settings.max_points;
                const GeneratorSet basis = hilbert_basis(cone, ho);
                head["rays"] = Json::array();
                for (const auto& ray : cone.rays) head["rays"].push_back(io::to_json(cone.from_slice(ray)));
                head["basis"] = io::to_json(basis);
                bool all = true;
                if (verify_up_to > 0) {
                    std::size_t checked = 0;
                    for (std::int64_t k = 1; k <= verify_up_to; ++k)
                        for (const auto& el : rgd_enumerate(g, d, k, settings.enumeration())) {
                            ++checked;
                            all = all && monoid_decompose(el, basis, cone).has_value();
                        }
                    head["verified_up_to"] = verify_up_to;
                    head["elements_checked"] = checked;
                    head["all_generated"] = all;
                }
                if (min_degrees > 0) {
                    GeneratorDegreeOptions go;
                    go.enumeration = settings.enumeration();
                    go.product_cap = settings.product_cap;
                    head["generator_degrees"] = Json::array();
                    for (const auto& k : min_generator_degrees(g, d, min_degrees, go))
                        head["generator_degrees"].push_back(io::to_json(k));
                }
                emit(head, io::to_dot(g, &d));
                return all ? kOk : kFalse;
            }
            const RgdElement target = make_element(g, d, io::function_from_json(g, load_json(function_spec)), m);
            head["m"] = m;
            GenerationCertificate cert;
            if (use_basis) {
                const MonoidCone cone = graded_cone(g, d);
                HilbertOptions ho;
                ho.max_parallelepiped_points = settings.max_points;
                const GeneratorSet basis = hilbert_basis(cone, ho);
                head["generators"] = io::to_json(basis);
                auto found = monoid_decompose(target, basis, cone);
                if (found) {
                    cert = *found;
                } else {
                    cert.target = target;
                }
            } else {
                const std::int64_t top = below < 0 ? m - 1 : below;
                GeneratorSet lower;
                for (std::int64_t k = 1; k <= top; ++k) {
                    auto level = rgd_enumerate(g, d, k, settings.enumeration());
                    lower.generators.insert(lower.generators.end(), level.begin(), level.end());
                }
                head["below"] = top;
                head["generator_count"] = lower.size();
                cert = decompose(target, lower, settings.decompose());
            }
            head["certificate"] = io::to_json(cert);
            const Divisor md = Integer(m) * d;
            emit(head, io::to_dot(g, &md));
            return cert.generated ? kOk : kFalse;
        }
        if (gn->parsed()) {
            GnOptions go;
            go.enumeration = settings.enumeration();
            go.decompose = settings.decompose();
            const GnReport rep = verify_gn(n_param, go);
            const Divisor k = canonical_divisor(rep.gn.graph);
            emit(io::to_json(rep), io::to_dot(rep.gn.graph, &k));
            return rep.passed() ? kOk : kFalse;
        }
        if (equiv->parsed()) {
            const MetricGraph g = load_metric_graph(graph_spec);
            const MetricDivisor d1 = load_metric_divisor(g, d1_spec);
            const MetricDivisor d2 = load_metric_divisor(g, d2_spec);
            const auto f = linear_equiv_metric(g, d1, d2);
            Json head{{"graph", io::to_json(g)}, {"d1", io::to_json(d1)}, {"d2", io::to_json(d2)},
                      {"equivalent", f.has_value()}};
            if (f) head["witness"] = io::to_json(*f);
            std::vector<std::pair<std::string, PointOnGraph>> marks;
            for (const auto& [x, c] : d1.terms()) marks.emplace_back("d1:" + c.str(), x);
            for (const auto& [x, c] : d2.terms()) marks.emplace_back("d2:" + c.str(), x);
            emit(head, io::to_dot(g, marks));
            return f ? kOk : kFalse;
        }
        if (witness->parsed() || complete->parsed()) {
            const WitnessInstance inst =
                witness->parsed() ? load_instance(instance_spec) : complete_graph_instance(n_param, Integer(len));
            std::vector<Integer> s_list;
            for (const auto& s : s_values) s_list.push_back(parse_integer(s));
            Json head{{"graph", io::to_json(inst.graph)},
                      {"divisor", io::to_json(inst.divisor)},
                      {"edge", inst.edge},
                      {"p", inst.p()},
                      {"q", inst.q()},
                      {"n", io::to_json(inst.n)}};
            return witness_command(inst, s_list, emit, std::move(head));
        }
        if (self->parsed()) {
            const Json rep = selfcheck(seed, cases);
            emit(rep);
            return rep["failures"].get<std::size_t>() == 0 ? kOk : kFalse;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        const int code = exit_code_for(e.kind());
        if (code != kInputError) out << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
        return code;
    } catch (const Json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

// ---------------------------------------------------------------------------

Json selfcheck(std::uint64_t seed, std::size_t cases) {
    Rng rng(seed);
    std::map<std::string, std::size_t> failures;
    auto expect = [&](bool ok, const char* name) {
        failures.emplace(name, 0);
        if (!ok) ++failures[name];
    };
    for (std::size_t c = 0; c < cases; ++c) {
        // Finite graphs.
        const Index n = std::uniform_int_distribution<Index>(1, 4)(rng);
        const FiniteGraph g = random_graph(rng, n, std::uniform_int_distribution<Index>(0, 3)(rng));
        // Effective up to equivalence, so R(G, D) is never empty.
        Divisor d = random_divisor(rng, n, 0, 2);
        if (d.degree() == 0) d = Divisor::unit(n, 0);
        d = d - ord_and_div(g, RationalFunction(random_divisor(rng, n, -1, 1).coeffs()));
        const Integer m = std::uniform_int_distribution<int>(1, 2)(rng);
        EnumerationOptions eo;
        eo.max_elements = 20000;
        const auto els = rgd_enumerate(g, d, m, eo);
        expect(!els.empty(), "nonempty");
        const auto ext = extremals(g, d, m, eo);
        std::vector<RationalFunction> family;
        for (const auto& e : ext) family.push_back(e.function);
        std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
        for (int t = 0; t < 3; ++t) {
            const auto& f = els[pick(rng)].function;
            const auto& h = els[pick(rng)].function;
            expect(ord_and_div(g, f).degree() == 0, "degree_zero");
            expect(ord_and_div(g, odot(f, h)) == ord_and_div(g, f) + ord_and_div(g, h), "div_product");
            expect(is_member(g, d, oplus(f, h), m), "oplus_closed");
            expect(is_member(g, d, odot(f, h), 2 * m), "odot_closed");
            expect(oplus_cover(f, family).has_value(), "extremal_cover");
        }
        // Metric graphs.
        const MetricGraph mg = random_metric_graph(rng, 3, 3);
        const PLFunction f = random_pl_function(rng, mg, 2, 2);
        const PLFunction h = random_pl_function(rng, mg, 2, 2);
        expect(ord_div_metric(mg, f).degree() == 0, "metric_degree_zero");
        expect(ord_div_metric(mg, f + h) == ord_div_metric(mg, f) + ord_div_metric(mg, h), "metric_div_product");
        MetricDivisor e;
        for (int k = 0; k < 3; ++k) e.add(random_point(rng, mg, 2), std::uniform_int_distribution<int>(1, 3)(rng));
        const MetricSubgraph sub = MetricSubgraph::points(mg, {random_point(rng, mg, 2)});
        if (!sub.is_whole(mg)) {
            const Rational l = firing_distance(mg, e, sub);
            expect(can_fire(mg, e, sub, l) == can_fire(mg, e, sub, l / 2), "can_fire_halving");
        }
    }
    Json j;
    j["seed"] = seed;
    j["cases"] = cases;
    std::size_t total = 0;
    j["checks"] = Json::object();
    for (const auto& [name, count] : failures) {
        j["checks"][name] = count;
        total += count;
    }
    j["failures"] = total;
    return j;
}

}  // namespace canonring::cli
