#include "cli.hpp"

#include "report.hpp"

#include "daegeo/trajectory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace daegeo::cli {

namespace {

struct Options {
    std::string field = "rational";
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> samples;
    double step = 1e-3;
    double horizon = 1.0;
    double tol = 1e-6;
    std::string input = "zero";
    std::string x0;
    std::size_t trials = 5;
    std::uint64_t seed = 1;
    bool lossless = false;

    json to_json() const {
        return json{{"field", field},
                    {"max_iter", max_iter ? json(*max_iter) : json(nullptr)},
                    {"samples", samples ? json(*samples) : json(nullptr)},
                    {"step", step},
                    {"horizon", horizon},
                    {"tol", tol},
                    {"input", input},
                    {"x0", x0},
                    {"trials", trials},
                    {"seed", seed},
                    {"lossless_decimals", lossless}};
    }

    static Options from_json(const json& j) {
        Options o;
        o.field = j.value("field", o.field);
        if (j.contains("max_iter") && !j["max_iter"].is_null()) o.max_iter = j["max_iter"].get<std::size_t>();
        if (j.contains("samples") && !j["samples"].is_null()) o.samples = j["samples"].get<std::size_t>();
        o.step = j.value("step", o.step);
        o.horizon = j.value("horizon", o.horizon);
        o.tol = j.value("tol", o.tol);
        o.input = j.value("input", o.input);
        o.x0 = j.value("x0", o.x0);
        o.trials = j.value("trials", o.trials);
        o.seed = j.value("seed", o.seed);
        return o;
    }

    FixpointOptions fixpoint() const { return FixpointOptions{max_iter}; }

    TrajectoryConfig trajectory() const;
};

// Result of one command, independent of how it is presented.
struct Outcome {
    bool holds = false;
    std::string summary;
    std::vector<std::string> lines;  // extra human-readable detail
    json certificate = nullptr;
    json conditions = nullptr;
    json details = json::object();
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + s + "' in " + what);
    }
}

InputSignal parse_input(const std::string& text) {
    const auto parts = split(text, ':');
    if (text == "zero") return InputSignal::zero();
    if (parts.size() == 2 && parts[0] == "step") return InputSignal::step(parse_double(parts[1], "--input"));
    if (parts.size() == 3 && parts[0] == "sin")
        return InputSignal::sinusoid(parse_double(parts[1], "--input"), parse_double(parts[2], "--input"));
    if (parts.size() == 3 && parts[0] == "random") {
        try {
            return InputSignal::piecewise_random(std::stoull(parts[1]), parse_double(parts[2], "--input"));
        } catch (const std::logic_error&) {
            throw ParseError("invalid seed in --input '" + text + "'");
        }
    }
    throw ParseError("unknown input signal '" + text + "' (zero, step:A, sin:A:W, random:SEED:PERIOD)");
}

TrajectoryConfig Options::trajectory() const {
    TrajectoryConfig cfg;
    cfg.step = step;
    cfg.horizon = horizon;
    cfg.tolerance = tol;
    cfg.input = parse_input(input);
    return cfg;
}

RationalMatrix parse_vector(const std::string& text, std::size_t n) {
    const auto parts = text.empty() ? std::vector<std::string>{} : split(text, ',');
    if (parts.size() != n)
        throw DimensionMismatch("--x0 has " + std::to_string(parts.size()) + " entries, the system has " +
                                std::to_string(n) + " states");
    RationalMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = Rational::parse(parts[i]);
    return v;
}

std::string format_matrix(const json& m) {
    if (m.is_object()) return "(" + std::to_string(m["rows"].get<std::size_t>()) + "x" +
                              std::to_string(m["cols"].get<std::size_t>()) + " empty)";
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += "; ";
        for (std::size_t k = 0; k < m[i].size(); ++k) s += (k ? " " : "") + m[i][k].get<std::string>();
    }
    return s + "]";
}

std::string failing_conditions(const Conditions& c, bool need_left_cover, bool need_right_cover) {
    std::vector<std::string> failed;
    if (!c.disturbances_matched) failed.push_back("disturbances not matched");
    if (!c.dynamics_invariant) failed.push_back("dynamics not invariant");
    if (!c.inputs_absorbed) failed.push_back("inputs not absorbed");
    if (!c.outputs_equal) failed.push_back("outputs differ");
    if (need_left_cover && !c.left_covers_consistent) failed.push_back("first projection misses consistent states");
    if (need_right_cover && !c.right_covers_consistent)
        failed.push_back("second projection misses consistent states");
    std::string s;
    for (std::size_t i = 0; i < failed.size(); ++i) s += (i ? ", " : "") + failed[i];
    return s;
}

// ---------------------------------------------------------------- commands

template <Field F>
Outcome consistent_outcome(const RationalSystem& rsys) {
    const auto sys = convert<F>(rsys);
    const auto r = consistent_subset(sys);
    Outcome out;
    out.holds = r.v_star.has_value();
    out.details["v0_star"] = subspace_json(r.v0_star);
    out.details["iterations"] = r.iterations;
    if (out.holds) {
        out.certificate = subspace_json(*r.v_star);
        out.summary = "consistent subspace of dimension " + std::to_string(r.v_star->dim()) + " in " +
                      std::to_string(sys.n()) + " states" + (r.v_star->is_full() ? " (full space)" : "");
        out.lines.push_back("V* basis: " + format_matrix(matrix_json(r.v_star->basis())));
    } else {
        out.summary = "consistent set empty (V0* has dimension " + std::to_string(r.v0_star.dim()) +
                      " but does not absorb the inputs)";
    }
    return out;
}

template <Field F>
Outcome bisim_outcome(const RationalSystem& r1, const RationalSystem& r2, const Options& opt) {
    const auto b = bisimilar(convert<F>(r1), convert<F>(r2), opt.fixpoint());
    const auto& v = b.verdict;
    Outcome out;
    out.holds = b.bisimilar;
    out.conditions = conditions_json(v.conditions);
    out.details["iterations"] = v.iterations;
    out.details["consistent_empty"] = v.consistent_empty;
    out.details["relation_found"] = v.holds();
    if (v.relation) out.certificate = relation_json(*v.relation);
    if (b.bisimilar)
        out.summary = "bisimilar: maximal relation of dimension " + std::to_string(v.relation->space.dim());
    else if (v.consistent_empty)
        out.summary = "not bisimilar: consistent subsets empty";
    else
        out.summary = "not bisimilar: " + failing_conditions(v.conditions, true, true);
    if (v.relation) out.lines.push_back("relation basis: " + format_matrix(matrix_json(v.relation->space.basis())));
    return out;
}

template <Field F>
Outcome simrel_outcome(const RationalSystem& r1, const RationalSystem& r2, const Options& opt) {
    const auto s = simulated_by(convert<F>(r1), convert<F>(r2), opt.fixpoint());
    const auto& v = s.verdict;
    Outcome out;
    out.holds = s.simulated;
    out.conditions = conditions_json(v.conditions);
    out.details["iterations"] = v.iterations;
    out.details["consistent_empty"] = v.consistent_empty;
    out.details["relation_found"] = v.holds();
    if (v.relation) out.certificate = relation_json(*v.relation);
    const std::string pair = "'" + r1.name() + "' by '" + r2.name() + "'";
    if (s.simulated)
        out.summary = "simulated: " + pair + ", maximal relation of dimension " +
                      std::to_string(v.relation->space.dim());
    else if (v.consistent_empty)
        out.summary = "not simulated: consistent subsets empty";
    else
        out.summary = "not simulated: " + failing_conditions(v.conditions, true, false);
    if (v.relation) out.lines.push_back("relation basis: " + format_matrix(matrix_json(v.relation->space.basis())));
    return out;
}

Outcome abstract_outcome(const RationalSystem& sys, const RationalMatrix& h) {
    const auto abs = abstract_system(sys, h);
    const auto v = is_simulation(abs.canonical_sim, sys, abs.abstract_sys);
    Outcome out;
    out.holds = v.holds();
    out.conditions = conditions_json(v.conditions);
    out.certificate = relation_json(abs.canonical_sim);
    out.details["abstract_system"] = system_to_json(abs.abstract_sys);
    out.details["h_plus"] = matrix_json(abs.h_plus);
    out.details["c_bar"] = matrix_json(abs.c_bar);
    out.details["simulated"] = v.holds() && v.conditions.left_covers_consistent;
    out.summary = out.holds ? "abstraction on " + std::to_string(h.rows()) +
                                  " states; graph of H is a simulation relation"
                            : "graph of H is not a simulation relation: " + failing_conditions(v.conditions, false, false);
    out.lines.push_back("E_bar: " + format_matrix(matrix_json(abs.abstract_sys.e())));
    out.lines.push_back("A_bar: " + format_matrix(matrix_json(abs.abstract_sys.a())));
    out.lines.push_back("G_bar: " + format_matrix(matrix_json(abs.abstract_sys.g())));
    out.lines.push_back("C_bar: " + format_matrix(matrix_json(abs.c_bar)));
    return out;
}

json rationals_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.to_string());
    return a;
}

Outcome regular_outcome(const RationalSystem& sys) {
    const auto rep = is_regular(sys);
    Outcome out;
    out.holds = rep.regular;
    out.details["det_coefficients"] = rationals_json(rep.det_coefficients);
    out.details["det_poly_nonzero"] = rep.det_poly_nonzero;
    out.details["geometric_regular"] = rep.geometric_regular;
    std::string poly;
    for (std::size_t k = 0; k < rep.det_coefficients.size(); ++k) {
        if (rep.det_coefficients[k].is_zero()) continue;
        if (!poly.empty()) poly += " + ";
        poly += "(" + rep.det_coefficients[k].to_string() + ")" + (k ? " s^" + std::to_string(k) : "");
    }
    out.summary = std::string(rep.regular ? "regular" : "not regular") + ": det(sE - A) = " + (poly.empty() ? "0" : poly);
    return out;
}

Outcome transfer_outcome(const RationalSystem& s1, const RationalSystem& s2, const Options& opt) {
    const auto cmp = transfer_equal(s1, s2, opt.samples.value_or(0));
    Outcome out;
    out.holds = cmp.equal;
    json samples = json::array();
    for (const auto& s : cmp.sample_points)
        samples.push_back(json{{"s", s.to_string()},
                               {"first", matrix_json(*transfer_at(s1, s))},
                               {"second", matrix_json(*transfer_at(s2, s))}});
    out.details["samples"] = samples;
    if (cmp.witness) {
        const auto& w = *cmp.witness;
        out.details["witness"] = json{{"s", w.s.to_string()}, {"row", w.row}, {"col", w.col},
                                      {"first", w.left.to_string()}, {"second", w.right.to_string()}};
        out.summary = "transfer matrices differ at s = " + w.s.to_string() + ", entry (" + std::to_string(w.row) +
                      "," + std::to_string(w.col) + "): " + w.left.to_string() + " vs " + w.right.to_string();
    } else {
        out.details["witness"] = nullptr;
        out.summary = "transfer matrices equal at " + std::to_string(cmp.sample_points.size()) + " sample points";
    }
    return out;
}

json double_rows(const std::vector<std::vector<double>>& rows) {
    json a = json::array();
    for (const auto& r : rows) a.push_back(r);
    return a;
}

Outcome simulate_outcome(const RationalSystem& sys, const Options& opt) {
    const RationalMatrix x0 = parse_vector(opt.x0, sys.n());
    const auto cfg = opt.trajectory();
    const auto res = simulate(sys, x0, cfg);
    Outcome out;
    out.holds = res.max_residual <= cfg.tolerance;
    json x0j = json::array();
    for (std::size_t i = 0; i < x0.rows(); ++i) x0j.push_back(x0(i, 0).to_string());
    out.certificate = json{{"kind", "initial_state"}, {"x0", x0j}};
    out.details["max_residual"] = res.max_residual;
    out.details["times"] = res.times;
    out.details["x_path"] = double_rows(res.x_path);
    out.details["y_path"] = double_rows(res.y_path);
    std::ostringstream os;
    os << "simulated " << res.times.size() - 1 << " steps to t = " << res.times.back()
       << ", max algebraic residual " << res.max_residual;
    out.summary = os.str();
    std::ostringstream y;
    y << "y(" << res.times.back() << ") =";
    for (double v : res.y_path.back()) y << ' ' << v;
    out.lines.push_back(y.str());
    return out;
}

Outcome validate_outcome(const RationalSystem& s1, const RationalSystem& s2, const Options& opt,
                         const std::optional<RationalRelation>& given) {
    Outcome out;
    std::optional<RationalRelation> rel = given;
    if (!rel) {
        const auto b = bisimilar(s1, s2, opt.fixpoint());
        if (!b.verdict.relation) {
            out.summary = "no bisimulation relation to validate";
            out.details["relation_found"] = false;
            return out;
        }
        rel = *b.verdict.relation;
    }
    const auto cfg = opt.trajectory();
    const auto rep = validate_relation(*rel, s1, s2, cfg, opt.trials, opt.seed);
    out.holds = rep.within_tolerance;
    out.certificate = relation_json(*rel);
    out.details["relation_found"] = true;
    out.details["max_output_deviation"] = rep.max_output_deviation;
    out.details["max_relation_distance"] = rep.max_relation_distance;
    out.details["max_matching_residual"] = rep.max_matching_residual;
    json trials = json::array();
    for (const auto& t : rep.trials)
        trials.push_back(json{{"input", t.input.describe()},
                              {"output_deviation", t.output_deviation},
                              {"relation_distance", t.relation_distance},
                              {"matching_residual", t.matching_residual}});
    out.details["trials"] = trials;
    std::ostringstream os;
    os << rep.trials.size() << " trials: max output deviation " << rep.max_output_deviation
       << ", max relation distance " << rep.max_relation_distance << (out.holds ? " (within " : " (exceeds ")
       << cfg.tolerance << ")";
    out.summary = os.str();
    return out;
}

// Dispatches a command on already-loaded systems. `map` is the abstraction
// map, `relation` an optional user relation for validate.
Outcome compute(const std::string& command, const std::vector<RationalSystem>& systems, const Options& opt,
                const std::optional<RationalMatrix>& map, const std::optional<RationalRelation>& relation) {
    const bool exact_only = command != "consistent" && command != "bisim" && command != "simrel";
    if (exact_only && opt.field != "rational")
        throw ParseError("--field " + opt.field + " is only supported by consistent, bisim and simrel");
    if (command == "consistent")
        return with_field(opt.field, [&](auto f) { return consistent_outcome<decltype(f)>(systems[0]); });
    if (command == "bisim")
        return with_field(opt.field, [&](auto f) { return bisim_outcome<decltype(f)>(systems[0], systems[1], opt); });
    if (command == "simrel")
        return with_field(opt.field, [&](auto f) { return simrel_outcome<decltype(f)>(systems[0], systems[1], opt); });
    if (command == "abstract") return abstract_outcome(systems[0], *map);
    if (command == "regular") return regular_outcome(systems[0]);
    if (command == "transfer-eq") return transfer_outcome(systems[0], systems[1], opt);
    if (command == "simulate") return simulate_outcome(systems[0], opt);
    if (command == "validate") return validate_outcome(systems[0], systems[1], opt, relation);
    throw ParseError("unknown command '" + command + "'");
}

RationalMatrix load_map(const std::string& path, const ParseOptions& po, json& record) {
    const std::string text = read_text(path);
    const json j = parse_json(text, po);
    const json& m = j.is_object() && j.contains("H") ? j["H"] : j;
    RationalMatrix h = matrix_from_json(m, "abstraction map");
    record = json{{"path", path}, {"sha256", sha256_hex(text)}, {"matrix", matrix_to_json(h)}};
    return h;
}

RationalRelation load_relation(const std::string& path, const ParseOptions& po) {
    const json j = parse_json(read_text(path), po);
    const json& r = j.contains("certificate") ? j["certificate"] : j;
    if (!r.is_object() || r.value("kind", std::string("relation")) != "relation")
        throw ParseError("'" + path + "' does not contain a relation certificate");
    return relation_from<Rational>(r);
}

int report_exit(bool holds) { return holds ? 0 : 1; }

// ------------------------------------------------------------------- check

template <Field F>
std::vector<std::string> verify_relation_certificate(const std::string& command, const json& cert,
                                                     const std::vector<RationalSystem>& systems,
                                                     const json& claimed_result, const json& details) {
    std::vector<std::string> problems;
    const auto rel = relation_from<F>(cert);
    const auto s1 = convert<F>(systems[0]);
    const auto s2 = convert<F>(command == "abstract" ? system_from_json(details.at("abstract_system")) : systems[1]);
    const auto v = command == "bisim" || command == "validate" ? is_bisimulation(rel, s1, s2)
                                                                 : is_simulation(rel, s1, s2);
    if (!v.holds()) problems.push_back("certificate fails: " + failing_conditions(v.conditions, false, false));
    const bool claimed = claimed_result.at("holds").get<bool>();
    if (claimed && command == "bisim" && !(v.conditions.left_covers_consistent && v.conditions.right_covers_consistent))
        problems.push_back("certificate does not project onto both consistent subspaces");
    if (claimed && command == "simrel" && !v.conditions.left_covers_consistent)
        problems.push_back("certificate does not project onto the first consistent subspace");
    return problems;
}

}  // namespace

int check_report(const json& report, std::ostream& out) {
    if (!report.is_object() || !report.contains("command") || !report.contains("inputs") ||
        !report.contains("result"))
        throw ParseError("not a daegeo report");
    const std::string command = report["command"].get<std::string>();
    if (command == "check") throw ParseError("reports of check cannot be checked again");
    const Options opt = Options::from_json(report.value("options", json::object()));

    std::vector<RationalSystem> systems;
    std::optional<RationalMatrix> map;
    for (const auto& in : report["inputs"]) {
        if (in.contains("system")) systems.push_back(system_from_json(in["system"]));
        if (in.contains("matrix")) map = matrix_from_json(in["matrix"], "abstraction map");
    }
    const json& cert = report.contains("certificate") ? report["certificate"] : json(nullptr);
    std::optional<RationalRelation> relation;
    if (command == "validate" && !cert.is_null()) relation = relation_from<Rational>(cert);

    const Outcome again = compute(command, systems, opt, map, relation);
    std::vector<std::string> problems;
    const bool claimed = report["result"].at("holds").get<bool>();
    if (claimed != again.holds)
        problems.push_back(std::string("recorded verdict ") + (claimed ? "holds" : "fails") +
                           " but recomputation says " + (again.holds ? "holds" : "fails"));

    if (!cert.is_null()) {
        const std::string kind = cert.value("kind", std::string());
        if (kind == "relation") {
            auto more = with_field(opt.field, [&](auto f) {
                return verify_relation_certificate<decltype(f)>(command, cert, systems, report["result"],
                                                                report.value("details", json::object()));
            });
            problems.insert(problems.end(), more.begin(), more.end());
        } else if (kind == "subspace") {
            with_field(opt.field, [&](auto f) {
                using F = decltype(f);
                const auto s = subspace_from<F>(cert);
                if (!satisfies_consistency(convert<F>(systems[0]), s))
                    problems.push_back("certificate subspace violates the consistency inclusions");
                return 0;
            });
        } else if (kind == "initial_state") {
            std::string joined;
            for (const auto& v : cert.at("x0")) joined += (joined.empty() ? "" : ",") + v.get<std::string>();
            const auto x0 = parse_vector(joined, systems[0].n());
            const auto c = consistent_subset(systems[0]);
            if (!c.v_star || !c.v_star->contains_vector(x0))
                problems.push_back("initial state is not consistent");
        } else {
            throw ParseError("unknown certificate kind '" + kind + "'");
        }
    }
    if (cert != again.certificate) problems.push_back("certificate differs from the recomputed one");

    if (problems.empty()) {
        out << "report confirmed: " << command << " " << (claimed ? "holds" : "fails") << "\n";
        return 0;
    }
    out << "report rejected:\n";
    for (const auto& p : problems) out << "  " << p << "\n";
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact bisimulation, simulation and abstraction checks for linear descriptor systems", "daegeo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    Options opt;
    std::vector<std::string> files;
    std::string json_path, map_path, out_path, relation_path;

    auto add_common = [&](CLI::App* sub, std::size_t n_files) {
        sub->add_option("systems", files, "System files (JSON, '-' for standard input)")
            ->required()
            ->expected(static_cast<int>(n_files));
        sub->add_option("--json", json_path, "Write the structured report to PATH");
        sub->add_flag("--lossless-decimals", opt.lossless, "Accept JSON decimal numbers, converted exactly");
    };
    auto add_fixpoint = [&](CLI::App* sub) {
        sub->add_option("--max-iter", opt.max_iter, "Cap on refinement steps (default n1 + n2 + 1)");
    };
    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", opt.field, "rational or gf:P (P in 2, 3, 5, 7, 11, 13)");
    };
    auto add_numeric = [&](CLI::App* sub) {
        sub->add_option("--step", opt.step, "Integration step");
        sub->add_option("--horizon", opt.horizon, "Simulated time span");
        sub->add_option("--tol", opt.tol, "Tolerance for the numeric verdict");
        sub->add_option("--input", opt.input, "zero | step:A | sin:A:W | random:SEED:PERIOD");
    };

    auto* consistent = app.add_subcommand("consistent", "Consistent subspace V*");
    add_common(consistent, 1);
    add_field(consistent);
    auto* bisim = app.add_subcommand("bisim", "Bisimilarity with maximal relation");
    add_common(bisim, 2);
    add_fixpoint(bisim);
    add_field(bisim);
    auto* simrel = app.add_subcommand("simrel", "Is the first system simulated by the second");
    add_common(simrel, 2);
    add_fixpoint(simrel);
    add_field(simrel);
    auto* abstract = app.add_subcommand("abstract", "Abstraction along a surjective map H");
    add_common(abstract, 1);
    abstract->add_option("--map", map_path, "JSON file with the matrix H")->required();
    abstract->add_option("--out", out_path, "Write the abstract system to PATH");
    auto* regular = app.add_subcommand("regular", "Regularity of the pencil sE - A");
    add_common(regular, 1);
    auto* transfer = app.add_subcommand("transfer-eq", "Equality of transfer matrices");
    add_common(transfer, 2);
    transfer->add_option("--samples", opt.samples, "Minimum number of sample points");
    auto* check = app.add_subcommand("check", "Re-verify a report written with --json");
    check->add_option("report", files, "Report file")->required()->expected(1);
    auto* sim = app.add_subcommand("simulate", "Simulate one consistent trajectory");
    add_common(sim, 1);
    add_numeric(sim);
    sim->add_option("--x0", opt.x0, "Initial state, comma-separated rationals")->required();
    auto* validate = app.add_subcommand("validate", "Check a relation on simulated trajectories");
    add_common(validate, 2);
    add_numeric(validate);
    add_fixpoint(validate);
    validate->add_option("--relation", relation_path, "Relation certificate or report (default: maximal relation)");
    validate->add_option("--trials", opt.trials, "Number of random trials");
    validate->add_option("--seed", opt.seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto start = std::chrono::steady_clock::now();
        if (command == "check") {
            return check_report(parse_json(read_text(files[0])), out);
        }
        const ParseOptions po{opt.lossless};
        std::vector<RationalSystem> systems;
        json inputs = json::array();
        for (const auto& f : files) {
            auto loaded = load_input(f, po);
            inputs.push_back(input_json(loaded));
            systems.push_back(std::move(loaded.sys));
        }
        std::optional<RationalMatrix> map;
        if (command == "abstract") {
            json record;
            map = load_map(map_path, po, record);
            inputs.push_back(record);
        }
        std::optional<RationalRelation> relation;
        if (command == "validate" && !relation_path.empty()) relation = load_relation(relation_path, po);

        const Outcome o = compute(command, systems, opt, map, relation);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        out << o.summary << "\n";
        for (const auto& line : o.lines) out << "  " << line << "\n";

        if (command == "abstract" && !out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw ParseError("cannot write '" + out_path + "'");
            f << serialize_system(system_from_json(o.details["abstract_system"]));
        }
        if (!json_path.empty()) {
            json report{{"tool", "daegeo"},
                        {"command", command},
                        {"inputs", inputs},
                        {"options", opt.to_json()},
                        {"result", json{{"holds", o.holds}, {"summary", o.summary}}},
                        {"certificate", o.certificate},
                        {"conditions", o.conditions},
                        {"details", o.details},
                        {"timing", json{{"seconds", seconds}}}};
            std::ofstream f(json_path);
            if (!f) throw ParseError("cannot write '" + json_path + "'");
            f << report.dump(2) << "\n";
        }
        return report_exit(o.holds);
    } catch (const Error& e) {
        err << "daegeo " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "daegeo " << command << ": malformed report: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "daegeo " << command << ": " << e.what() << "\n";
        return 2;
    }
}

}  // namespace daegeo::cli
