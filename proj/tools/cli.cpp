#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fixtures.hpp"
#include "varbound/optimizer.hpp"
#include "varbound/reference.hpp"

namespace varbound::cli {

namespace {

using nlohmann::json;

std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

Potential make_potential(const std::string& text, double kinetic_factor) {
    Potential parsed = parse_potential(text);
    return Potential(parsed.terms(), kinetic_factor);
}

// One bound computation: inputs, the optimization mode, and the resolved
// parameter triple actually used.
struct BoundRequest {
    std::string potential_text;
    int d = 3;
    int l = 0;
    int n = 1;
    int k = 0;
    double kinetic_factor = 1.0;
    std::string optimize = "none";  // none | scale | full
    std::optional<double> p, t, s;
};

struct BoundOutcome {
    ParamTriple initial{};
    ParamTriple used{};
    SpectrumEstimate estimate;
    long evaluations = 0;
    bool converged = true;
    bool optimized = false;
};

BoundOutcome run_bound(const BoundRequest& request) {
    Potential potential = make_potential(request.potential_text, request.kinetic_factor);
    Channel channel(request.d, request.l);
    if (request.k < 0 || request.k >= request.n)
        throw domain_error("-k must lie in [0, n)");

    ParamTriple init = suggest_initial(potential, channel);
    if (request.p) init.p = *request.p;
    if (request.t) init.t = *request.t;
    if (request.s) init.s = *request.s;

    BoundOutcome outcome{init, init,
                         SpectrumEstimate{{}, BasisSpec(request.n, init.p, init.t, init.s),
                                          channel, 0.0}};
    // Full-factorization solve when possible; at parameters past the
    // factorization limit fall back to the truncated solve, whose levels are
    // still valid bounds.  Conditioning 0 marks the fallback.
    auto estimate_at = [&](const ParamTriple& at) {
        BasisSpec basis(request.n, at.p, at.t, at.s);
        try {
            return upper_bounds(potential, basis, channel);
        } catch (const numeric_error&) {
            MatrixBundle bundle(potential, basis, channel);
            auto [h, nm] = bundle.scaled_pair_ext(at.s);
            return SpectrumEstimate{truncated_bounds_ext(h, nm, bundle.order()), basis,
                                    channel, 0.0};
        }
    };
    if (request.optimize == "none") {
        outcome.estimate =
            upper_bounds(potential, BasisSpec(request.n, init.p, init.t, init.s), channel);
    } else if (request.optimize == "scale") {
        MatrixBundle bundle(potential, BasisSpec(request.n, init.p, init.t, 1.0), channel);
        OptimizationResult result = minimize_scale(bundle, request.k, init.s);
        outcome.used = result.best_params;
        outcome.evaluations = result.evaluations;
        outcome.converged = result.converged;
        outcome.optimized = true;
        outcome.estimate = estimate_at(result.best_params);
        // the optimizer's value is the truncated-solve bound; keep the safer one
        outcome.estimate.eigenvalues.at(std::size_t(request.k)) = std::max(
            outcome.estimate.eigenvalues.at(std::size_t(request.k)), result.best_value);
    } else if (request.optimize == "full") {
        OptimizationResult result =
            minimize_full(potential, channel, request.n, request.k, init);
        outcome.used = result.best_params;
        outcome.evaluations = result.evaluations;
        outcome.converged = result.converged;
        outcome.optimized = true;
        outcome.estimate = estimate_at(result.best_params);
        outcome.estimate.eigenvalues.at(std::size_t(request.k)) = std::max(
            outcome.estimate.eigenvalues.at(std::size_t(request.k)), result.best_value);
    } else {
        throw domain_error("--optimize must be one of none, scale, full");
    }
    return outcome;
}

json bound_to_json(const BoundRequest& request, const BoundOutcome& outcome) {
    json j;
    j["command"] = "bound";
    j["inputs"] = {{"potential", request.potential_text},
                   {"d", request.d},
                   {"l", request.l},
                   {"n", request.n},
                   {"k", request.k},
                   {"kinetic_factor", request.kinetic_factor},
                   {"optimize", request.optimize},
                   {"p", outcome.initial.p},
                   {"t", outcome.initial.t},
                   {"s", outcome.initial.s}};
    j["params"] = {{"p", outcome.used.p}, {"t", outcome.used.t}, {"s", outcome.used.s}};
    j["eigenvalues"] = outcome.estimate.eigenvalues;
    j["diagnostics"] = {{"conditioning", outcome.estimate.conditioning},
                        {"evaluations", outcome.evaluations},
                        {"converged", outcome.converged},
                        {"degeneracy", degeneracy(outcome.estimate.channel)}};
    return j;
}

BoundRequest bound_from_json(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw domain_error("--from-json: cannot open " + path);
    json j = json::parse(file);
    const json& in = j.at("inputs");
    BoundRequest request;
    request.potential_text = in.at("potential").get<std::string>();
    request.d = in.at("d").get<int>();
    request.l = in.at("l").get<int>();
    request.n = in.at("n").get<int>();
    request.k = in.at("k").get<int>();
    request.kinetic_factor = in.at("kinetic_factor").get<double>();
    request.optimize = in.at("optimize").get<std::string>();
    request.p = in.at("p").get<double>();
    request.t = in.at("t").get<double>();
    request.s = in.at("s").get<double>();
    return request;
}

void print_bound_human(std::ostream& out, const BoundRequest& request,
                       const BoundOutcome& outcome) {
    out << "potential     " << request.potential_text << "\n";
    out << "channel       d=" << request.d << " l=" << request.l << " (degeneracy "
        << degeneracy(outcome.estimate.channel) << ")\n";
    out << "kinetic       " << fmt(request.kinetic_factor) << "\n";
    if (outcome.optimized) {
        out << "optimize      " << request.optimize << " from (p=" << fmt(outcome.initial.p)
            << ", t=" << fmt(outcome.initial.t) << ", s=" << fmt(outcome.initial.s) << "), "
            << outcome.evaluations << " evaluations, "
            << (outcome.converged ? "converged" : "not converged") << "\n";
    }
    out << "basis         n=" << request.n << " p=" << fmt(outcome.used.p)
        << " t=" << fmt(outcome.used.t) << " s=" << fmt(outcome.used.s) << "\n";
    out << "conditioning  " << fmt(outcome.estimate.conditioning) << "\n";
    for (std::size_t i = 0; i < outcome.estimate.eigenvalues.size(); ++i)
        out << "E[" << i << "]" << (int(i) == request.k ? " *" : "  ") << "        "
            << fmt(outcome.estimate.eigenvalues[i]) << "\n";
}

void print_bound_csv(std::ostream& out, const BoundRequest& request,
                     const BoundOutcome& outcome) {
    out << "potential,d,l,kinetic_factor,n,p,t,s,index,eigenvalue,conditioning\n";
    for (std::size_t i = 0; i < outcome.estimate.eigenvalues.size(); ++i)
        out << '"' << request.potential_text << "\"," << request.d << ',' << request.l << ','
            << fmt(request.kinetic_factor) << ',' << request.n << ',' << fmt(outcome.used.p)
            << ',' << fmt(outcome.used.t) << ',' << fmt(outcome.used.s) << ',' << i << ','
            << fmt(outcome.estimate.eigenvalues[i]) << ','
            << fmt(outcome.estimate.conditioning) << "\n";
}

// ---- scan ----------------------------------------------------------------

struct ScanAxis {
    std::string name;  // "s", "t", "p", or "a<exponent>" for a coefficient
    double lo = 0.0, hi = 0.0;
    int count = 0;
    bool log_spacing = false;
};

ScanAxis parse_scan(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() < 4 || parts.size() > 5)
        throw domain_error("--scan expects axis:lo:hi:count[:log]");
    ScanAxis axis;
    axis.name = parts[0];
    try {
        axis.lo = std::stod(parts[1]);
        axis.hi = std::stod(parts[2]);
        axis.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw domain_error("--scan: lo, hi, count must be numeric");
    }
    if (parts.size() == 5) {
        if (parts[4] != "log") throw domain_error("--scan: fifth field must be 'log'");
        axis.log_spacing = true;
    }
    if (axis.count < 2) throw domain_error("--scan: count must be >= 2");
    if (!(axis.lo < axis.hi)) throw domain_error("--scan: lo must be below hi");
    if (axis.log_spacing && !(axis.lo > 0.0 && axis.hi > 0.0))
        throw domain_error("--scan: log spacing needs positive endpoints");
    return axis;
}

double grid_point(const ScanAxis& axis, int i) {
    const double f = double(i) / (axis.count - 1);
    if (axis.log_spacing) return axis.lo * std::pow(axis.hi / axis.lo, f);
    return axis.lo + (axis.hi - axis.lo) * f;
}

int cmd_scan(const BoundRequest& base, const std::string& scan_text, std::ostream& out) {
    ScanAxis axis = parse_scan(scan_text);
    Potential potential = make_potential(base.potential_text, base.kinetic_factor);
    Channel channel(base.d, base.l);
    ParamTriple triple = suggest_initial(potential, channel);
    if (base.p) triple.p = *base.p;
    if (base.t) triple.t = *base.t;
    if (base.s) triple.s = *base.s;

    out << axis.name;
    for (int i = 0; i < base.n; ++i) out << ",E" << i;
    out << "\n";

    std::optional<MatrixBundle> bundle;
    if (axis.name == "s")
        bundle.emplace(potential, BasisSpec(base.n, triple.p, triple.t, 1.0), channel);

    auto evaluate = [&](double x) -> SpectrumEstimate {
        if (axis.name == "s") return upper_bounds(*bundle, x);
        if (axis.name == "t")
            return upper_bounds(potential, BasisSpec(base.n, triple.p, x, triple.s), channel);
        if (axis.name == "p")
            return upper_bounds(potential, BasisSpec(base.n, x, triple.t, triple.s), channel);
        if (axis.name.size() > 1 && axis.name[0] == 'a') {
            double exponent;
            try {
                exponent = std::stod(axis.name.substr(1));
            } catch (const std::exception&) {
                throw domain_error("--scan: coefficient axis must look like a<exponent>");
            }
            std::vector<PowerTerm> terms;
            for (const PowerTerm& term : potential.terms())
                if (term.exponent != exponent) terms.push_back(term);
            terms.push_back({x, exponent});
            return upper_bounds(Potential(terms, base.kinetic_factor),
                                BasisSpec(base.n, triple.p, triple.t, triple.s), channel);
        }
        throw domain_error("--scan: axis must be s, t, p, or a<exponent>");
    };

    for (int i = 0; i < axis.count; ++i) {
        const double x = grid_point(axis, i);
        SpectrumEstimate estimate = evaluate(x);
        out << fmt(x);
        for (double e : estimate.eigenvalues) out << ',' << fmt(e);
        out << "\n";
    }
    return 0;
}

// ---- oracle --------------------------------------------------------------

// Match V against the closed-form families; returns a report or nothing.
std::optional<json> recognize_exact(const Potential& potential, int l, int n_trunc) {
    std::vector<double> exponents;
    for (const PowerTerm& term : potential.terms()) exponents.push_back(term.exponent);
    auto only_within = [&](std::initializer_list<double> allowed) {
        return std::all_of(exponents.begin(), exponents.end(), [&](double q) {
            return std::find(allowed.begin(), allowed.end(), q) != allowed.end();
        });
    };
    json j;
    if (potential.coefficient(-6.0) > 0.0 && only_within({2.0, -4.0, -6.0}) &&
        potential.coefficient(2.0) > 0.0) {
        ExactConstraintReport report =
            anharmonic_exact(potential.coefficient(2.0), potential.coefficient(-4.0),
                             potential.coefficient(-6.0));
        j["family"] = "oscillator with r^-4 and r^-6 spikes";
        j["satisfied"] = report.satisfied;
        j["residual"] = report.residual;
        if (report.energy) j["energy"] = *report.energy;
        return j;
    }
    if (only_within({2.0, -2.0}) && potential.coefficient(2.0) == 1.0 &&
        potential.coefficient(-2.0) >= 0.0) {
        j["family"] = "oscillator with r^-2 spike";
        j["satisfied"] = true;
        j["residual"] = 0.0;
        j["energy"] = gk_energy(potential.coefficient(-2.0), n_trunc);
        return j;
    }
    if (only_within({-1.0, 1.0, 2.0}) && potential.coefficient(-1.0) < 0.0 &&
        potential.coefficient(2.0) > 0.0) {
        ExactConstraintReport report = coulomb_determinant(
            -potential.coefficient(-1.0), potential.coefficient(1.0),
            potential.coefficient(2.0), l, n_trunc);
        j["family"] = "Coulomb plus linear plus quadratic";
        j["satisfied"] = report.satisfied;
        j["residual"] = report.residual;
        if (report.energy) j["energy"] = *report.energy;
        return j;
    }
    return std::nullopt;
}

int cmd_oracle(const BoundRequest& request, bool exact, const std::string& output,
               std::ostream& out) {
    Potential potential = make_potential(request.potential_text, request.kinetic_factor);
    Channel channel(request.d, request.l);
    json j;
    j["command"] = "oracle";
    j["inputs"] = {{"potential", request.potential_text},
                   {"d", request.d},
                   {"l", request.l},
                   {"k", request.k},
                   {"kinetic_factor", request.kinetic_factor},
                   {"exact", exact}};
    if (exact) {
        std::optional<json> report = recognize_exact(potential, request.l, request.n - 1);
        if (!report) throw numeric_error("--exact: potential matches no recognized family");
        j.update(*report);
        if (output == "json") {
            out << j.dump() << "\n";
        } else {
            out << "family        " << j["family"].get<std::string>() << "\n";
            out << "satisfied     " << (j["satisfied"].get<bool>() ? "yes" : "no") << "\n";
            out << "residual      " << fmt(j["residual"].get<double>()) << "\n";
            if (j.contains("energy")) out << "energy        " << fmt(j["energy"].get<double>()) << "\n";
        }
        return 0;
    }
    const double energy = integrate_radial(potential, channel, request.k);
    j["energy"] = energy;
    if (output == "json")
        out << j.dump() << "\n";
    else if (output == "csv")
        out << "potential,d,l,k,energy\n\"" << request.potential_text << "\"," << request.d
            << ',' << request.l << ',' << request.k << ',' << fmt(energy) << "\n";
    else
        out << "E[" << request.k << "]          " << fmt(energy) << "\n";
    return 0;
}

// ---- reproduce -----------------------------------------------------------

struct RowReport {
    const FixtureRow* row;
    double computed = 0.0;
    std::optional<double> oracle;
    bool passed = true;
    std::string note;
};

RowReport check_row(const FixtureRow& row, std::optional<double> tolerance_override,
                    bool with_oracle) {
    BoundRequest request;
    request.potential_text = row.input("V");
    request.d = std::stoi(row.input_or("d", "3"));
    request.l = std::stoi(row.input_or("l", "0"));
    request.n = std::stoi(row.input("n"));
    request.k = std::stoi(row.input_or("k", "0"));
    request.kinetic_factor = std::stod(row.input_or("kf", "1"));
    request.optimize = "full";
    if (row.inputs.count("p")) request.p = std::stod(row.input("p"));
    if (row.inputs.count("t")) request.t = std::stod(row.input("t"));
    if (row.inputs.count("s")) request.s = std::stod(row.input("s"));

    RowReport report{&row};
    BoundOutcome outcome = [&] {
        try {
            return run_bound(request);
        } catch (const numeric_error&) {
            // some printed starting points sit past the conditioning limit;
            // fall back to the suggested starting point for the same problem
            if (!request.p && !request.t && !request.s) throw;
            BoundRequest retry = request;
            retry.p.reset();
            retry.t.reset();
            retry.s.reset();
            return run_bound(retry);
        }
    }();
    report.computed = outcome.estimate.eigenvalues[std::size_t(request.k)];
    if (with_oracle) {
        Potential potential = make_potential(request.potential_text, request.kinetic_factor);
        report.oracle = integrate_radial(potential, Channel(request.d, request.l), request.k);
    }

    const double tol = tolerance_override ? *tolerance_override : row.tolerance(1e-5);
    const double diff = report.computed - row.published;
    bool ok;
    if (row.has_flag("upper"))
        ok = diff <= tol;
    else
        ok = std::fabs(diff) <= tol;
    if (report.oracle && report.computed < *report.oracle - 1e-7) {
        ok = false;
        report.note = "below oracle";
    }
    if (row.has_flag("typo")) {
        report.note = report.note.empty() ? "typo" : report.note + ", typo";
        ok = true;  // known misprints are reported, never fatal
    }
    report.passed = ok;
    return report;
}

std::string row_label(const FixtureRow& row) {
    std::string label;
    for (const auto& [key, value] : row.inputs) {
        if (key == "V" || key == "p" || key == "t" || key == "s") continue;
        if (!label.empty()) label += ' ';
        label += key + "=" + value;
    }
    return label;
}

int cmd_reproduce(const std::string& table_id, const std::vector<std::string>& only,
                  std::optional<double> tolerance_override, bool with_oracle,
                  const std::string& output, std::ostream& out) {
    std::vector<const FixtureRow*> selected;
    for (const FixtureRow& row : fixture_rows()) {
        if (row.table_id != table_id) continue;
        bool keep = true;
        for (const std::string& filter : only) {
            const auto eq = filter.find('=');
            if (eq == std::string::npos) throw domain_error("--only expects key=value");
            if (row.input_or(filter.substr(0, eq), "") != filter.substr(eq + 1)) keep = false;
        }
        if (keep) selected.push_back(&row);
    }
    if (selected.empty()) {
        std::string known;
        for (const std::string& id : fixture_table_ids()) known += " " + id;
        throw domain_error("no fixture rows selected; known tables:" + known);
    }

    std::vector<RowReport> reports;
    for (const FixtureRow* row : selected)
        reports.push_back(check_row(*row, tolerance_override, with_oracle));

    int failures = 0;
    if (output == "json") {
        json j;
        j["command"] = "reproduce";
        j["table"] = table_id;
        j["rows"] = json::array();
        for (const RowReport& r : reports) {
            json jr = {{"inputs", r.row->inputs},
                       {"computed", r.computed},
                       {"published", r.row->published},
                       {"cite", r.row->cite},
                       {"passed", r.passed}};
            if (r.oracle) jr["oracle"] = *r.oracle;
            if (!r.note.empty()) jr["note"] = r.note;
            if (!r.passed) ++failures;
            j["rows"].push_back(jr);
        }
        out << j.dump() << "\n";
    } else {
        for (const RowReport& r : reports) {
            std::ostringstream line;
            line << std::left << std::setw(44) << row_label(*r.row) << "  computed "
                 << std::setw(16) << fmt(r.computed) << "  published " << std::setw(13)
                 << fmt(r.row->published);
            if (r.oracle) line << "  oracle " << std::setw(16) << fmt(*r.oracle);
            line << "  " << (r.passed ? "ok" : "FAIL");
            if (!r.note.empty()) line << " [" << r.note << "]";
            out << line.str() << "\n";
            if (!r.passed) ++failures;
        }
        out << reports.size() << " rows, " << failures << " failed ("
            << reports.front().row->cite << ")\n";
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"variational upper bounds for radial Schrodinger operators"};
    app.require_subcommand(1);

    BoundRequest request;
    std::string output = "human";
    std::string from_json_path;
    std::string scan_text;
    std::string table_id;
    std::vector<std::string> only;
    std::optional<double> tolerance_override;
    bool exact = false;
    bool no_oracle = false;

    auto add_common = [&](CLI::App* cmd, bool need_potential) {
        CLI::Option* pot =
            cmd->add_option("-V,--potential", request.potential_text, "potential expression");
        if (need_potential) pot->required();
        cmd->add_option("-d", request.d, "spatial dimension (>= 2)");
        cmd->add_option("-l", request.l, "angular momentum (>= 0)");
        cmd->add_option("-n", request.n, "basis size");
        cmd->add_option("-k", request.k, "eigenvalue index within the channel");
        cmd->add_option("--kinetic-factor", request.kinetic_factor,
                        "kinetic prefactor, 1 or 0.5");
        cmd->add_option("-p", request.p, "basis power");
        cmd->add_option("-t", request.t, "basis exponent shift");
        cmd->add_option("-s", request.s, "basis scale");
        cmd->add_option("--output", output, "human, json, or csv")
            ->check(CLI::IsMember({"human", "json", "csv"}));
    };

    CLI::App* bound = app.add_subcommand("bound", "compute variational upper bounds");
    add_common(bound, false);
    bound->add_option("--optimize", request.optimize, "none, scale, or full")
        ->check(CLI::IsMember({"none", "scale", "full"}));
    bound->add_option("--from-json", from_json_path, "rerun a previous run's JSON output");

    CLI::App* scan = app.add_subcommand("scan", "eigenvalues along one parameter axis");
    add_common(scan, true);
    scan->add_option("--scan", scan_text, "axis:lo:hi:count[:log]; axis s, t, p, or a<exp>")
        ->required();

    CLI::App* oracle = app.add_subcommand("oracle", "independent eigenvalue references");
    add_common(oracle, true);
    oracle->add_flag("--exact", exact, "recognize a closed-form family instead of integrating");

    CLI::App* reproduce = app.add_subcommand("reproduce", "check embedded published values");
    reproduce->add_option("--table", table_id, "fixture table id, e.g. table5")->required();
    reproduce->add_option("--only", only, "filter rows by key=value (repeatable)");
    reproduce->add_option("--tolerance", tolerance_override, "override row tolerances");
    reproduce->add_flag("--no-oracle", no_oracle, "skip the shooting-method column");
    reproduce->add_option("--output", output, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::stringstream capture;
        const int code = app.exit(e, out, capture);
        err << capture.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (bound->parsed()) {
            if (!from_json_path.empty())
                request = bound_from_json(from_json_path);
            else if (request.potential_text.empty())
                throw domain_error("bound: give --potential or --from-json");
            BoundOutcome outcome = run_bound(request);
            if (output == "json")
                out << bound_to_json(request, outcome).dump() << "\n";
            else if (output == "csv")
                print_bound_csv(out, request, outcome);
            else
                print_bound_human(out, request, outcome);
            return 0;
        }
        if (scan->parsed()) return cmd_scan(request, scan_text, out);
        if (oracle->parsed()) return cmd_oracle(request, exact, output, out);
        if (reproduce->parsed())
            return cmd_reproduce(table_id, only, tolerance_override, !no_oracle, output, out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace varbound::cli
