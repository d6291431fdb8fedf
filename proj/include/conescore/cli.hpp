#pragma once

// Command layer behind the conescore executable. Kept in a header so the
// commands can be driven in-process by tests.

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "conescore.hpp"

namespace conescore::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "conescore";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_input = 2,
    exit_resource_cap = 3,
    exit_verification = 4,
};

struct Options {
    std::string command;  // decompose | rank | design | verify
    std::string in;
    std::string out;      // empty or "-" writes to stdout
    std::string kind = "all";
    std::optional<std::string> objective;
    std::optional<std::string> restriction;
    std::optional<double> tol_rank;
    std::optional<double> tol_feas;
    std::optional<double> tol_cone;
    std::optional<std::size_t> max_lineality_dim;
    bool csv = false;
    bool reproducible = false;
};

// ---------------------------------------------------------------- encoding

inline json to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline json to_json(const Tolerances& t) {
    return {{"rank", t.rank_tol}, {"feas", t.feas_tol}, {"cone", t.cone_tol}};
}

inline json to_json(const VerificationReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) {
        json e = {{"index", x.first}};
        if (x.second != Violation::none) e["other"] = x.second;
        e["magnitude"] = x.magnitude;
        v.push_back(std::move(e));
    }
    return {{"check", r.check_name},     {"passed", r.passed},   {"strength", r.strength},
            {"checked", r.checked_pairs}, {"violations", v}};
}

inline json to_json(const RankResult& r) {
    json j = {{"value", r.value}, {"relation", to_string(r.relation)}, {"witness", to_json(r.witness.matrix())}};
    if (r.subset_indices) j["subset_indices"] = *r.subset_indices;
    return j;
}

inline Matrix matrix_from_json(const json& j, const char* what) {
    if (j.is_object()) {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        const auto data = j.at("data").get<std::vector<double>>();
        if (data.size() != rows * cols) throw Error(ErrorKind::invalid_input, std::string(what) + ": data length differs from rows*cols");
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < cols; ++c) m(i, c) = data[i * cols + c];
        if (!m.is_finite()) throw Error(ErrorKind::invalid_input, std::string(what) + ": non-finite entry");
        return m;
    }
    if (!j.is_array()) throw Error(ErrorKind::invalid_input, std::string(what) + ": expected a list of rows");
    return Matrix::from_rows(j.get<std::vector<Vector>>());
}

// ---------------------------------------------------------------- input

struct Problem {
    std::optional<Matrix> generators;
    std::optional<std::vector<Vector>> samples;
    std::optional<Restriction> restriction;
    std::optional<Objective> objective;
    std::optional<Matrix> design_A;
    bool relint_nonempty = false;
    Tolerances tol;
    EnumerationCap cap;
};

inline std::vector<Vector> parse_csv(std::istream& in) {
    std::vector<Vector> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        Vector row;
        bool ok = true;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) {
                ok = false;
                break;
            }
            double v = 0.0;
            const auto res = std::from_chars(cell.data() + b, cell.data() + e + 1, v);
            if (res.ec != std::errc{} || res.ptr != cell.data() + e + 1 || !std::isfinite(v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (rows.empty() && lineno == 1) continue;  // header
            throw Error(ErrorKind::invalid_input, "csv line " + std::to_string(lineno) + ": not a row of numbers");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorKind::invalid_input, "csv line " + std::to_string(lineno) + ": row length differs");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Problem load_problem(const Options& opt) {
    std::ifstream f(opt.in);
    if (!f) throw Error(ErrorKind::invalid_input, "cannot open input file '" + opt.in + "'");

    Problem p;
    if (opt.csv) {
        p.samples = parse_csv(f);
    } else {
        json j;
        try {
            j = json::parse(f);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::invalid_input, std::string("malformed input: ") + e.what());
        }
        if (!j.is_object()) throw Error(ErrorKind::invalid_input, "input must be an object");
        try {
            if (j.contains("generators")) p.generators = matrix_from_json(j["generators"], "generators");
            if (j.contains("metrics_samples")) p.samples = j["metrics_samples"].get<std::vector<Vector>>();
            if (j.contains("restriction")) p.restriction = parse_restriction(j["restriction"].get<std::string>());
            if (j.contains("objective")) p.objective = parse_objective(j["objective"].get<std::string>());
            if (j.contains("assert_relint_nonempty")) p.relint_nonempty = j["assert_relint_nonempty"].get<bool>();
            if (j.contains("tolerances")) {
                const auto& t = j["tolerances"];
                if (t.contains("rank")) p.tol.rank_tol = t["rank"].get<double>();
                if (t.contains("feas")) p.tol.feas_tol = t["feas"].get<double>();
                if (t.contains("cone")) p.tol.cone_tol = t["cone"].get<double>();
            }
            if (j.contains("max_lineality_dim")) p.cap.max_lineality_dim = j["max_lineality_dim"].get<std::size_t>();
            if (j.contains("design")) {
                const auto& d = j["design"];
                p.design_A = matrix_from_json(d.at("A"), "design.A");
                if (d.contains("restriction")) p.restriction = parse_restriction(d["restriction"].get<std::string>());
            }
        } catch (const json::exception& e) {
            throw Error(ErrorKind::invalid_input, std::string("malformed input: ") + e.what());
        }
    }

    if (p.samples) {
        if (p.samples->empty()) throw Error(ErrorKind::invalid_input, "no samples");
        for (const auto& s : *p.samples) {
            if (s.size() != p.samples->front().size()) throw Error(ErrorKind::invalid_input, "samples differ in dimension");
            for (double v : s)
                if (!std::isfinite(v)) throw Error(ErrorKind::invalid_input, "sample has non-finite entries");
        }
        if (p.samples->front().empty()) throw Error(ErrorKind::invalid_input, "samples have dimension 0");
    }

    if (opt.restriction) p.restriction = parse_restriction(*opt.restriction);
    if (opt.objective) p.objective = parse_objective(*opt.objective);
    if (opt.tol_rank) p.tol.rank_tol = *opt.tol_rank;
    if (opt.tol_feas) p.tol.feas_tol = *opt.tol_feas;
    if (opt.tol_cone) p.tol.cone_tol = *opt.tol_cone;
    if (opt.max_lineality_dim) p.cap.max_lineality_dim = *opt.max_lineality_dim;
    p.tol.validate();
    return p;
}

// ---------------------------------------------------------------- commands

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json header(const Options& opt, const Problem& p) {
    json j;
    j["schema_version"] = schema_version;
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["command"] = opt.command;
    json args = json::object();
    if (opt.command == "rank") args["kind"] = opt.kind;
    if (p.objective) args["objective"] = to_string(*p.objective);
    if (p.restriction) args["restriction"] = to_string(*p.restriction);
    args["max_lineality_dim"] = p.cap.max_lineality_dim;
    j["args"] = std::move(args);
    j["tolerances"] = to_json(p.tol);
    if (!opt.reproducible) j["timestamp"] = utc_timestamp();
    return j;
}

inline GeneratorSet require_generators(const Problem& p) {
    if (!p.generators) throw Error(ErrorKind::invalid_input, "input has no 'generators'");
    if (p.generators->cols() == 0) throw Error(ErrorKind::invalid_input, "generators have dimension 0");
    return GeneratorSet::from_matrix(*p.generators, p.tol);
}

inline const std::vector<Vector>& require_samples(const Problem& p) {
    if (!p.samples) throw Error(ErrorKind::invalid_input, "input has no 'metrics_samples'");
    return *p.samples;
}

inline int cmd_decompose(const Options&, const Problem& p, json& out) {
    const auto w = require_generators(p);
    const auto dec = decompose(w, p.tol);
    out["generator_count"] = w.size();
    out["dropped_zero_rows"] = w.dropped_zero_rows();
    out["decomposition"] = {
        {"ell", dec.ell},
        {"pointed_count", dec.pointed_generators.size()},
        {"lineality_basis", to_json(dec.lineality_basis)},
        {"lineal_rows", dec.lineal_generators.sources()},
        {"pointed_rows", dec.pointed_generators.sources()},
        {"pointed_generators", to_json(dec.pointed_generators.matrix())},
    };
    return exit_ok;
}

inline int cmd_rank(const Options& opt, const Problem& p, json& out) {
    const auto w = require_generators(p);
    const bool all = opt.kind == "all";
    if (!all && opt.kind != "csr" && opt.kind != "cgr" && opt.kind != "cr")
        throw Error(ErrorKind::invalid_input, "unknown rank kind '" + opt.kind + "'");

    const std::size_t rank = numeric_rank(w.matrix(), p.tol);
    const auto dec = decompose(w, p.tol);
    out["generator_count"] = w.size();
    out["dropped_zero_rows"] = w.dropped_zero_rows();
    out["numeric_rank"] = rank;
    out["decomposition"] = {{"ell", dec.ell}, {"pointed_count", dec.pointed_generators.size()}};

    json ranks = json::object();
    std::optional<std::size_t> csr, cgr, cr;
    if (all || opt.kind == "csr") {
        auto r = cone_subset_rank(w, p.tol, p.cap);
        // Report witness rows by their position in the input file.
        for (auto& i : *r.subset_indices) i = w.source(i);
        csr = r.value;
        ranks["csr"] = to_json(r);
    }
    if (all || opt.kind == "cgr") {
        const auto r = cone_generating_rank(w, p.tol);
        cgr = r.value;
        ranks["cgr"] = to_json(r);
    }
    if (all || opt.kind == "cr") {
        const auto r = cone_rank(w, p.tol);
        cr = r.value;
        ranks["cr"] = to_json(r);
    }
    out["ranks"] = std::move(ranks);

    if (all) {
        const bool holds = w.size() >= *csr && *csr >= *cgr && *cgr >= *cr && *cr >= rank;
        out["chain_inequality"] = {{"holds", holds}, {"m", w.size()}, {"csr", *csr}, {"cgr", *cgr}, {"cr", *cr}, {"rank", rank}};
        if (!holds) return exit_verification;
    }
    return exit_ok;
}

inline json design_json(const ScoreDesign& d) {
    json j;
    j["k"] = d.k;
    j["restriction"] = to_string(d.restriction);
    j["objective"] = to_string(d.objective);
    j["A"] = to_json(d.A);
    j["V"] = to_json(d.V);
    if (d.rank_used) j["rank_used"] = {{"kind", to_string(d.rank_used->kind)}, {"value", d.rank_used->value},
                                       {"relation", to_string(d.rank_used->relation)}};
    return j;
}

inline std::vector<VerificationReport> run_checks(const ScoreDesign& d, const std::vector<Vector>& samples,
                                                  const AffineHull& hull, bool with_restriction, const Tolerances& tol) {
    std::vector<VerificationReport> reps;
    if (d.objective != Objective::optimality) reps.push_back(check_improvement(d, samples, tol));
    if (d.objective != Objective::improvement) reps.push_back(check_optimality(d, samples, tol));
    if (with_restriction) reps.push_back(check_restriction(d, hull, tol));
    return reps;
}

inline int finish_checks(const std::vector<VerificationReport>& reps, json& out) {
    json arr = json::array();
    bool ok = true;
    for (const auto& r : reps) {
        arr.push_back(to_json(r));
        ok = ok && r.passed;
    }
    out["verification"] = std::move(arr);
    out["verification_passed"] = ok;
    return ok ? exit_ok : exit_verification;
}

inline int cmd_design(const Options&, const Problem& p, json& out) {
    const auto& samples = require_samples(p);
    if (!p.objective) throw Error(ErrorKind::invalid_input, "design needs an objective");
    if (!p.restriction) throw Error(ErrorKind::invalid_input, "design needs a restriction");
    const auto space = MetricSpace::from_samples(samples, p.tol, p.relint_nonempty);
    const auto d = design(space, *p.objective, *p.restriction, p.tol, p.cap);

    out["hull"] = {{"dim", space.hull.dim()}, {"anchor", space.hull.anchor}};
    out.update(design_json(d));
    out["minimality_certified"] = d.minimality_certified;
    out["warnings"] = d.warnings;
    return finish_checks(run_checks(d, samples, space.hull, true, p.tol), out);
}

inline int cmd_verify(const Options&, const Problem& p, json& out) {
    const auto& samples = require_samples(p);
    if (!p.design_A) throw Error(ErrorKind::invalid_input, "verify needs a design block with A");
    const Matrix& a = *p.design_A;
    if (a.cols() != samples.front().size())
        throw Error(ErrorKind::dimension_mismatch, "design.A has " + std::to_string(a.cols()) + " columns but samples have dimension " +
                                                       std::to_string(samples.front().size()));
    const auto hull = compute_affine_hull(samples, p.tol);

    ScoreDesign d;
    d.A = a;
    d.k = a.rows();
    d.objective = p.objective.value_or(Objective::both);
    d.restriction = p.restriction.value_or(Restriction::linear);
    d.V = a * hull.basis;

    out["k"] = d.k;
    out["objective"] = to_string(d.objective);
    if (p.restriction) out["restriction"] = to_string(*p.restriction);
    out["minimality_certified"] = false;
    return finish_checks(run_checks(d, samples, hull, p.restriction.has_value(), p.tol), out);
}

inline void write_output(const Options& opt, const json& out) {
    const std::string text = out.dump(2) + "\n";
    if (opt.out.empty() || opt.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::invalid_input, "cannot open output file '" + opt.out + "'");
    f << text;
}

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_input:
        case ErrorKind::dimension_mismatch: return exit_input;
        case ErrorKind::resource_cap: return exit_resource_cap;
        case ErrorKind::precondition:
        case ErrorKind::numerical: return exit_internal;
    }
    return exit_internal;
}

/// Runs one command end to end. The result file is written whenever the
/// command itself completed, including on verification failure.
inline int run(const Options& opt, std::ostream& err = std::cerr) {
    try {
        const Problem p = load_problem(opt);
        json out = header(opt, p);
        int code = exit_ok;
        if (opt.command == "decompose")
            code = cmd_decompose(opt, p, out);
        else if (opt.command == "rank")
            code = cmd_rank(opt, p, out);
        else if (opt.command == "design")
            code = cmd_design(opt, p, out);
        else if (opt.command == "verify")
            code = cmd_verify(opt, p, out);
        else
            throw Error(ErrorKind::invalid_input, "unknown command '" + opt.command + "'");
        write_output(opt, out);
        if (code == exit_verification) err << tool_name << ": verification failed\n";
        return code;
    } catch (const Error& e) {
        err << tool_name << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << tool_name << ": internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace conescore::cli
