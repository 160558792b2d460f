#include "hyperdeg/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperdeg/beta_solver.hpp"
#include "hyperdeg/enumerate.hpp"
#include "hyperdeg/exact.hpp"
#include "hyperdeg/identities.hpp"
#include "hyperdeg/json_io.hpp"
#include "hyperdeg/matrix.hpp"
#include "hyperdeg/models.hpp"
#include "hyperdeg/parallel.hpp"

namespace hyperdeg {

namespace {

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool pretty = false;
};

std::string quote_arg(const std::string& a) {
    if (!a.empty() && a.find_first_of(" \t\"'{}[],$\\") == std::string::npos) return a;
    std::string q = "'";
    for (char c : a) {
        if (c == '\'')
            q += "'\\''";
        else
            q += c;
    }
    return q + "'";
}

// Flattened "key  value" rows; nested keys joined with dots.
void pretty_rows(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            pretty_rows(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        return;
    }
    if (j.is_array()) {
        bool scalar = true;
        for (const auto& v : j) scalar = scalar && !v.is_structured();
        if (!scalar) {
            for (std::size_t i = 0; i < j.size(); ++i) pretty_rows(j[i], prefix + "[" + std::to_string(i) + "]", rows);
            return;
        }
    }
    rows.emplace_back(prefix, dump(j));
}

void emit(Context& ctx, const Json& j) {
    if (!ctx.pretty) {
        ctx.out << dump(j) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    pretty_rows(j, "", rows);
    std::size_t w = 0;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    for (const auto& [k, v] : rows) ctx.out << k << std::string(w + 2 - k.size(), ' ') << v << '\n';
}

void warn_flags(Context& ctx, const DerivedParams& p) {
    const std::pair<const char*, bool> flags[] = {{"edge_size_interior", p.flags.edge_size_interior},
                                                  {"density_interior", p.flags.density_interior},
                                                  {"first_quadrant", p.flags.first_quadrant},
                                                  {"main_inequality", p.flags.main_inequality},
                                                  {"near_regular", p.flags.near_regular}};
    for (const auto& [name, ok] : flags)
        if (!ok) ctx.err << "warning: hypothesis " << name << " does not hold\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::ParseError, "cannot write '" + path + "'");
    f << text;
}

std::string big_str(const BigInt& v) { return v.str(); }

double big_ln(const BigInt& v) {
    if (v <= 0) return -INFINITY;
    const std::string s = v.str();
    const std::size_t keep = std::min<std::size_t>(s.size(), 18);
    return std::log(std::stod(s.substr(0, keep))) + static_cast<double>(s.size() - keep) * std::log(10.0);
}

// ---- subcommands ----

struct SolveArgs {
    std::string input;
    std::string seed = "auto";
    double tol = 1e-10;
    int max_iter = 100;
    bool dump_field = false;
    std::string dump_matrix;
};

int cmd_solve(Context& ctx, const SolveArgs& a) {
    const DegreeSequence seq = load_instance(a.input);
    const DerivedParams p = validate(seq);
    warn_flags(ctx, p);
    SolveOptions opt;
    opt.tol = a.tol;
    opt.max_iter = a.max_iter;
    const SolveReport rep = solve(seq, parse_seed(a.seed), opt);
    Json j = to_json(rep);
    if (a.dump_field) j["field"] = to_json(field_summary(rep.beta_star, seq.n, seq.r));
    if (!a.dump_matrix.empty()) write_file(a.dump_matrix, to_csv(assemble_A(rep.beta_star, seq.n, seq.r).entries));
    emit(ctx, j);
    return 0;
}

struct CountArgs {
    std::string input;
    std::string method = "general";
    std::string beta = "zero";
    bool json = false;
};

int cmd_count(Context& ctx, const CountArgs& a) {
    const DegreeSequence seq = load_instance(a.input);
    const DerivedParams p = validate(seq);
    if (a.method == "exact") {
        const ExactCount ec = exact_count(seq);
        if (!a.json && !ctx.pretty) {
            ctx.out << big_str(ec.value) << '\n';
            return 0;
        }
        const double ln = big_ln(ec.value);
        Json j;
        j["count"] = big_str(ec.value);
        j["ln"] = ln;
        j["log10"] = ln / std::log(10.0);
        j["method"] = "exact";
        j["transitions"] = ec.transitions;
        j["peak_states"] = ec.peak_states;
        emit(ctx, j);
        return 0;
    }
    if (a.method == "quadrature") {
        BetaVector beta(std::vector<double>(static_cast<std::size_t>(seq.n), 0.0));
        if (a.beta == "solved")
            beta = solve(seq).beta_star;
        else if (a.beta != "zero")
            fail(ErrorKind::ParseError, "--beta must be zero or solved");
        const Quadrature q = cauchy_quadrature(seq, beta);
        Json j;
        j["value"] = q.value;
        j["imag"] = q.imag;
        j["points"] = q.points;
        j["M"] = q.M;
        j["beta"] = a.beta;
        j["method"] = "quadrature";
        emit(ctx, j);
        return 0;
    }
    warn_flags(ctx, p);
    LogEstimate est;
    if (a.method == "general")
        est = count_general(seq);
    else if (a.method == "near-regular")
        est = estimate_near_regular(seq);
    else if (a.method == "corollary")
        est = estimate_corollary(seq);
    else
        fail(ErrorKind::ParseError, "unknown method '" + a.method + "'");
    emit(ctx, to_json(est));
    return 0;
}

struct ModelsArgs {
    std::string input;
    std::string compare = "d-vs-t,b-vs-d,klw";
    std::string normalizer = "dp";
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_models(Context& ctx, const ModelsArgs& a) {
    const DegreeSequence seq = load_instance(a.input);
    const DerivedParams p = validate(seq);
    warn_flags(ctx, p);
    ModelOptions mo;
    if (a.normalizer == "dp")
        mo.normalizer = NormalizerMethod::Dp;
    else if (a.normalizer == "clt")
        mo.normalizer = NormalizerMethod::Clt;
    else
        fail(ErrorKind::ParseError, "--normalizer must be dp or clt");

    const ModelPoint B = prob_model(seq, Model::B, mo);
    const ModelPoint T = prob_model(seq, Model::T, mo);
    ModelPoint D;
    try {
        D = prob_model(seq, Model::DExact, mo);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        ctx.err << "warning: exact count over budget, using the asymptotic count\n";
        D = prob_model(seq, Model::DAsymptotic, mo);
    }
    Json j;
    j["instance"] = to_json(seq);
    j["models"] = Json::array({to_json(D), to_json(B), to_json(T)});
    Json cmp = Json::array();
    for (const auto& name : split_csv(a.compare)) {
        const RatioPair pair = parse_pair(name);
        Json c = to_json(predicted_ratio(seq, pair));
        const double other = pair == RatioPair::DvsT ? T.ln_prob : B.ln_prob;
        c["measured_ln_ratio"] = D.ln_prob - other;
        c["difference"] = D.ln_prob - other - c["predicted_ln_ratio"].get<double>();
        cmp.push_back(c);
    }
    j["comparisons"] = cmp;
    emit(ctx, j);
    return 0;
}

struct SampleArgs {
    int n = 0;
    int r = 0;
    std::int64_t m = 0;
    std::uint64_t seed = 0;
    std::uint64_t count = 1;
    std::string csv;
};

int cmd_sample(Context& ctx, const SampleArgs& a) {
    const auto batch = sample_batch(a.n, a.r, a.m, a.seed, a.count);
    if (!a.csv.empty()) {
        std::string text;
        for (int j = 1; j <= a.n; ++j) text += (j > 1 ? ",d_" : "d_") + std::to_string(j);
        text += '\n';
        for (const auto& row : batch) {
            for (std::size_t j = 0; j < row.size(); ++j) text += (j ? "," : "") + std::to_string(row[j]);
            text += '\n';
        }
        write_file(a.csv, text);
    }
    Json j;
    j["n"] = a.n;
    j["r"] = a.r;
    j["m"] = a.m;
    j["seed"] = a.seed;
    j["samples"] = batch;
    emit(ctx, j);
    return 0;
}

struct AuditArgs {
    std::string input;
    double delta_hat = -1;
};

int cmd_audit(Context& ctx, const AuditArgs& a) {
    const DegreeSequence seq = load_instance(a.input);
    warn_flags(ctx, validate(seq));
    const SymmetryAudit audit = symmetry_audit(seq);
    const BetaVector& beta = audit.quadrants.front().report.beta_star;
    const double dh = a.delta_hat >= 0 ? a.delta_hat : beta.spread() * seq.r;
    Json j;
    j["symmetry"] = to_json(audit);
    j["bounds"] = to_json(bound_suite(beta, seq.n, seq.r, dh));
    emit(ctx, j);
    return 0;
}

struct SelftestArgs {
    std::string which;
    std::uint64_t seed = 1;
    int trials = 50;
};

int selftest_identities(Context& ctx, const SelftestArgs& a) {
    const auto rows = run_identity_suite(a.seed, a.trials);
    bool ok = true;
    Json list = Json::array();
    for (const auto& row : rows) {
        ok = ok && row.failures == 0;
        list.push_back(Json{{"family", family_name(row.family)},
                            {"trials", row.trials},
                            {"failures", row.failures},
                            {"passed", row.failures == 0}});
    }
    if (ctx.pretty) {
        for (const auto& row : rows)
            ctx.out << (row.failures == 0 ? "PASS  " : "FAIL  ") << family_name(row.family) << "  " << row.trials
                    << " trials, " << row.failures << " failures\n";
    } else {
        emit(ctx, Json{{"suite", "identities"}, {"passed", ok}, {"families", list}});
    }
    return ok ? 0 : 5;
}

int selftest_bounds(Context& ctx, const SelftestArgs& a) {
    const int cases = a.trials > 0 ? a.trials : 100;
    std::map<std::string, std::pair<int, int>> tally;  // name -> (checked, failed)
    bool ok = true;
    for (int i = 0; i < cases; ++i) {
        const BoundCase c = random_bound_case(a.seed, static_cast<std::uint64_t>(i));
        const BoundReport rep = bound_suite(c.beta, c.n, c.r, c.delta_hat);
        for (const auto& chk : rep.checks) {
            if (!chk.applicable) continue;
            auto& t = tally[chk.name];
            ++t.first;
            if (!chk.passed) {
                ++t.second;
                ok = false;
            }
        }
    }
    Json list = Json::array();
    for (const auto& [name, t] : tally)
        list.push_back(Json{{"check", name}, {"cases", t.first}, {"failures", t.second}, {"passed", t.second == 0}});
    if (ctx.pretty) {
        for (const auto& [name, t] : tally)
            ctx.out << (t.second == 0 ? "PASS  " : "FAIL  ") << name << "  " << t.first << " cases, " << t.second
                    << " failures\n";
    } else {
        emit(ctx, Json{{"suite", "bounds"}, {"passed", ok}, {"checks", list}});
    }
    return ok ? 0 : 5;
}

int selftest_oracle(Context& ctx, const SelftestArgs&) {
    Json list = Json::array();
    bool ok = true;
    const std::tuple<int, int, int> totals[] = {{4, 3, 4}, {5, 3, 4}, {6, 3, 3}};
    for (const auto& [n, r, mmax] : totals) {
        for (int m = 0; m <= mmax; ++m) {
            const TotalIdentity t = total_identity_check(n, r, m);
            ok = ok && t.holds;
            list.push_back(Json{{"check", "total n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                              " m=" + std::to_string(m)},
                                {"passed", t.holds}});
        }
    }
    // Quadrature against the exact count for a few n = 4, r = 3 sequences.
    const std::vector<std::vector<std::int64_t>> seqs = {{1, 1, 1, 0}, {2, 2, 1, 1}, {2, 1, 2, 1}, {3, 3, 3, 3}};
    for (const auto& d : seqs) {
        const DegreeSequence s{4, 3, d};
        const double exact = static_cast<double>(exact_count(s).value);
        const Quadrature q = cauchy_quadrature(s, BetaVector(std::vector<double>(4, 0.0)));
        const double err = exact == 0 ? std::abs(q.value) : std::abs(q.value - exact) / exact;
        const bool pass = err <= 1e-8;
        ok = ok && pass;
        list.push_back(Json{{"check", "quadrature " + dump(Json(d))}, {"passed", pass}, {"error", err}});
    }
    if (ctx.pretty) {
        for (const auto& row : list)
            ctx.out << (row["passed"].get<bool>() ? "PASS  " : "FAIL  ") << row["check"].get<std::string>() << '\n';
    } else {
        emit(ctx, Json{{"suite", "oracle"}, {"passed", ok}, {"checks", list}});
    }
    return ok ? 0 : 5;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx{out, err};
    {
        std::string echo = "# invocation: hyperdeg";
        for (const auto& a : args) echo += " " + quote_arg(a);
        err << echo << '\n';
    }

    CLI::App app{"hyperdeg: degree sequences of uniform hypergraphs"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_flag("--pretty", ctx.pretty, "human-readable tables instead of JSON");
    app.add_option("--threads", threads, "worker cap (0 = available parallelism)");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "solve the beta system");
    solve_cmd->add_option("--input", sa.input, "instance file or inline JSON")->required();
    solve_cmd->add_option("--seed", sa.seed, "auto|regular|product|near-regular");
    solve_cmd->add_option("--tol", sa.tol, "residual tolerance relative to max(d,1)");
    solve_cmd->add_option("--max-iter", sa.max_iter, "Newton iteration cap");
    solve_cmd->add_flag("--dump-field", sa.dump_field, "include the lambda field summary");
    solve_cmd->add_option("--dump-matrix", sa.dump_matrix, "write A(beta*) as CSV to this path");

    CountArgs ca;
    auto* count_cmd = app.add_subcommand("count", "count or estimate hypergraphs with the degree sequence");
    count_cmd->add_option("--input", ca.input, "instance file or inline JSON")->required();
    count_cmd->add_option("--method", ca.method, "general|near-regular|corollary|exact|quadrature");
    count_cmd->add_option("--beta", ca.beta, "quadrature centre: zero|solved");
    count_cmd->add_flag("--json", ca.json, "JSON output for exact counts");

    ModelsArgs ma;
    auto* models_cmd = app.add_subcommand("models", "degree-sequence probabilities under the three models");
    models_cmd->add_option("--input", ma.input, "instance file or inline JSON")->required();
    models_cmd->add_option("--compare", ma.compare, "comma list of d-vs-t,b-vs-d,klw");
    models_cmd->add_option("--normalizer", ma.normalizer, "dp|clt");

    SampleArgs sm;
    auto* sample_cmd = app.add_subcommand("sample", "degree sequences of uniform random hypergraphs");
    sample_cmd->add_option("-n", sm.n, "vertices")->required();
    sample_cmd->add_option("-r", sm.r, "edge size")->required();
    sample_cmd->add_option("-m", sm.m, "edges")->required();
    sample_cmd->add_option("--seed", sm.seed, "RNG seed");
    sample_cmd->add_option("--count", sm.count, "number of samples");
    sample_cmd->add_option("--csv", sm.csv, "also write samples as CSV");

    AuditArgs aa;
    auto* audit_cmd = app.add_subcommand("audit", "four-quadrant symmetry audit and bound suite");
    audit_cmd->add_option("--input", aa.input, "instance file or inline JSON")->required();
    audit_cmd->add_option("--delta-hat", aa.delta_hat, "bound-suite delta_hat (default spread * r)");

    SelftestArgs ta;
    auto* self_cmd = app.add_subcommand("selftest", "built-in verification suites");
    self_cmd->add_option("suite", ta.which, "identities|bounds|oracle")->required();
    self_cmd->add_option("--seed", ta.seed, "RNG seed");
    self_cmd->add_option("--trials", ta.trials, "trials per family (identities) or cases (bounds)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    set_thread_count(threads);
    try {
        if (solve_cmd->parsed()) return cmd_solve(ctx, sa);
        if (count_cmd->parsed()) return cmd_count(ctx, ca);
        if (models_cmd->parsed()) return cmd_models(ctx, ma);
        if (sample_cmd->parsed()) return cmd_sample(ctx, sm);
        if (audit_cmd->parsed()) return cmd_audit(ctx, aa);
        if (self_cmd->parsed()) {
            if (ta.which == "identities") return selftest_identities(ctx, ta);
            if (ta.which == "bounds") {
                if (!self_cmd->count("--trials")) ta.trials = 100;
                return selftest_bounds(ctx, ta);
            }
            if (ta.which == "oracle") return selftest_oracle(ctx, ta);
            fail(ErrorKind::ParseError, "unknown selftest '" + ta.which + "'");
        }
    } catch (const Error& e) {
        err << "error [" << kind_name(e.kind()) << "]: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error [Internal]: " << e.what() << '\n';
        return 5;
    }
    return 5;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace hyperdeg
