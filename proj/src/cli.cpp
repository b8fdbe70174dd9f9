#include "mprat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mprat/calculus.hpp"
#include "mprat/error.hpp"
#include "mprat/identity.hpp"
#include "mprat/io.hpp"
#include "mprat/parser.hpp"

namespace mprat::cli {

namespace {

using io::Json;

struct Options {
    std::string alphabet;
    std::string expr;
    std::string point;
    std::string base_point;
    std::string matrix;
    std::vector<std::string> files;
    std::size_t max_level = 4;
    std::size_t trials = 8;
    std::uint64_t bound = 10;
    std::uint64_t seed = 0;
    bool prime = false;
    std::uint32_t part = 1;
    std::uint32_t index = 1;
    std::size_t g = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
}

TestConfig config(const Options& o) {
    TestConfig cfg;
    cfg.max_level = o.max_level;
    cfg.trials = o.trials;
    cfg.bound = o.bound;
    cfg.seed = o.seed;
    if (const char* env = std::getenv("MPRAT_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw Error(std::string("MPRAT_SEED is not an unsigned integer: ") + env);
        }
    }
    if (o.prime) cfg.field = Field::default_prime();
    cfg.validate();
    return cfg;
}

// Primed parts are added for every part whose primed letters occur in `e`.
Alphabet alphabet_for(const Expr& e, Alphabet a) {
    for (const auto& v : variables(e)) {
        if (v.primed && v.part < a.parts() && !a.primed(v.part)) a = a.with_primed(v.part);
    }
    return a;
}

Expr read_expr(const std::string& path, const Alphabet& alphabet) {
    const std::string text = read_file(path);
    Alphabet wide = alphabet;
    for (std::size_t p = 0; p < alphabet.parts(); ++p) wide = wide.with_primed(p);
    return parse(text, wide);
}

void add_undefined(Json& j, const Undefined& u) {
    j["path"] = path_to_string(u.path);
    j["subexpr"] = format(u.subexpr);
}

int report_eval(const EvalResult& r, std::ostream& out) {
    Json j;
    if (is_defined(r)) {
        j["status"] = "defined";
        j["value"] = io::to_json(value(r));
        out << j.dump() << '\n';
        return kSuccess;
    }
    j["status"] = "undefined";
    add_undefined(j, std::get<Undefined>(r));
    out << j.dump() << '\n';
    return kUndefined;
}

int report_verdict(const ZeroVerdict& v, std::ostream& out) {
    Json j;
    int code = kSuccess;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExactZero>) {
                j["verdict"] = "exact-zero";
            } else if constexpr (std::is_same_v<T, ProbablyZero>) {
                j["verdict"] = "probably-zero";
                j["max_level"] = r.max_level;
                j["trials"] = r.trials;
                j["decided_trials"] = r.decided;
            } else if constexpr (std::is_same_v<T, NonzeroWitness>) {
                j["verdict"] = "nonzero";
                j["level"] = r.level;
                j["trial"] = r.trial;
                j["witness"] = io::to_json(r.point);
                j["value"] = io::to_json(r.value);
                code = kNonzero;
            } else {
                j["verdict"] = "nowhere-defined";
                add_undefined(j, r.undefined);
                code = kUndefined;
            }
        },
        v.result);
    out << j.dump() << '\n';
    return code;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const Alphabet base = Alphabet::parse(o.alphabet);
    const Expr e = read_expr(o.expr, base);
    const Alphabet a = alphabet_for(e, base);
    return report_eval(mp_evaluate(e, a, io::mp_point_from_json(read_json(o.point))), out);
}

int cmd_check_zero(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    const Expr e = read_expr(o.expr, a);
    return report_verdict(is_zero(e, alphabet_for(e, a), config(o)), out);
}

int cmd_equiv(const Options& o, std::ostream& out) {
    if (o.files.size() != 2) throw CLI::ValidationError("equiv", "expects exactly two expression files");
    const Alphabet a = Alphabet::parse(o.alphabet);
    const Expr e1 = read_expr(o.files[0], a);
    const Expr e2 = read_expr(o.files[1], a);
    return report_verdict(equivalent(e1, e2, alphabet_for(e1 - e2, a), config(o)), out);
}

int cmd_delta(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    if (o.part < 1 || o.part > a.parts()) throw UnknownVariable("--part out of range");
    if (o.index < 1 || o.index > a.size(o.part - 1)) throw UnknownVariable("--index out of range");
    const Expr e = parse(read_file(o.expr), a);
    Json j;
    j["part"] = o.part;
    j["index"] = o.index;
    j["delta"] = format(delta(o.part - 1, o.index - 1, e, a));
    out << j.dump() << '\n';
    return kSuccess;
}

int cmd_realize(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    const Expr e = parse(read_file(o.expr), a);
    const NcPoint p = io::nc_point_from_json(read_json(o.base_point));
    Realization r;
    try {
        r = realize(e, a, p);
    } catch (const BasePointOutsideDomain& err) {
        Json j;
        j["status"] = "base-point-outside-domain";
        j["message"] = err.what();
        out << j.dump() << '\n';
        return kUndefined;
    }
    const Realization reduced = real_reduce(r);
    Json j;
    j["status"] = "ok";
    j["realization"] = io::to_json(r);
    j["reduced_n"] = reduced.n;
    out << j.dump() << '\n';
    return kSuccess;
}

int cmd_bf_eval(const Options& o, std::ostream& out) {
    const Alphabet a = bf_alphabet(o.g);
    const Expr e = parse(read_file(o.expr), a);
    const BfPoint p = io::bf_point_from_json(read_json(o.point));
    if (p.g != o.g) throw ShapeMismatch("point file has g = " + std::to_string(p.g));
    return report_eval(bf_evaluate(e, p), out);
}

int cmd_domain_scan(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    const Expr e = read_expr(o.expr, a);
    const DomainScan s = domain_scan(e, alphabet_for(e, a), config(o));
    Json j;
    if (s.first_level) {
        j["first_defined_level"] = *s.first_level;
        j["witness"] = io::to_json(*s.witness);
        j["defined_at_multiples"] = true;
        out << j.dump() << '\n';
        return kSuccess;
    }
    j["first_defined_level"] = nullptr;
    j["witness"] = nullptr;
    if (s.undefined) add_undefined(j, *s.undefined);
    out << j.dump() << '\n';
    return kUndefined;
}

int cmd_mat_inv(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    const ExprMatrix m = io::expr_matrix_from_json(read_json(o.matrix), a);
    const TestConfig cfg = config(o);
    Json j;
    const auto verdict = matrix_invertible(m, a, cfg);
    if (const auto* no = std::get_if<ProbablyNotInvertible>(&verdict)) {
        j["verdict"] = "probably-not-invertible";
        j["max_level"] = no->max_level;
        j["trials"] = no->trials;
        j["decided_trials"] = no->decided;
        out << j.dump() << '\n';
        return kNonzero;
    }
    const auto& w = std::get<InvertibleWitness>(verdict);
    j["verdict"] = "invertible";
    j["witness"] = io::to_json(w.point);
    try {
        const MatrixInverse inv = matrix_inverse_expr(m, a, cfg);
        j["inverse"] = io::to_json(inv.inverse);
        j["node_count"] = inv.inverse.node_count();
        Json pivots = Json::array();
        for (const auto& p : inv.pivots) {
            Json pj;
            pj["depth"] = p.depth;
            pj["row"] = p.row + 1;
            pj["col"] = p.col + 1;
            pj["entry"] = format(p.entry);
            pj["witness_level"] = p.witness.level;
            pivots.push_back(std::move(pj));
        }
        j["pivots"] = std::move(pivots);
    } catch (const NotInvertible& err) {
        j["verdict"] = "not-invertible";
        j["message"] = err.what();
        out << j.dump() << '\n';
        return kNonzero;
    }
    out << j.dump() << '\n';
    return kSuccess;
}

int cmd_partial_eval(const Options& o, std::ostream& out) {
    const Alphabet a = Alphabet::parse(o.alphabet);
    if (o.part < 1 || o.part > a.parts()) throw UnknownVariable("--part out of range");
    const Expr e = parse(read_file(o.expr), a);
    const Json pj = read_json(o.point);
    const auto d = pj.at("d").get<std::size_t>();
    std::vector<Matrix> mats;
    for (const auto& m : pj.at("matrices")) mats.push_back(io::matrix_from_json(m, d));
    Json j;
    try {
        const ExprMatrix s = partial_evaluate(e, a, o.part - 1, mats, config(o));
        j["status"] = "ok";
        j["alphabet"] = a.without_part(o.part - 1).to_string();
        j["entries"] = io::to_json(s);
    } catch (const PartialUndefined& err) {
        j["status"] = "undefined";
        j["message"] = err.what();
        out << j.dump() << '\n';
        return kUndefined;
    }
    out << j.dump() << '\n';
    return kSuccess;
}

void add_config(CLI::App* cmd, Options& o) {
    cmd->add_option("--max-level", o.max_level, "largest square level")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", o.trials, "sampled points per level")->check(CLI::PositiveNumber);
    cmd->add_option("--bound", o.bound, "entries are drawn from [-B, B]")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "random seed (MPRAT_SEED overrides)");
    cmd->add_flag("--prime", o.prime, "sample over GF(2^61-1) instead of Q");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact kernel for multipartite noncommutative rational functions", "mprat"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate an expression at a point");
    eval->add_option("--alphabet", o.alphabet)->required();
    eval->add_option("--expr", o.expr)->required();
    eval->add_option("--point", o.point)->required();

    auto* zero = app.add_subcommand("check-zero", "randomized zero test");
    zero->add_option("--alphabet", o.alphabet)->required();
    zero->add_option("--expr", o.expr)->required();
    add_config(zero, o);

    auto* equiv = app.add_subcommand("equiv", "randomized equivalence test");
    equiv->add_option("--alphabet", o.alphabet)->required();
    equiv->add_option("files", o.files, "two expression files")->expected(2);
    add_config(equiv, o);

    auto* del = app.add_subcommand("delta", "difference-differential operator");
    del->add_option("--alphabet", o.alphabet)->required();
    del->add_option("--expr", o.expr)->required();
    del->add_option("--part", o.part)->required();
    del->add_option("--index", o.index)->required();

    auto* real = app.add_subcommand("realize", "linear pencil realization about a base point");
    real->add_option("--alphabet", o.alphabet)->required();
    real->add_option("--expr", o.expr)->required();
    real->add_option("--base-point", o.base_point)->required();

    auto* bf = app.add_subcommand("bf-eval", "bi-free evaluation");
    bf->add_option("--g", o.g)->required()->check(CLI::PositiveNumber);
    bf->add_option("--expr", o.expr)->required();
    bf->add_option("--point", o.point)->required();

    auto* scan = app.add_subcommand("domain-scan", "smallest level with a defined sample");
    scan->add_option("--alphabet", o.alphabet)->required();
    scan->add_option("--expr", o.expr)->required();
    add_config(scan, o);

    auto* minv = app.add_subcommand("mat-inv", "invert a matrix of expressions");
    minv->add_option("--alphabet", o.alphabet)->required();
    minv->add_option("--matrix", o.matrix)->required();
    add_config(minv, o);

    auto* part = app.add_subcommand("partial-eval", "substitute matrices for one part");
    part->add_option("--alphabet", o.alphabet)->required();
    part->add_option("--expr", o.expr)->required();
    part->add_option("--part", o.part)->default_val(1);
    part->add_option("--point", o.point)->required();
    add_config(part, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (zero->parsed()) return cmd_check_zero(o, out);
        if (equiv->parsed()) return cmd_equiv(o, out);
        if (del->parsed()) return cmd_delta(o, out);
        if (real->parsed()) return cmd_realize(o, out);
        if (bf->parsed()) return cmd_bf_eval(o, out);
        if (scan->parsed()) return cmd_domain_scan(o, out);
        if (minv->parsed()) return cmd_mat_inv(o, out);
        if (part->parsed()) return cmd_partial_eval(o, out);
    } catch (const CLI::Error& e) {
        err << "mprat: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "mprat: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace mprat::cli
