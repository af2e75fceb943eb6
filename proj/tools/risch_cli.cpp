#include "risch/frontend.hpp"
#include "risch/numeric.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace risch;
using namespace risch::front;
using json = nlohmann::json;

namespace {

enum Exit { Ok = 0, Usage = 1, Negative = 2, WithinBounds = 3, VerifyFailed = 4 };

struct Config {
    std::string var = "x";
    std::string param;
    std::string format = "plain";
    std::string verify = "exact";
    std::string hermite = "allpoles";
    int samples = 16;
    int precision = 50;
    int bounds = 25;
    int max_order = 4;
    int order = -1;
    std::uint64_t seed = 1;
    std::vector<std::string> params;
};

Format fmt(const Config& c) {
    if (c.format == "latex") return Format::Latex;
    if (c.format == "json") return Format::Json;
    return Format::Plain;
}

std::string read_input(const std::string& s) {
    if (s != "-") return s;
    std::string all((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    while (!all.empty() && std::isspace(static_cast<unsigned char>(all.back()))) all.pop_back();
    return all;
}

IntegrateOptions options(const Config& c) {
    IntegrateOptions o;
    o.hermite = c.hermite == "classical" ? HermiteVariant::Classical : HermiteVariant::AllPoles;
    o.rde.degree_limit = c.bounds;
    return o;
}

std::string kind_text(GenKind k) { return kind_name(k); }

json tower_json(const TowerPlan& p) {
    json a = json::array();
    for (int l = 0; l < p.tower.size(); ++l) {
        const auto& g = p.tower.gen(l);
        json e{{"name", g.name}, {"kind", kind_text(g.kind)}};
        if (g.kind == GenKind::Exp || g.kind == GenKind::Log) e["argument"] = format(g.arg, p.tower);
        for (const auto& c : p.constants)
            if (c.name == g.name && c.definition) e["definition"] = to_string(*c.definition);
        a.push_back(e);
    }
    return a;
}

json rootsums_json(const std::vector<RootSum>& rs, const TowerPlan& p) {
    json a = json::array();
    for (const auto& r : rs)
        a.push_back({{"rpoly", format_poly(r.rpoly, "z", p.tower)}, {"logand", format_poly(r.logand, "z", p.tower)}});
    return a;
}

json certificate_json(const Certificate& c, const TowerPlan& p) {
    json j{{"text", render_certificate(c, p)}, {"bounded", c.bounded}, {"level", c.level}};
    switch (c.kind) {
        case Certificate::Kind::Rde:
            j["kind"] = "rde";
            j["u"] = format(c.rde.u, p.tower);
            j["w"] = format(c.rde.w, p.tower);
            break;
        case Certificate::Kind::Residue:
            j["kind"] = "residue";
            j["witness"] = format_poly(c.witness, "z", p.tower);
            break;
        case Certificate::Kind::LimitedIntegral:
            j["kind"] = "limited_integral";
            j["integrand"] = format(c.integrand, p.tower);
            if (!c.extra.zero()) j["extra"] = format(c.extra, p.tower);
            break;
    }
    return j;
}

int cmd_integrate(const std::string& text, const Config& cfg) {
    ExprPtr e = parse(read_input(text));
    TowerPlan plan = build_tower({e}, cfg.var, cfg.params);
    TowerElem f = to_tower_elem(*e, plan);
    const IntegrateOptions opt = options(cfg);
    IntegrationOutcome o = integrate(f, plan.tower, opt);
    const Format F = fmt(cfg);

    json ver;
    bool ok = true;
    if (cfg.verify == "exact") {
        TowerElem d = derive(o.elempart, plan.tower) + o.residual;
        for (const auto& r : o.rootsums) d = d + rootsum_derivative(r, plan.tower);
        ok = d == f;
        ver = {{"mode", "exact"}, {"passed", ok}};
    } else if (cfg.verify == "numeric") {
        numeric::Options no{cfg.samples, cfg.precision, cfg.seed};
        auto rep = numeric::check_antiderivative(f, o.elempart, o.rootsums, o.residual, plan, no);
        ok = rep.pass;
        json s = json::array();
        for (const auto& p : rep.samples) s.push_back({{"x", p.point}, {"residual", p.residual}});
        ver = {{"mode", "numeric"}, {"passed", ok}, {"max_residual", rep.max_residual},
               {"threshold", rep.threshold}, {"samples", s}};
    }

    const bool elementary = o.status == Status::Elementary;
    if (F == Format::Json) {
        json j{{"kind", "integrate"},
               {"integrand", to_string(*e)},
               {"var", cfg.var},
               {"params", cfg.params},
               {"status", status_name(o.status)},
               {"elempart", render(o.elempart, plan)},
               {"rootsums", rootsums_json(o.rootsums, plan)},
               {"residual", render(o.residual, plan)},
               {"certificate", o.certificate ? certificate_json(*o.certificate, plan) : json(nullptr)},
               {"tower", tower_json(plan)},
               {"antiderivative", render_antiderivative(o.elempart, o.rootsums, plan)}};
        if (!ver.is_null()) j["verification"] = ver;
        std::cout << j.dump(2) << "\n";
    } else if (elementary) {
        std::cout << render_antiderivative(o.elempart, o.rootsums, plan, F) << "\n";
    } else {
        std::cout << "status: " << status_name(o.status) << "\n";
        std::cout << "elementary part: " << render_antiderivative(o.elempart, o.rootsums, plan, F) << "\n";
        std::cout << "remaining integrand: " << render(o.residual, plan, F) << "\n";
        if (o.certificate) std::cout << "certificate: " << render_certificate(*o.certificate, plan) << "\n";
    }
    if (F != Format::Json && !ver.is_null()) {
        std::cerr << "verification (" << ver["mode"].get<std::string>() << "): " << (ok ? "passed" : "FAILED");
        if (ver.contains("max_residual"))
            std::cerr << ", max residual " << ver["max_residual"].get<std::string>() << " < "
                      << ver["threshold"].get<std::string>();
        std::cerr << "\n";
    }
    if (!ok) return VerifyFailed;
    switch (o.status) {
        case Status::Elementary: return Ok;
        case Status::NonElementary: return Negative;
        case Status::NonElementaryWithinBounds: return WithinBounds;
    }
    return Ok;
}

std::string vec_text(const std::vector<TowerElem>& c, const TowerPlan& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + format(c[i], p.tower);
    return s + ")";
}

int cmd_parametric(const std::vector<std::string>& texts, const Config& cfg) {
    std::vector<ExprPtr> es;
    for (const auto& t : texts) es.push_back(parse(read_input(t)));
    TowerPlan plan = build_tower(es, cfg.var, cfg.params);
    std::vector<TowerElem> fs;
    for (const auto& e : es) fs.push_back(to_tower_elem(*e, plan));
    ParametricBasis b = parametric_integrate(fs, plan.tower, options(cfg));
    bool ok = true;
    if (cfg.verify != "off")
        for (const auto& e : b.entries) ok = ok && verify_relation({e.c, e.elempart, e.rootsums}, fs, plan.tower).verified;
    const Format F = fmt(cfg);
    if (F == Format::Json) {
        json basis = json::array();
        for (const auto& e : b.entries) {
            json c = json::array();
            for (const auto& v : e.c) c.push_back(format(v, plan.tower));
            basis.push_back({{"c", c},
                             {"elempart", render(e.elempart, plan)},
                             {"rootsums", rootsums_json(e.rootsums, plan)},
                             {"integral", render_antiderivative(e.elempart, e.rootsums, plan)}});
        }
        json fsj = json::array();
        for (const auto& e : es) fsj.push_back(to_string(*e));
        json j{{"kind", "parametric"}, {"integrands", fsj},          {"var", cfg.var},
               {"params", cfg.params}, {"basis", basis},             {"complete", b.complete},
               {"tower", tower_json(plan)}};
        if (cfg.verify != "off") j["verified"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "basis dimension " << b.entries.size() << (b.complete ? "" : " (within search bounds)") << "\n";
        for (const auto& e : b.entries)
            std::cout << "c = " << vec_text(e.c, plan) << ": "
                      << render_antiderivative(e.elempart, e.rootsums, plan, F) << "\n";
    }
    return ok ? Ok : VerifyFailed;
}

TelescopeProblem telescope_problem(const ExprPtr& f, const TowerPlan& plan, const std::string& param) {
    HyperexpData h = hyperexp_logderivs(f, plan, param);
    return {h.ldx, h.ldy, plan.symbol_levels.at(param)};
}

std::string operator_text(const std::vector<TowerElem>& c, const TowerPlan& p, const std::string& y) {
    std::vector<std::string> terms;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i].zero()) continue;
        std::string d = i == 0 ? "" : i == 1 ? "D_" + y : "D_" + y + "^" + std::to_string(i);
        std::string cs = format(c[i], p.tower);
        if (d.empty()) terms.push_back(cs);
        else if (c[i].is_one()) terms.push_back(d);
        else terms.push_back("(" + cs + ")*" + d);
    }
    std::string s;
    for (const auto& t : terms) s += (s.empty() ? "" : " + ") + t;
    return s.empty() ? "0" : s;
}

int cmd_telescope(const std::string& text, const Config& cfg) {
    if (cfg.param.empty()) throw CLI::ValidationError("telescope", "--param is required");
    ExprPtr f = parse(read_input(text));
    std::vector<std::string> ps{cfg.param};
    ps.insert(ps.end(), cfg.params.begin(), cfg.params.end());
    TowerPlan plan = build_tower({f}, cfg.var, ps);
    TelescopeProblem p = telescope_problem(f, plan, cfg.param);
    RdeOptions ro = options(cfg).rde;
    auto r = cfg.order >= 0 ? az_telescope_fixed(p, cfg.order, plan.tower, ro) : az_telescope(p, cfg.max_order, plan.tower, ro);
    const Format F = fmt(cfg);
    if (!r) {
        if (F == Format::Json) std::cout << json{{"status", "NotFound"}}.dump(2) << "\n";
        else std::cout << "no telescoper found\n";
        return Negative;
    }
    bool ok = cfg.verify == "off" || telescope_defect(p, *r, plan.tower).zero();
    std::string fs = to_string(*f);
    if (F == Format::Json) {
        json c = json::array();
        for (const auto& v : r->coeffs) c.push_back(format(v, plan.tower));
        json j{{"kind", "telescope"},   {"status", "Found"},        {"order", r->order},
               {"coeffs", c},           {"certificate", format(r->certificate, plan.tower)},
               {"f", fs},               {"var", cfg.var},           {"param", cfg.param},
               {"operator", operator_text(r->coeffs, plan, cfg.param)}};
        if (cfg.verify != "off") j["verified"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "order " << r->order << "\n";
        std::cout << "telescoper: " << operator_text(r->coeffs, plan, cfg.param) << "\n";
        std::cout << "certificate: R = " << render(r->certificate, plan, F) << ", (telescoper)(f) = D_" << cfg.var
                  << "(R*f)\n";
    }
    return ok ? Ok : VerifyFailed;
}

std::vector<std::string> string_list(const json& j) {
    std::vector<std::string> out;
    for (const auto& v : j) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
}

// polynomial in z with coefficients in the tower of `plan`
ZPoly zpoly(const Expr& e, const TowerPlan& plan) {
    using K = Expr::Kind;
    auto sub = [&](int i) { return zpoly(*e.args[static_cast<std::size_t>(i)], plan); };
    switch (e.kind) {
        case K::Sym:
            if (e.name == "z") return ZPoly::monomial(TowerElem(1), 1);
            break;
        case K::Add: return sub(0) + sub(1);
        case K::Sub: return sub(0) - sub(1);
        case K::Mul: return sub(0) * sub(1);
        case K::Neg: return -sub(0);
        case K::Div: {
            ZPoly d = sub(1);
            if (d.degree() != 0) throw CLI::ValidationError("verify", "division by a polynomial in z");
            return sub(0).scale(d.lc().inverse());
        }
        case K::Pow:
            if (e.exponent >= 0) {
                ZPoly b = sub(0), r(TowerElem(1));
                for (long i = 0; i < e.exponent; ++i) r = r * b;
                return r;
            }
            break;
        default: break;
    }
    const auto names = symbols(e);
    if (std::find(names.begin(), names.end(), "z") != names.end())
        throw CLI::ValidationError("verify", "z must occur polynomially in " + to_string(e));
    return ZPoly(to_tower_elem(e, plan));
}

std::vector<RootSum> rootsums_from(const json& j, const TowerPlan& plan) {
    std::vector<RootSum> out;
    for (const auto& r : j) {
        RootSum rs;
        rs.rpoly = zpoly(*parse(r.at("rpoly").get<std::string>()), plan);
        rs.logand = zpoly(*parse(r.at("logand").get<std::string>()), plan);
        for (const auto& c : rs.logand.coeffs()) rs.level = std::max(rs.level, c.level());
        if (rs.rpoly.degree() < 1 || !has_constant_coeffs(rs.rpoly, plan.tower))
            throw CLI::ValidationError("verify", "rpoly must be a nonconstant polynomial with constant coefficients");
        rs.rpoly = rs.rpoly.scale(rs.rpoly.lc().inverse());
        out.push_back(std::move(rs));
    }
    return out;
}

int verified_or_refuted(const TowerElem& defect, const TowerPlan& plan, const std::string& what) {
    if (defect.zero()) {
        std::cout << "verified\n";
        return Ok;
    }
    std::cout << "refuted: " << what << " = " << render(defect, plan) << "\n";
    return Negative;
}

int cmd_verify(const std::string& path) {
    json j;
    try {
        if (path == "-") j = json::parse(std::cin);
        else {
            std::ifstream in(path);
            if (!in) throw CLI::ValidationError("verify", "cannot open " + path);
            j = json::parse(in);
        }
    } catch (const json::exception& e) {
        throw CLI::ValidationError("verify", std::string("malformed relation file: ") + e.what());
    }
    const std::string var = j.value("var", "x");
    std::vector<std::string> params = j.contains("params") ? string_list(j["params"]) : std::vector<std::string>{};
    if (j.value("kind", "") == "telescope") {
        const std::string param = j.at("param").get<std::string>();
        ExprPtr f = parse(j.at("f").get<std::string>());
        std::vector<ExprPtr> es{f};
        auto cs = string_list(j.at("coeffs"));
        std::vector<ExprPtr> ce;
        for (const auto& c : cs) ce.push_back(parse(c));
        ExprPtr R = parse(j.at("certificate").get<std::string>());
        es.insert(es.end(), ce.begin(), ce.end());
        es.push_back(R);
        std::vector<std::string> ps{param};
        ps.insert(ps.end(), params.begin(), params.end());
        TowerPlan plan = build_tower(es, var, ps);
        TelescopeProblem p = telescope_problem(f, plan, param);
        TelescopeResult r;
        r.order = static_cast<int>(cs.size()) - 1;
        for (const auto& c : ce) r.coeffs.push_back(to_tower_elem(*c, plan));
        r.certificate = to_tower_elem(*R, plan);
        TowerElem d = telescope_defect(p, r, plan.tower);
        if (d.zero()) {
            std::cout << "verified\n";
            return Ok;
        }
        std::cout << "refuted: defect " << render(d, plan) << "\n";
        return Negative;
    }
    if (j.value("kind", "") == "integrate") {
        ExprPtr f = parse(j.at("integrand").get<std::string>());
        TowerPlan plan = build_tower({f}, var, params);
        TowerElem d = to_tower_elem(*parse(j.at("elempart").get<std::string>()), plan);
        d = derive(d, plan.tower) + to_tower_elem(*parse(j.at("residual").get<std::string>()), plan);
        for (const auto& rs : rootsums_from(j.at("rootsums"), plan)) d += rootsum_derivative(rs, plan.tower);
        return verified_or_refuted(d - to_tower_elem(*f, plan), plan, "D(result) + residual - f");
    }
    if (j.value("kind", "") == "parametric") {
        std::vector<ExprPtr> es;
        for (const auto& s : string_list(j.at("integrands"))) es.push_back(parse(s));
        TowerPlan plan = build_tower(es, var, params);
        std::vector<TowerElem> fs;
        for (const auto& e : es) fs.push_back(to_tower_elem(*e, plan));
        for (const auto& b : j.at("basis")) {
            RelationCertificate cert;
            for (const auto& c : string_list(b.at("c"))) cert.c.push_back(to_tower_elem(*parse(c), plan));
            if (cert.c.size() != fs.size()) throw CLI::ValidationError("verify", "integrands and c differ in length");
            cert.g = to_tower_elem(*parse(b.at("elempart").get<std::string>()), plan);
            cert.rootsums = rootsums_from(b.at("rootsums"), plan);
            VerifyResult v = verify_relation(cert, fs, plan.tower);
            if (!v.verified) return verified_or_refuted(v.witness, plan, "sum c_i f_i - D(integral)");
        }
        return verified_or_refuted(TowerElem(0), plan, "");
    }
    auto fts = string_list(j.at("integrands"));
    auto cts = string_list(j.at("c"));
    if (fts.size() != cts.size()) throw CLI::ValidationError("verify", "integrands and c differ in length");
    std::vector<ExprPtr> es;
    for (const auto& s : fts) es.push_back(parse(s));
    for (const auto& s : cts) es.push_back(parse(s));
    ExprPtr g = parse(j.at("g").get<std::string>());
    es.push_back(g);
    TowerPlan plan = build_tower(es, var, params);
    RelationCertificate cert;
    std::vector<TowerElem> fs;
    for (std::size_t i = 0; i < fts.size(); ++i) {
        fs.push_back(to_tower_elem(*es[i], plan));
        cert.c.push_back(to_tower_elem(*es[fts.size() + i], plan));
    }
    for (const auto& c : cert.c)
        if (!plan.tower.is_constant(c)) throw CLI::ValidationError("verify", "c entries must be constants");
    cert.g = to_tower_elem(*g, plan);
    if (j.contains("rootsums")) cert.rootsums = rootsums_from(j["rootsums"], plan);
    VerifyResult v = verify_relation(cert, fs, plan.tower);
    return verified_or_refuted(v.verified ? TowerElem(0) : v.witness, plan, "sum c_i f_i - D(integral)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic integration in differential fields"};
    app.require_subcommand(1);
    Config cfg;
    auto common = [&](CLI::App* s) {
        s->add_option("--var", cfg.var, "integration variable");
        s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"plain", "latex", "json"}));
        s->add_option("--verify", cfg.verify, "verification mode")->check(CLI::IsMember({"off", "exact", "numeric"}));
        s->add_option("--bounds", cfg.bounds, "degree limit of the bounded ansatz")->check(CLI::PositiveNumber);
        s->add_option("--hermite", cfg.hermite, "Hermite variant")->check(CLI::IsMember({"allpoles", "classical"}));
        s->add_option("--const", cfg.params, "additional constant symbols, in tower order");
    };

    std::string expr;
    std::vector<std::string> exprs;
    std::string file;

    auto* in = app.add_subcommand("integrate", "integrate an expression");
    in->add_option("expr", expr, "integrand, or - for stdin")->required();
    common(in);
    in->add_option("--samples", cfg.samples, "numeric samples")->check(CLI::PositiveNumber);
    in->add_option("--precision", cfg.precision, "numeric precision in digits")->check(CLI::Range(10, 1000));
    in->add_option("--seed", cfg.seed, "seed for numeric sample points");

    auto* pa = app.add_subcommand("parametric", "constant combinations with an elementary integral");
    pa->add_option("exprs", exprs, "integrands")->required();
    common(pa);

    auto* te = app.add_subcommand("telescope", "creative telescoping in a parameter");
    te->add_option("expr", expr, "hyperexponential integrand, or - for stdin")->required();
    common(te);
    te->add_option("--param", cfg.param, "parameter")->required();
    te->add_option("--max-order", cfg.max_order, "largest order tried")->check(CLI::NonNegativeNumber);
    te->add_option("--order", cfg.order, "exact order instead of the minimal one")->check(CLI::NonNegativeNumber);

    auto* ve = app.add_subcommand("verify", "check a relation or telescoper file");
    ve->add_option("file", file, "JSON file, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }
    try {
        if (in->parsed()) return cmd_integrate(expr, cfg);
        if (pa->parsed()) return cmd_parametric(exprs, cfg);
        if (te->parsed()) return cmd_telescope(expr, cfg);
        if (ve->parsed()) return cmd_verify(file);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Usage;
    } catch (const BuildError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
    return Usage;
}
