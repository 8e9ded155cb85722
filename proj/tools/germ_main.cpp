// Command-line frontend: one binary, one subcommand per operation, shared
// polynomial/field/truncation options, text or line-delimited JSON output.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "germ/cartan.hpp"
#include "germ/divide.hpp"
#include "germ/io.hpp"
#include "germ/jetsolve.hpp"
#include "germ/singularity.hpp"
#include "germ/standard_basis.hpp"

using json = nlohmann::json;
using namespace germ;

namespace {

int exit_code_for(errc c) {
    switch (c) {
        case errc::syntax_error:
        case errc::unknown_variable:
        case errc::coefficient_not_in_field:
        case errc::bad_input:
            return 2;
        case errc::division_by_zero:
        case errc::variable_mismatch:
        case errc::substitution_constant_term:
        case errc::zero_element:
        case errc::zero_divisor:
        case errc::noninvertible_leading_coefficient:
        case errc::not_polynomial:
        case errc::unit_input:
        case errc::order_too_low:
        case errc::not_an_unfolding:
        case errc::not_a_deformation:
            return 3;
        case errc::truncation_too_small:
            return 4;
        case errc::inconsistent:
        case errc::rank_deficient_input:
        case errc::not_a_solution:
        case errc::oracle_failure:
        case errc::hypothesis_failure:
        case errc::lift_failure:
        case errc::not_detectable:
        case errc::certificate_unachievable:
            return 5;
        case errc::not_isolated:
        case errc::not_complete_intersection:
            return 6;
        case errc::hook_failure:
            return 7;
        case errc::internal:
            return 9;
    }
    return 1;
}

struct Session {
    std::string field_spec = "Q";
    std::vector<std::string> vars;
    unsigned deg = 6;
    std::string out = "text";

    RingPtr ring;

    void prepare() {
        if (vars.empty()) fail(errc::bad_input, "no variables declared (--vars)");
        ring = make_ring(Field::parse(field_spec), vars, deg);
    }
    bool structured() const { return out == "structured"; }
};

void add_common(CLI::App* cmd, Session& s) {
    cmd->add_option("--field", s.field_spec, "field: Q | Q_p:<p> | F:<p>")->capture_default_str();
    cmd->add_option("--vars", s.vars, "comma-separated variable names")->required()->delimiter(',');
    cmd->add_option("--deg", s.deg, "truncation degree D")->capture_default_str();
    cmd->add_option("--out", s.out, "output: text | structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
}

json jet_json(const Jet& f) {
    json terms = json::array();
    for (const auto& [a, c] : f.terms())
        terms.push_back(json{{"exp", a.e}, {"coeff", to_string(c)}});
    return json{{"terms", terms}, {"exact", f.exact()}, {"text", to_string(f)}};
}

json vec_json(const JetVec& v) {
    json comps = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) comps.push_back(jet_json(v[i]));
    return json{{"components", comps}, {"text", to_string(v)}};
}

json monomial_json(const ModuleMonomial& m, const Ring& ring, std::size_t ncomp) {
    return json{{"exp", m.alpha.e}, {"unit", m.unit + 1}, {"text", to_string(m, ring, ncomp)}};
}

void emit(const Session& s, const json& record, const std::string& text) {
    if (s.structured()) std::cout << record.dump() << "\n";
    else std::cout << text << "\n";
}

json rat_list(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(to_string(r));
    return a;
}

RadiusVector parse_radius(const std::string& text, std::size_t expect) {
    std::vector<Rat> v;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) v.emplace_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (Rat& r : v) r.canonicalize();
    if (expect && v.size() != expect) fail(errc::bad_input, "radius entry count mismatch");
    return RadiusVector(v);
}

struct TraceOpts {
    std::string combined; // "rho=1/2,1/2;tau=1/2;L=5"
    std::string rho, tau, L;

    bool requested() const {
        return !combined.empty() || !rho.empty() || !tau.empty() || !L.empty();
    }
    void resolve() {
        if (combined.empty()) return;
        std::string item;
        auto flush = [&] {
            std::size_t eq = item.find('=');
            if (eq == std::string::npos) {
                if (!item.empty()) fail(errc::bad_input, "bad --trace-norms entry '" + item + "'");
                return;
            }
            std::string key = item.substr(0, eq), val = item.substr(eq + 1);
            if (key == "rho" && rho.empty()) rho = val;
            else if (key == "tau" && tau.empty()) tau = val;
            else if (key == "L" && L.empty()) L = val;
            else if (key != "rho" && key != "tau" && key != "L")
                fail(errc::bad_input, "unknown --trace-norms key '" + key + "'");
        };
        for (char c : combined) {
            if (c == ';' || c == ' ') {
                flush();
                item.clear();
            } else {
                item += c;
            }
        }
        flush();
    }
};

void add_trace_opts(CLI::App* cmd, TraceOpts& t) {
    cmd->add_option("--trace-norms", t.combined,
                    "norm diagnostic, e.g. \"rho=1/2,1/2;tau=1/2;L=5\"");
    cmd->add_option("--trace-rho", t.rho, "radii for the x-block, comma separated");
    cmd->add_option("--trace-tau", t.tau, "radii for the parameter block, comma separated");
    cmd->add_option("--trace-L", t.L, "bound L for the norm diagnostic");
}

void report_trace(const Session& s, const ExtensionTrace& trace, TraceOpts t,
                  std::size_t nx, std::size_t ns) {
    if (!t.requested()) return;
    t.resolve();
    RadiusVector rho = t.rho.empty() ? RadiusVector::uniform(nx, Rat(1, 2)) : parse_radius(t.rho, nx);
    RadiusVector tau = t.tau.empty() ? RadiusVector::uniform(ns, Rat(1, 2)) : parse_radius(t.tau, ns);
    Rat L = t.L.empty() ? Rat(1) : Rat(t.L);
    L.canonicalize();
    NormTraceReport rep = norm_trace(trace, rho, tau, L);
    if (s.structured()) {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back(json{{"degree", r.degree},
                                {"residual_norm", to_string(r.residual_norm)},
                                {"max_u", to_string(r.max_u)},
                                {"max_v", to_string(r.max_v)},
                                {"within", r.within}});
        json rec{{"record", "norm-trace"},
                 {"rows", rows},
                 {"all_within", rep.all_within},
                 {"tail_u", to_string(rep.tail_u_norm)},
                 {"tail_v", to_string(rep.tail_v_norm)},
                 {"tail_within_2L", rep.tail_within_2L}};
        if (rep.violated_at) rec["violated_at"] = *rep.violated_at;
        std::cout << rec.dump() << "\n";
    } else {
        std::cout << "norm trace (L = " << to_string(L) << "):\n";
        for (const auto& r : rep.rows)
            std::cout << "  e=" << r.degree << "  |F_e| = " << to_string(r.residual_norm)
                      << "  max|u| = " << to_string(r.max_u) << "  max|v| = " << to_string(r.max_v)
                      << (r.within ? "" : "  BOUND VIOLATED") << "\n";
        std::cout << "  tail: |u|_{tau/2} = " << to_string(rep.tail_u_norm)
                  << ", |v| = " << to_string(rep.tail_v_norm)
                  << (rep.tail_within_2L ? " < 2L" : " >= 2L") << "\n";
        if (rep.violated_at) std::cout << "  bound violated at e=" << *rep.violated_at << "\n";
    }
}

// ---- subcommands ----

int run_divide(Session& s, const std::string& ftext, const std::vector<std::string>& divs,
               bool want_cert, const std::string& eps) {
    s.prepare();
    JetVec f = parse_jet_vector(ftext, s.ring);
    std::vector<JetVec> divisors;
    for (const auto& d : divs) divisors.push_back(parse_jet_vector(d, s.ring));
    DivisionOptions opts;
    opts.want_certificate = want_cert;
    if (!eps.empty()) {
        opts.epsilon = Rat(eps);
        opts.epsilon.canonicalize();
    }
    DivisionResult res = divide(f, divisors, opts);
    json rec{{"record", "divide"}, {"steps", res.steps}, {"remainder", vec_json(res.remainder)}};
    json qs = json::array();
    for (const Jet& q : res.quotients) qs.push_back(jet_json(q));
    rec["quotients"] = qs;
    std::string text;
    for (std::size_t i = 0; i < res.quotients.size(); ++i)
        text += "q" + std::to_string(i + 1) + " = " + to_string(res.quotients[i]) + "\n";
    text += "r = " + to_string(res.remainder) + "\nsteps = " + std::to_string(res.steps);
    if (res.certificate) {
        const NormCertificate& c = *res.certificate;
        rec["certificate"] = json{{"epsilon", to_string(c.epsilon)},
                                  {"delta", rat_list(c.delta.entries())},
                                  {"norm_f", to_string(c.norm_f)},
                                  {"norm_r", to_string(c.norm_r)},
                                  {"bound_r", to_string(c.bound_r)},
                                  {"norm_q", rat_list(c.norm_q)},
                                  {"bound_q", rat_list(c.bound_q)},
                                  {"verified", c.verified}};
        text += "\ncertificate: eps = " + to_string(c.epsilon) + ", delta = (";
        for (std::size_t i = 0; i < c.delta.size(); ++i)
            text += (i ? ", " : "") + to_string(c.delta[i]);
        text += "), |r| = " + to_string(c.norm_r) + " <= " + to_string(c.bound_r) +
                (c.verified ? " [verified]" : " [observed]");
    }
    emit(s, rec, text);
    return 0;
}

int run_nf(Session& s, const std::string& ftext, const std::vector<std::string>& gens) {
    s.prepare();
    JetVec f = parse_jet_vector(ftext, s.ring);
    std::vector<JetVec> gv;
    for (const auto& g : gens) gv.push_back(parse_jet_vector(g, s.ring));
    StandardBasis S = std_basis(gv);
    JetVec r = nf_ideal(f, S);
    emit(s, json{{"record", "nf"}, {"value", vec_json(r)}}, "NF = " + to_string(r));
    return 0;
}

int run_std_basis(Session& s, const std::vector<std::string>& gens) {
    s.prepare();
    std::vector<JetVec> gv;
    for (const auto& g : gens) gv.push_back(parse_jet_vector(g, s.ring));
    StandardBasis S = std_basis(gv);
    json elems = json::array();
    std::string text = "standard basis:\n";
    for (const BasisElement& e : S.elements()) {
        elems.push_back(vec_json(e.g));
        text += "  " + to_string(e.g) + "\n";
    }
    json lms = json::array();
    text += "leading module:";
    for (const ModuleMonomial& m : S.leading_module()) {
        lms.push_back(monomial_json(m, *s.ring, S.ncomp()));
        text += " " + to_string(m, *s.ring, S.ncomp());
    }
    json rec{{"record", "std-basis"}, {"elements", elems}, {"leading_module", lms},
             {"saturated", S.complete()}};
    if (S.full_degree()) {
        rec["full_degree"] = *S.full_degree();
        text += "\nsaturated at degree " + std::to_string(*S.full_degree());
    } else {
        text += "\nnot saturated below the truncation";
    }
    emit(s, rec, text);
    return 0;
}

int run_member(Session& s, const std::string& ftext, const std::vector<std::string>& gens) {
    s.prepare();
    JetVec f = parse_jet_vector(ftext, s.ring);
    std::vector<JetVec> gv;
    for (const auto& g : gens) gv.push_back(parse_jet_vector(g, s.ring));
    StandardBasis S = std_basis(gv);
    bool mem = is_member(f, S);
    emit(s, json{{"record", "member"}, {"member", mem}},
         mem ? "member (mod m^{D+1})" : "not a member");
    return mem ? 0 : 0;
}

int run_quotient_basis(Session& s, const std::vector<std::string>& gens, bool mod_m) {
    s.prepare();
    std::vector<JetVec> gv;
    for (const auto& g : gens) gv.push_back(parse_jet_vector(g, s.ring));
    StandardBasis S = std_basis(gv);
    QuotientBasis Q = quotient_monomials(S, mod_m);
    json ms = json::array();
    std::string text = "standard monomials:";
    for (const ModuleMonomial& m : Q.monomials) {
        ms.push_back(monomial_json(m, *s.ring, S.ncomp()));
        text += " " + to_string(m, *s.ring, S.ncomp());
    }
    text += Q.complete ? "\ncomplete basis, dim = " + std::to_string(Q.monomials.size())
                       : "\nincomplete (quotient not finite at this truncation)";
    emit(s, json{{"record", "quotient-basis"}, {"monomials", ms}, {"complete", Q.complete},
                 {"dim", Q.monomials.size()}},
         text);
    return 0;
}

int run_profile(Session& s, const std::string& ftext) {
    s.prepare();
    Jet f = parse_jet(ftext, s.ring);
    SingularityProfile p = profile(f);
    json rec{{"record", "profile"}, {"hessian_rank", p.hessian_rank}, {"corank", p.corank}};
    auto put = [&](const char* key, const auto& opt) {
        if (opt) rec[key] = *opt;
        else rec[key] = nullptr;
    };
    put("order", p.order);
    put("diff_order", p.diff_order);
    put("milnor", p.milnor);
    put("tjurina", p.tjurina);
    auto show = [](const auto& opt) {
        return opt ? std::to_string(*opt) : std::string("not detected below truncation");
    };
    std::string text = "ord = " + show(p.order) + "\nd(f) = " + show(p.diff_order) +
                       "\nmilnor = " + show(p.milnor) + "\ntjurina = " + show(p.tjurina) +
                       "\nhessian rank = " + std::to_string(p.hessian_rank) +
                       "\ncorank = " + std::to_string(p.corank);
    emit(s, rec, text);
    return 0;
}

int run_determinacy(Session& s, const std::string& ftext, const std::string& mode) {
    s.prepare();
    Jet f = parse_jet(ftext, s.ring);
    DeterminacyBound d =
        determinacy_bound(f, mode == "contact" ? DeterminacyMode::contact : DeterminacyMode::right);
    json rec{{"record", "determinacy"}, {"mode", mode}, {"k", d.k},
             {"bound_main", d.bound_main}, {"bound", d.bound}};
    std::string text = mode + " determinacy: k = " + std::to_string(d.k) +
                       ", bound = " + std::to_string(d.bound);
    if (d.newton_k) {
        rec["newton_k"] = *d.newton_k;
        rec["newton_bound"] = *d.newton_bound;
        text += " (order-2 route " + std::to_string(d.bound_main) + ", Newton route " +
                std::to_string(*d.newton_bound) + ")";
    }
    emit(s, rec, text);
    return 0;
}

int run_split(Session& s, const std::string& ftext, bool normalize) {
    s.prepare();
    Jet f = parse_jet(ftext, s.ring);
    SplitResult sr = split(f);
    if (normalize) sr = normalize_coefficients(sr, default_hooks());
    json tr = json::array();
    for (const Jet& t : sr.transform) tr.push_back(jet_json(t));
    json rec{{"record", "split"},
             {"rank", sr.rank},
             {"quadratic", jet_json(sr.quadratic_part)},
             {"residual", jet_json(sr.residual)},
             {"transform", tr},
             {"normalized", sr.normalized}};
    json qc = json::array();
    for (const Scalar& a : sr.quad_coeffs) qc.push_back(to_string(a));
    rec["quad_coeffs"] = qc;
    if (sr.char2_type) rec["char2_type"] = std::string(1, *sr.char2_type);
    std::string text = "rank = " + std::to_string(sr.rank) + "\nquadratic part = " +
                       to_string(sr.quadratic_part) + "\nresidual = " + to_string(sr.residual);
    if (sr.char2_type) text += std::string("\nnormal form type: (") + *sr.char2_type + ")";
    text += "\ntransform:";
    for (std::size_t i = 0; i < sr.transform.size(); ++i)
        text += "\n  " + s.ring->var(i) + " -> " + to_string(sr.transform[i]);
    emit(s, rec, text);
    return 0;
}

json family_json(const VersalFamily& fam) {
    json cof = json::array();
    for (const JetVec& g : fam.cofactors) cof.push_back(vec_json(g));
    json fj = json::array();
    for (const Jet& fi : fam.family) fj.push_back(jet_json(fi));
    return json{{"params", fam.params},
                {"cofactors", cof},
                {"family", fj},
                {"kind", fam.deformation ? "deformation" : "right-unfolding"},
                {"minimal", fam.minimal}};
}

std::string family_text(const VersalFamily& fam) {
    std::string text = fam.deformation ? "semiuniversal deformation" : "semiuniversal unfolding";
    text += ", " + std::to_string(fam.params.size()) + " parameter(s)\n";
    for (std::size_t i = 0; i < fam.family.size(); ++i)
        text += "F" + std::to_string(i + 1) + " = " + to_string(fam.family[i]) + "\n";
    text += "cofactors:";
    for (const JetVec& g : fam.cofactors) text += " " + to_string(g);
    return text;
}

int run_unfold(Session& s, const std::string& ftext) {
    s.prepare();
    VersalFamily fam = semiuniversal_unfolding(parse_jet(ftext, s.ring));
    emit(s, json{{"record", "unfold"}, {"family", family_json(fam)}}, family_text(fam));
    return 0;
}

int run_versal_def(Session& s, const std::vector<std::string>& ftexts) {
    s.prepare();
    std::vector<Jet> fv;
    for (const auto& t : ftexts) fv.push_back(parse_jet(t, s.ring));
    VersalFamily fam = semiuniversal_deformation(fv);
    emit(s, json{{"record", "versal-def"}, {"family", family_json(fam)}}, family_text(fam));
    return 0;
}

int run_cartan(Session& s, const std::string& problem_file) {
    std::ifstream in(problem_file);
    if (!in) fail(errc::bad_input, "cannot open problem file " + problem_file);
    json j;
    in >> j;
    s.prepare();
    std::vector<std::string> svars = j.value("svars", std::vector<std::string>{"s"});
    RingPtr xr = s.ring;
    RingPtr sr = make_ring(xr->field(), svars, xr->trunc());
    RingPtr xs = extend_ring(xr, svars, xr->trunc());
    CartanProblem p;
    for (const auto& a : j.value("a", std::vector<std::string>{}))
        p.a.push_back(parse_jet_vector(a, xr));
    for (const auto& b : j.value("b", std::vector<std::string>{}))
        p.b.push_back(parse_jet_vector(b, xr));
    p.C = parse_jet_vector(j.at("C").get<std::string>(), xs);
    p.x_ring = xr;
    p.s_ring = sr;
    p.rho = j.contains("rho") ? parse_radius(j["rho"].get<std::string>(), xr->nvars())
                              : RadiusVector::uniform(xr->nvars(), Rat(1, 2));
    p.tau = j.contains("tau") ? parse_radius(j["tau"].get<std::string>(), sr->nvars())
                              : RadiusVector::uniform(sr->nvars(), Rat(1, 2));
    CartanSolution sol = cartan_solve(p);
    json zj = json::array(), yj = json::array();
    for (const Jet& z : sol.z) zj.push_back(jet_json(z));
    for (const Jet& y : sol.y) yj.push_back(jet_json(y));
    json rec{{"record", "cartan-solve"},
             {"z", zj},
             {"y", yj},
             {"L", to_string(sol.L)},
             {"L_core", to_string(sol.L_core)},
             {"rho_used", rat_list(sol.rho_used.entries())},
             {"norm_C", to_string(sol.norm_C)},
             {"norm_y", rat_list(sol.norm_y)},
             {"norm_z", rat_list(sol.norm_z)},
             {"bounds_verified", sol.bounds_verified}};
    std::string text;
    for (std::size_t i = 0; i < sol.z.size(); ++i)
        text += "z" + std::to_string(i + 1) + " = " + to_string(sol.z[i]) + "\n";
    for (std::size_t j2 = 0; j2 < sol.y.size(); ++j2)
        text += "y" + std::to_string(j2 + 1) + " = " + to_string(sol.y[j2]) + "\n";
    text += "L = " + to_string(sol.L) + " (core " + to_string(sol.L_core) + ")";
    text += sol.bounds_verified ? ", bounds verified" : ", bounds observed only";
    emit(s, rec, text);
    return 0;
}

int run_jet_equiv(Session& s, const std::string& ftext, const std::string& gtext,
                  const TraceOpts& topt) {
    s.prepare();
    Jet f = parse_jet(ftext, s.ring);
    Jet g = parse_jet(gtext, s.ring);
    RightEquivResult r = jet_right_equiv(f, g);
    json tr = json::array();
    for (const Jet& p : r.phi) tr.push_back(jet_json(p));
    std::string text = "phi found:";
    for (std::size_t i = 0; i < r.phi.size(); ++i)
        text += "\n  " + s.ring->var(i) + " -> " + to_string(r.phi[i]);
    emit(s, json{{"record", "jet-equiv"}, {"phi", tr}}, text);
    report_trace(s, r.trace, topt, s.ring->nvars(), 0);
    return 0;
}

int run_induce_unfold(Session& s, const std::string& ftext, const std::string& gtext,
                      const std::vector<std::string>& params, const TraceOpts& topt) {
    s.prepare();
    Jet f = parse_jet(ftext, s.ring);
    VersalFamily fam = semiuniversal_unfolding(f);
    if (params.empty()) fail(errc::bad_input, "declare the parameters of G with --params");
    RingPtr xt = extend_ring(s.ring, params, s.deg);
    Jet G = parse_jet(gtext, xt);
    InducedUnfolding ind = induce_unfolding(fam, G);
    json phij = json::array(), Phij = json::array();
    for (const Jet& p : ind.phi) phij.push_back(jet_json(p));
    for (const Jet& p : ind.Phi) Phij.push_back(jet_json(p));
    json rec{{"record", "induce-unfold"}, {"phi", phij}, {"Phi", Phij},
             {"alpha", jet_json(ind.alpha)}, {"family", family_json(fam)}};
    std::string text = "base change:";
    for (std::size_t j = 0; j < ind.phi.size(); ++j)
        text += "\n  " + fam.params[j] + " -> " + to_string(ind.phi[j]);
    text += "\ncoordinates:";
    for (std::size_t i = 0; i < ind.Phi.size(); ++i)
        text += "\n  " + s.ring->var(i) + " -> " + to_string(ind.Phi[i]);
    text += "\ntranslation alpha = " + to_string(ind.alpha);
    emit(s, rec, text);
    report_trace(s, ind.trace, topt, s.ring->nvars(), params.size());
    return 0;
}

int run_induce_def(Session& s, const std::vector<std::string>& ftexts, const std::string& gtext,
                   const std::vector<std::string>& params, const TraceOpts& topt) {
    s.prepare();
    std::vector<Jet> fv;
    for (const auto& t : ftexts) fv.push_back(parse_jet(t, s.ring));
    VersalFamily fam = semiuniversal_deformation(fv);
    if (params.empty()) fail(errc::bad_input, "declare the parameters of G with --params");
    RingPtr xs = extend_ring(s.ring, params, s.deg);
    JetVec G = parse_jet_vector(gtext, xs);
    std::vector<Jet> gv;
    for (std::size_t i = 0; i < G.size(); ++i) gv.push_back(G[i]);
    InducedDeformation ind = induce_deformation(fam, gv);
    json phij = json::array(), Phij = json::array(), Mj = json::array();
    for (const Jet& p : ind.phi) phij.push_back(jet_json(p));
    for (const Jet& p : ind.Phi) Phij.push_back(jet_json(p));
    for (const auto& row : ind.M) {
        json r = json::array();
        for (const Jet& m : row) r.push_back(jet_json(m));
        Mj.push_back(r);
    }
    json rec{{"record", "induce-def"}, {"phi", phij}, {"Phi", Phij}, {"M", Mj},
             {"family", family_json(fam)}};
    std::string text = "base change:";
    for (std::size_t j = 0; j < ind.phi.size(); ++j)
        text += "\n  " + fam.params[j] + " -> " + to_string(ind.phi[j]);
    text += "\ncoordinates:";
    for (std::size_t i = 0; i < ind.Phi.size(); ++i)
        text += "\n  " + s.ring->var(i) + " -> " + to_string(ind.Phi[i]);
    text += "\nM:";
    for (const auto& row : ind.M) {
        text += "\n  [";
        for (std::size_t j = 0; j < row.size(); ++j) text += (j ? "; " : "") + to_string(row[j]);
        text += "]";
    }
    emit(s, rec, text);
    report_trace(s, ind.trace, topt, s.ring->nvars(), params.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local singularity toolkit over real valued fields"};
    app.require_subcommand(1);

    Session s;
    std::string ftext, gtext, eps, mode = "right", problem_file;
    std::vector<std::string> gens, params, ftexts;
    bool want_cert = false, mod_m = false, normalize = false;
    TraceOpts topt;

    auto* divide_cmd = app.add_subcommand("divide", "Grauert division f = sum q_i f_i + r");
    add_common(divide_cmd, s);
    divide_cmd->add_option("f", ftext, "dividend")->required();
    divide_cmd->add_option("divisors", gens, "divisors, in order")->required();
    divide_cmd->add_flag("--certificate", want_cert, "attach the norm certificate");
    divide_cmd->add_option("--eps", eps, "contraction factor in (0,1), default 1/2");

    auto* nf_cmd = app.add_subcommand("nf", "normal form w.r.t. an ideal/submodule");
    add_common(nf_cmd, s);
    nf_cmd->add_option("f", ftext)->required();
    nf_cmd->add_option("generators", gens)->required();

    auto* sb_cmd = app.add_subcommand("std-basis", "standard basis for deglex");
    add_common(sb_cmd, s);
    sb_cmd->add_option("generators", gens)->required();

    auto* mem_cmd = app.add_subcommand("member", "ideal membership mod m^{D+1}");
    add_common(mem_cmd, s);
    mem_cmd->add_option("f", ftext)->required();
    mem_cmd->add_option("generators", gens)->required();

    auto* qb_cmd = app.add_subcommand("quotient-basis", "standard monomials of the quotient");
    add_common(qb_cmd, s);
    qb_cmd->add_option("generators", gens)->required();
    qb_cmd->add_flag("--mod-m", mod_m, "basis of m/I instead of K{x}/I");

    auto* prof_cmd = app.add_subcommand("profile", "orders, Milnor/Tjurina numbers, Hessian");
    add_common(prof_cmd, s);
    prof_cmd->add_option("f", ftext)->required();

    auto* det_cmd = app.add_subcommand("determinacy", "finite determinacy bounds");
    add_common(det_cmd, s);
    det_cmd->add_option("f", ftext)->required();
    det_cmd->add_option("--mode", mode, "right | contact")
        ->check(CLI::IsMember({"right", "contact"}));

    auto* split_cmd = app.add_subcommand("split", "splitting-lemma normal form");
    add_common(split_cmd, s);
    split_cmd->add_option("f", ftext)->required();
    split_cmd->add_flag("--normalize", normalize, "normalize coefficients via the field hooks");

    auto* unf_cmd = app.add_subcommand("unfold", "semiuniversal unfolding");
    add_common(unf_cmd, s);
    unf_cmd->add_option("f", ftext)->required();

    auto* vd_cmd = app.add_subcommand("versal-def", "ICIS semiuniversal deformation");
    add_common(vd_cmd, s);
    vd_cmd->add_option("f", ftexts, "components f_1..f_k")->required();

    auto* ca_cmd = app.add_subcommand("cartan-solve", "bounded linear solver");
    add_common(ca_cmd, s);
    ca_cmd->add_option("--problem", problem_file, "JSON problem file")->required();

    auto* je_cmd = app.add_subcommand("jet-equiv", "right equivalence via the extension loop");
    add_common(je_cmd, s);
    je_cmd->add_option("f", ftext)->required();
    je_cmd->add_option("g", gtext)->required();
    add_trace_opts(je_cmd, topt);

    auto* iu_cmd = app.add_subcommand("induce-unfold", "induce an unfolding from the semiuniversal one");
    add_common(iu_cmd, s);
    iu_cmd->add_option("f", ftext)->required();
    iu_cmd->add_option("G", gtext)->required();
    iu_cmd->add_option("--params", params, "parameter names of G")->delimiter(',');
    add_trace_opts(iu_cmd, topt);

    auto* id_cmd = app.add_subcommand("induce-def", "induce a deformation from the semiuniversal one");
    add_common(id_cmd, s);
    id_cmd->add_option("--fiber", ftexts, "special fiber components f_1..f_k (repeatable)")->required();
    id_cmd->add_option("G", gtext, "deformation, vector for k > 1")->required();
    id_cmd->add_option("--params", params, "parameter names of G")->delimiter(',');
    add_trace_opts(id_cmd, topt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (divide_cmd->parsed()) return run_divide(s, ftext, gens, want_cert, eps);
        if (nf_cmd->parsed()) return run_nf(s, ftext, gens);
        if (sb_cmd->parsed()) return run_std_basis(s, gens);
        if (mem_cmd->parsed()) return run_member(s, ftext, gens);
        if (qb_cmd->parsed()) return run_quotient_basis(s, gens, mod_m);
        if (prof_cmd->parsed()) return run_profile(s, ftext);
        if (det_cmd->parsed()) return run_determinacy(s, ftext, mode);
        if (split_cmd->parsed()) return run_split(s, ftext, normalize);
        if (unf_cmd->parsed()) return run_unfold(s, ftext);
        if (vd_cmd->parsed()) return run_versal_def(s, ftexts);
        if (ca_cmd->parsed()) return run_cartan(s, problem_file);
        if (je_cmd->parsed()) return run_jet_equiv(s, ftext, gtext, topt);
        if (iu_cmd->parsed()) return run_induce_unfold(s, ftext, gtext, params, topt);
        if (id_cmd->parsed()) return run_induce_def(s, ftexts, gtext, params, topt);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 9;
    }
    return 1;
}
