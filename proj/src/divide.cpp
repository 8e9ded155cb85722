#include "germ/divide.hpp"

namespace germ {

namespace {

struct Divisor {
    JetVec normalized; // LC = 1
    JetVec tail;
    ModuleMonomial lm;
    Scalar lc;
};

std::vector<Divisor> prepare_divisors(const std::vector<JetVec>& divisors) {
    if (divisors.empty()) fail(errc::zero_divisor, "no divisors given");
    std::vector<Divisor> out;
    out.reserve(divisors.size());
    for (const JetVec& g : divisors) {
        if (g.is_zero()) fail(errc::zero_divisor, "zero divisor");
        LeadingData ld = leading_data(g);
        const Field& F = g.ring()->field();
        if (F.is_zero(ld.lc)) fail(errc::noninvertible_leading_coefficient, "leading coefficient is zero");
        Scalar inv = F.inv(ld.lc);
        Divisor d;
        d.normalized = g.scaled(inv);
        d.lm = ld.lm;
        d.lc = ld.lc;
        d.tail = ld.tail.scaled(inv);
        out.push_back(std::move(d));
    }
    return out;
}

// number of leading variables none of the divisors touch
std::size_t untouched_prefix(const std::vector<Divisor>& divs, std::size_t nvars) {
    std::size_t s = nvars;
    for (const Divisor& d : divs)
        for (std::size_t c = 0; c < d.normalized.size(); ++c)
            for (const auto& [a, coeff] : d.normalized[c].terms())
                for (std::size_t i = 0; i < s; ++i)
                    if (a[i] != 0) { s = i; break; }
    return s;
}

} // namespace

RadiusVector shrink_radius(const std::vector<JetVec>& divisors, const Rat& eps,
                           const RadiusVector& rho_cap) {
    if (eps <= 0 || eps >= 1) fail(errc::bad_input, "epsilon must be in (0,1)");
    std::vector<Divisor> divs = prepare_divisors(divisors);
    const RingPtr ring = divisors[0].ring();
    const Field& F = ring->field();
    const std::size_t n = ring->nvars();
    for (const JetVec& g : divisors)
        if (!g.exact()) fail(errc::not_polynomial, "radius certificate needs polynomial divisors");

    RadiusVector rho = RadiusVector::uniform(n, Rat(1, 2)).min_with(rho_cap);
    if (n == 0) return rho;

    // Degree-equal tail constraints: for a tail term c x^a e_k of f_i with
    // |a| = |a(i)| require |c| rho^a < eps/(2 N_i) rho^{a(i)}.  They are
    // settled by the position l of the first entry where a differs from
    // a(i) (there a_l > a_l(i)), descending, halving rho_l until the exact
    // inequality holds.  Shrinking rho_l never disturbs constraints already
    // settled at larger l.
    struct Constraint {
        Exponent a;
        Exponent ai;
        Rat absc;
        Rat budget; // eps / (2 N_i)
        std::size_t l; // first index with a[l] != ai[l]; n when a == ai
    };
    std::vector<Constraint> eq_constraints;
    for (const Divisor& d : divs) {
        std::vector<Constraint> mine;
        for (std::size_t c = 0; c < d.tail.size(); ++c)
            for (const auto& [a, coeff] : d.tail[c].terms()) {
                if (a.degree() != d.lm.alpha.degree()) continue;
                Constraint con;
                con.a = a;
                con.ai = d.lm.alpha;
                con.absc = F.valuation(coeff);
                con.l = n;
                for (std::size_t i = 0; i < n; ++i)
                    if (a[i] != d.lm.alpha[i]) { con.l = i; break; }
                mine.push_back(std::move(con));
            }
        if (mine.empty()) continue;
        Rat budget = eps / Rat(2 * static_cast<unsigned long>(mine.size()));
        budget.canonicalize();
        for (auto& con : mine) {
            con.budget = budget;
            eq_constraints.push_back(con);
        }
    }

    std::vector<Rat> rv = rho.entries();
    auto holds = [&](const Constraint& con) {
        Rat lhs = con.absc * RadiusVector(rv).pow(con.a);
        Rat rhs = con.budget * RadiusVector(rv).pow(con.ai);
        lhs.canonicalize();
        rhs.canonicalize();
        return lhs < rhs;
    };
    for (std::size_t s = n; s-- > 0;) {
        for (const Constraint& con : eq_constraints) {
            if (con.l != s) continue;
            unsigned guard = 0;
            while (!holds(con)) {
                rv[s] /= 2;
                rv[s].canonicalize();
                if (++guard > 4096) fail(errc::internal, "radius shrinking did not settle");
            }
        }
    }
    // a tail term on the same monomial in another slot is radius-independent
    for (const Constraint& con : eq_constraints)
        if (con.l == n && !(con.absc < con.budget))
            fail(errc::certificate_unachievable,
                 "tail term shares the leading exponent in another slot; no radius works");

    rho = RadiusVector(rv);

    // lambda scaling handles the higher-degree tail block f^{(2)}
    Rat lambda(1);
    for (const Divisor& d : divs) {
        Rat norm_f2(0);
        for (std::size_t c = 0; c < d.tail.size(); ++c)
            for (const auto& [a, coeff] : d.tail[c].terms())
                if (a.degree() > d.lm.alpha.degree()) norm_f2 += F.valuation(coeff) * rho.pow(a);
        norm_f2.canonicalize();
        if (norm_f2 == 0) continue;
        Rat bound = eps * rho.pow(d.lm.alpha) / (2 * norm_f2);
        bound.canonicalize();
        Rat cand = bound / 2;
        cand.canonicalize();
        if (cand < lambda) lambda = cand;
    }
    RadiusVector delta = rho.scaled(lambda);

    for (const Divisor& d : divs) {
        if (d.tail.is_zero()) continue;
        Rat lhs = d.tail.norm(delta);
        Rat rhs = eps * delta.pow(d.lm.alpha);
        rhs.canonicalize();
        if (!(lhs < rhs))
            fail(errc::certificate_unachievable, "tail bound not achievable at any radius");
    }
    return delta;
}

DivisionResult divide(const JetVec& f, const std::vector<JetVec>& divisors,
                      const DivisionOptions& opts) {
    std::vector<Divisor> divs = prepare_divisors(divisors);
    const RingPtr ring = f.ring();
    const Field& F = ring->field();
    const std::size_t m = divs.size();
    for (const JetVec& g : divisors)
        if (g.size() != f.size() || !g.ring()->same(*ring))
            fail(errc::variable_mismatch, "divisor shape mismatch");

    DivisionResult res;
    res.quotients.assign(m, Jet::zero(ring));
    res.remainder = JetVec(ring, f.size());

    // LM(w_j) strictly decreases, so the step count is bounded by the
    // number of module monomials at truncation
    const std::size_t cap = count_monomials_upto(ring->nvars(), ring->trunc()) * f.size() + 2;
    JetVec w = f;
    while (!w.is_zero()) {
        if (opts.keep_steps) res.w_steps.push_back(w);
        if (res.steps > cap) fail(errc::internal, "division failed to terminate");
        // Gamma split of w: each term goes to the first divisor whose
        // leading monomial divides it, otherwise to the remainder
        std::vector<Jet> qstep(m, Jet::zero(ring));
        for (std::size_t k = 0; k < w.size(); ++k) {
            for (const auto& [a, c] : w[k].terms()) {
                ModuleMonomial mm{a, static_cast<Nat>(k)};
                bool assigned = false;
                for (std::size_t i = 0; i < m; ++i) {
                    if (module_divides(divs[i].lm, mm)) {
                        qstep[i].add_term(a.minus(divs[i].lm.alpha), c);
                        assigned = true;
                        break;
                    }
                }
                if (!assigned) res.remainder[k].add_term(a, c);
            }
        }
        JetVec wnext(ring, f.size());
        for (std::size_t i = 0; i < m; ++i) {
            if (qstep[i].is_zero()) continue;
            wnext -= divs[i].tail.mul(qstep[i]);
            res.quotients[i] += qstep[i];
        }
        w = std::move(wnext);
        ++res.steps;
    }

    if (opts.want_certificate) {
        NormCertificate cert;
        cert.epsilon = opts.epsilon;
        RadiusVector cap_rho = opts.rho_cap ? *opts.rho_cap
                                            : RadiusVector::uniform(ring->nvars(), Rat(1, 2));
        cert.delta = shrink_radius(divisors, opts.epsilon, cap_rho);
        cert.norm_f = f.norm(cert.delta);
        cert.norm_r = res.remainder.norm(cert.delta);
        Rat slack = Rat(1) / (Rat(1) - opts.epsilon);
        slack.canonicalize();
        cert.bound_r = slack * cert.norm_f;
        cert.bound_r.canonicalize();
        bool ok = cert.norm_r <= cert.bound_r;
        for (std::size_t i = 0; i < m; ++i) {
            Rat nq = res.quotients[i].norm(cert.delta);
            Rat bq = cert.bound_r / cert.delta.pow(divs[i].lm.alpha);
            bq.canonicalize();
            cert.norm_q.push_back(nq);
            cert.bound_q.push_back(bq);
            ok = ok && nq <= bq;
        }
        bool inputs_exact = f.exact();
        for (const JetVec& g : divisors) inputs_exact = inputs_exact && g.exact();
        cert.verified = ok && inputs_exact;

        // nested-scaling observation when divisors avoid a leading variable block
        std::size_t s = untouched_prefix(divs, ring->nvars());
        if (s > 0 && s < ring->nvars()) {
            cert.nested_split = s;
            RadiusVector nested = cert.delta.scaled_from(s, Rat(1, 2));
            Rat nf = f.norm(nested);
            Rat nr = res.remainder.norm(nested);
            Rat nb = slack * nf;
            nb.canonicalize();
            bool nok = nr <= nb;
            for (std::size_t i = 0; i < m; ++i) {
                Rat nq = res.quotients[i].norm(nested);
                Rat bq = nb / nested.pow(divs[i].lm.alpha);
                bq.canonicalize();
                nok = nok && nq <= bq;
            }
            cert.nested_observed_ok = nok;
        }
        res.certificate = std::move(cert);
    }

    // rescale quotients back to the original divisors
    for (std::size_t i = 0; i < m; ++i)
        if (!F.is_one(divs[i].lc)) res.quotients[i] = res.quotients[i].scaled(F.inv(divs[i].lc));

    return res;
}

JetVec normal_form(const JetVec& f, const std::vector<JetVec>& divisors) {
    return divide(f, divisors).remainder;
}

Jet normal_form(const Jet& f, const std::vector<Jet>& divisors) {
    std::vector<JetVec> divs;
    divs.reserve(divisors.size());
    for (const Jet& d : divisors) divs.push_back(JetVec::single(d));
    return divide(JetVec::single(f), divs).remainder[0];
}

Jet reciprocal(const Jet& u) {
    if (u.is_zero() || u.ring()->field().is_zero(u.constant_term()))
        fail(errc::division_by_zero, "reciprocal of a non-unit jet");
    Jet one = Jet::constant(u.ring(), u.ring()->field().one());
    return divide(one, std::vector<Jet>{u}).quotients[0];
}

} // namespace germ
