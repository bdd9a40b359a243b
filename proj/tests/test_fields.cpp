#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "perturbia/fields.hpp"
#include "perturbia/variation.hpp"

using namespace perturbia;
using namespace perturbia::fields;

namespace {

struct RealScalar {
    ConfigPtr cfg;
    int phi, m, lambda;
    RealScalar(int dim, std::vector<int> metric) {
        auto c = std::make_shared<FieldConfig>(dim, std::move(metric));
        phi = c->add_field("phi");
        m = c->add_constant("m");
        lambda = c->add_constant("lambda");
        cfg = c;
    }
    FieldPolynomial sym(int id) const { return FieldPolynomial::generator(cfg, id); }
    FieldPolynomial d(int id, int mu) const { return sym(id).d(mu); }
};

struct ComplexScalar {
    ConfigPtr cfg;
    int phi, phis, m;
    explicit ComplexScalar(int dim = 4) {
        auto c = std::make_shared<FieldConfig>(dim, std::vector<int>(dim, 1));
        auto pr = c->add_conjugate_pair("phi", "phis");
        phi = pr.first;
        phis = pr.second;
        m = c->add_constant("m");
        cfg = c;
    }
    FieldPolynomial sym(int id) const { return FieldPolynomial::generator(cfg, id); }
};

FieldPolynomial random_lagrangian(std::mt19937_64& rng, const ConfigPtr& cfg) {
    FieldPolynomial L(cfg);
    std::uniform_int_distribution<int> nterms(1, 5), deg(1, 4), coeff(-4, 4), order(0, 2);
    std::uniform_int_distribution<int> coord(0, cfg->dim() - 1);
    std::vector<int> field_ids;
    for (int s = 0; s < cfg->symbol_count(); ++s)
        if (!cfg->symbol(s).constant) field_ids.push_back(s);
    std::uniform_int_distribution<std::size_t> pick(0, field_ids.size() - 1);
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial mono;
        const int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            DerivativeWord w(cfg->dim());
            const int o = order(rng);
            for (int q = 0; q < o; ++q) w = w.raised(coord(rng));
            mono.factors.push_back(Factor{field_ids[pick(rng)], false, w});
        }
        L.add_term(std::move(mono), GRat(rat(coeff(rng))));
    }
    return L;
}

}  // namespace

TEST_CASE("vibrating string: the wave equation") {
    RealScalar s(2, {1, -1});
    auto L = s.d(s.phi, 0) * s.d(s.phi, 0) - s.d(s.phi, 1) * s.d(s.phi, 1);
    auto res = vary(L);
    auto expect = rat(-2) * s.sym(s.phi).d(0).d(0) + rat(2) * s.sym(s.phi).d(1).d(1);
    CHECK(res.el_terms.at(s.phi) == expect);
}

TEST_CASE("zero Lagrangian varies to nothing") {
    RealScalar s(2, {1, -1});
    auto res = vary(FieldPolynomial(s.cfg));
    for (const auto& [sym, p] : res.el_terms) CHECK(p.is_zero());
    for (const auto& p : res.boundary_current) CHECK(p.is_zero());
}

TEST_CASE("complex scalar: worked variation") {
    ComplexScalar s;
    auto phi = s.sym(s.phi), phis = s.sym(s.phis), m = s.sym(s.m);
    auto L = dd_contraction(phis, phi) + m * m * phis * phi;
    auto res = vary(L);

    // el for phis is m^2 phi - box phi
    FieldPolynomial box(s.cfg);
    for (int mu = 0; mu < 4; ++mu)
        box += GRat(Rat(s.cfg->metric_sign(mu))) * phi.d(mu).d(mu);
    CHECK(res.el_terms.at(s.phis) == m * m * phi - box);

    // J^mu = delta(phis) d^mu phi + d^mu phis delta(phi)
    std::map<int, FieldPolynomial> delta_only_phi{{s.phi, phi}};
    std::map<int, FieldPolynomial> delta_only_phis{{s.phis, phis}};
    for (int mu = 0; mu < 4; ++mu) {
        GRat g(Rat(s.cfg->metric_sign(mu)));
        auto expected = g * (phis * phi.d(mu) + phis.d(mu) * phi);
        auto substituted = res.boundary_current[static_cast<std::size_t>(mu)]
                               .substitute_variations({{s.phi, phi}, {s.phis, phis}});
        CHECK(substituted == expected);
    }
}

TEST_CASE("re-expansion identity: delta L = sum delta(f) el[f] + div J") {
    std::mt19937_64 rng(123);
    for (int n : {2, 3, 4}) {
        std::vector<int> metric(static_cast<std::size_t>(n), -1);
        metric[0] = 1;
        RealScalar one(n, metric);
        ComplexScalar two(n);
        for (int iter = 0; iter < 25; ++iter) {
            for (const ConfigPtr& cfg : {one.cfg, two.cfg}) {
                auto L = random_lagrangian(rng, cfg);
                auto res = vary(L);
                FieldPolynomial rhs = divergence(res.boundary_current);
                for (const auto& [sym, el] : res.el_terms) {
                    FieldPolynomial delta_f(cfg);
                    Monomial mono;
                    mono.factors.push_back(Factor{sym, true, DerivativeWord(cfg->dim())});
                    delta_f.add_term(std::move(mono), GRat(1));
                    rhs += delta_f * el;
                }
                CHECK(rhs == total_variation(L));
            }
        }
    }
}

TEST_CASE("euler_lagrange agrees with vary on random Lagrangians") {
    std::mt19937_64 rng(321);
    RealScalar s(3, {1, -1, -1});
    for (int iter = 0; iter < 40; ++iter) {
        auto L = random_lagrangian(rng, s.cfg);
        auto via_formula = euler_lagrange(L);
        auto via_variation = vary(L).el_terms;
        CHECK(via_formula == via_variation);
    }
}

TEST_CASE("vary is linear with canonical boundary currents") {
    std::mt19937_64 rng(55);
    RealScalar s(2, {1, -1});
    for (int iter = 0; iter < 25; ++iter) {
        auto L1 = random_lagrangian(rng, s.cfg);
        auto L2 = random_lagrangian(rng, s.cfg);
        GRat a(rat(3, 2)), b(rat(-5));
        auto sum = vary(a * L1 + b * L2);
        auto r1 = vary(L1);
        auto r2 = vary(L2);
        for (const auto& [sym, el] : sum.el_terms)
            CHECK(el == a * r1.el_terms.at(sym) + b * r2.el_terms.at(sym));
        for (std::size_t mu = 0; mu < sum.boundary_current.size(); ++mu)
            CHECK(sum.boundary_current[mu] ==
                  a * r1.boundary_current[mu] + b * r2.boundary_current[mu]);
    }
}

TEST_CASE("Klein-Gordon and phi^4 stationarity expressions") {
    RealScalar s(4, {1, -1, -1, -1});
    auto phi = s.sym(s.phi), m = s.sym(s.m), lam = s.sym(s.lambda);
    auto kg = dd_contraction(phi, phi) + m * m * phi * phi;

    FieldPolynomial box(s.cfg);
    for (int mu = 0; mu < 4; ++mu)
        box += GRat(Rat(s.cfg->metric_sign(mu))) * phi.d(mu).d(mu);

    auto el_kg = euler_lagrange(kg).at(s.phi);
    CHECK(el_kg == rat(2) * (m * m * phi - box));

    auto quartic = kg + lam * phi.pow(4);
    auto el4 = euler_lagrange(quartic).at(s.phi);
    CHECK(el4 == rat(2) * (m * m * phi + rat(2) * lam * phi.pow(3) - box));
}

TEST_CASE("component Maxwell: d_mu F^{mu nu} = J^nu") {
    const int n = 4;
    auto c = std::make_shared<FieldConfig>(n, std::vector<int>{1, -1, -1, -1});
    std::vector<int> A, J;
    for (int mu = 0; mu < n; ++mu) A.push_back(c->add_field("A" + std::to_string(mu)));
    for (int mu = 0; mu < n; ++mu) J.push_back(c->add_field("J" + std::to_string(mu)));
    ConfigPtr cfg = c;
    auto gen = [&](int id) { return FieldPolynomial::generator(cfg, id); };
    auto gsign = [&](int mu) { return GRat(Rat(cfg->metric_sign(mu))); };

    // F_{mu nu} = d_nu A_mu - d_mu A_nu
    auto F_lo = [&](int mu, int nu) { return gen(A[mu]).d(nu) - gen(A[nu]).d(mu); };
    auto F_hi = [&](int mu, int nu) { return gsign(mu) * gsign(nu) * F_lo(mu, nu); };

    FieldPolynomial L(cfg);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) L -= rat(1, 4) * (F_hi(mu, nu) * F_lo(mu, nu));
    for (int mu = 0; mu < n; ++mu) L -= gen(J[mu]) * gen(A[mu]);

    auto el = euler_lagrange(L);
    CHECK(el == vary(L).el_terms);
    for (int mu = 0; mu < n; ++mu) {
        FieldPolynomial expect(cfg);
        for (int nu = 0; nu < n; ++nu) expect += F_hi(mu, nu).d(nu);
        expect -= gen(J[mu]);
        CHECK(el.at(A[mu]) == expect);
    }
}

TEST_CASE("U(1) Noether current of the complex scalar") {
    ComplexScalar s;
    auto phi = s.sym(s.phi), phis = s.sym(s.phis), m = s.sym(s.m);
    auto L = dd_contraction(phis, phi) + m * m * phis * phi;
    std::map<int, FieldPolynomial> gen{{s.phi, GRat::i() * phi}, {s.phis, -GRat::i() * phis}};

    auto j = noether_current(L, gen);
    for (int mu = 0; mu < 4; ++mu) {
        GRat g(Rat(s.cfg->metric_sign(mu)));
        auto paper_current = g * (phis * phi.d(mu) - phi * phis.d(mu));
        CHECK(j[static_cast<std::size_t>(mu)] == -GRat::i() * paper_current);
    }

    // conservation modulo the stationarity ideal, as an exact identity
    auto el = vary(L).el_terms;
    FieldPolynomial check = divergence(j);
    for (const auto& [sym, g] : gen) check += g * el.at(sym);
    CHECK(check.is_zero());
}

TEST_CASE("trivial generator gives the zero current") {
    ComplexScalar s;
    auto phi = s.sym(s.phi), phis = s.sym(s.phis);
    auto L = dd_contraction(phis, phi);
    std::map<int, FieldPolynomial> gen{{s.phi, FieldPolynomial(s.cfg)},
                                       {s.phis, FieldPolynomial(s.cfg)}};
    auto j = noether_current(L, gen);
    for (const auto& comp : j) CHECK(comp.is_zero());
}

TEST_CASE("non-symmetry is rejected with a residual") {
    ComplexScalar s;
    auto phi = s.sym(s.phi), phis = s.sym(s.phis), m = s.sym(s.m);
    auto L = dd_contraction(phis, phi) + m * m * phis * phi;
    std::map<int, FieldPolynomial> bad{{s.phi, phi}, {s.phis, phis}};
    CHECK(!symmetry_defect(L, bad).is_zero());
    CHECK_THROWS_AS(noether_current(L, bad), DomainError);
}

TEST_CASE("energy-momentum tensor of the real scalar") {
    RealScalar s(2, {1, -1});
    auto phi = s.sym(s.phi), m = s.sym(s.m);
    auto L = dd_contraction(phi, phi) + m * m * phi * phi;
    for (int nu = 0; nu < 2; ++nu) {
        std::map<int, FieldPolynomial> gen{{s.phi, phi.d(nu)}};
        std::vector<FieldPolynomial> surface(2, FieldPolynomial(s.cfg));
        surface[static_cast<std::size_t>(nu)] = L;
        auto j = noether_current(L, gen, &surface);
        for (int mu = 0; mu < 2; ++mu) {
            GRat g(Rat(s.cfg->metric_sign(mu)));
            auto expect = rat(2) * (g * (phi.d(nu) * phi.d(mu)));
            if (mu == nu) expect -= L;
            CHECK(j[static_cast<std::size_t>(mu)] == expect);
        }
    }
}

TEST_CASE("conservation certificates") {
    ComplexScalar s;
    auto phi = s.sym(s.phi), phis = s.sym(s.phis), m = s.sym(s.m);
    auto L = dd_contraction(phis, phi) + m * m * phis * phi;
    auto el = vary(L).el_terms;
    std::map<int, FieldPolynomial> gen{{s.phi, GRat::i() * phi}, {s.phis, -GRat::i() * phis}};
    auto j = noether_current(L, gen);

    auto cert = check_conserved(j, el, 2);
    REQUIRE(cert.status == ConservationStatus::conserved);
    CHECK(cert.reconstruct(el) == divergence(j));

    // d_t phi is not in the stationarity ideal at bound 2
    std::vector<FieldPolynomial> notcons(4, FieldPolynomial(s.cfg));
    notcons[0] = phi;
    auto bad = check_conserved(notcons, el, 2);
    CHECK(bad.status == ConservationStatus::not_conserved_at_bound);

    // zero current: conserved with an empty witness
    std::vector<FieldPolynomial> zero(4, FieldPolynomial(s.cfg));
    auto triv = check_conserved(zero, el, 2);
    CHECK(triv.status == ConservationStatus::conserved);
    CHECK(triv.witness.empty());

    // bound smaller than the derivative order of the divergence
    auto inc = check_conserved(j, el, 1);
    CHECK(inc.status == ConservationStatus::inconclusive);
}

TEST_CASE("configuration errors") {
    RealScalar a(2, {1, -1});
    RealScalar b(2, {1, -1});
    CHECK_THROWS_AS(a.sym(a.phi) + b.sym(b.phi), ConfigError);
    CHECK_THROWS_AS(a.cfg->require("nonexistent"), ConfigError);
    auto dup = std::make_shared<FieldConfig>(2, std::vector<int>{1, -1});
    dup->add_field("x");
    CHECK_THROWS_AS(dup->add_field("x"), ConfigError);
    CHECK_THROWS_AS(FieldConfig(0, {}), ConfigError);
    CHECK_THROWS_AS(FieldConfig(2, {1, 2}), ConfigError);
}
