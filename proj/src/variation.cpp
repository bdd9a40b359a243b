#include "perturbia/variation.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace perturbia::fields {

FieldPolynomial total_variation(const FieldPolynomial& lagrangian) {
    const auto& cfg = lagrangian.config();
    if (!cfg) return {};
    if (lagrangian.has_variations())
        throw ConfigError("total_variation: input already contains variation factors");
    FieldPolynomial out(cfg);
    for (const auto& [m, c] : lagrangian.terms()) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            if (i > 0 && m.factors[i] == m.factors[i - 1]) continue;
            const auto& f = m.factors[i];
            if (cfg->symbol(f.sym).constant) continue;
            const auto mult = std::count(m.factors.begin(), m.factors.end(), f);
            Monomial n = m;
            n.factors[i].variation = true;
            out.add_term(std::move(n), GRat(Rat(static_cast<long>(mult))) * c);
        }
    }
    return out;
}

VariationResult vary(const FieldPolynomial& lagrangian) {
    const auto& cfg = lagrangian.config();
    VariationResult res;
    if (!cfg) return res;
    res.boundary_current.assign(static_cast<std::size_t>(cfg->dim()), FieldPolynomial(cfg));

    FieldPolynomial work = total_variation(lagrangian);
    while (true) {
        // first term, in canonical order, whose variation factor still
        // carries a derivative
        const Monomial* found = nullptr;
        std::size_t var_pos = 0;
        for (const auto& [m, c] : work.terms()) {
            for (std::size_t i = 0; i < m.factors.size(); ++i) {
                if (m.factors[i].variation && m.factors[i].word.order() > 0) {
                    found = &m;
                    var_pos = i;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) break;

        const Monomial mon = *found;               // copy: work is edited below
        const GRat coeff = work.coefficient(mon);
        const Factor var = mon.factors[var_pos];
        int mu = 0;
        while (var.word[mu] == 0) ++mu;

        Monomial rest = mon;
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(var_pos));
        const Factor reduced{var.sym, true, var.word.lowered(mu)};

        FieldPolynomial rest_poly(cfg);
        rest_poly.add_term(rest, GRat(1));
        FieldPolynomial reduced_poly(cfg);
        Monomial reduced_mon;
        reduced_mon.factors.push_back(reduced);
        reduced_poly.add_term(std::move(reduced_mon), GRat(1));

        // c * (d_w delta f) * R  =  d_mu[ c * (d_w' delta f) * R ]
        //                           - c * (d_w' delta f) * d_mu R
        res.boundary_current[static_cast<std::size_t>(mu)] +=
            coeff * (reduced_poly * rest_poly);
        FieldPolynomial processed(cfg);
        processed.add_term(mon, coeff);
        work -= processed;
        work -= coeff * (reduced_poly * rest_poly.d(mu));
    }

    for (const auto& [m, c] : work.terms()) {
        std::size_t var_pos = m.factors.size();
        for (std::size_t i = 0; i < m.factors.size(); ++i)
            if (m.factors[i].variation) {
                var_pos = i;
                break;
            }
        if (var_pos == m.factors.size())
            throw DomainError("vary: residual term without variation factor");
        Monomial rest = m;
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(var_pos));
        auto [it, inserted] = res.el_terms.try_emplace(m.factors[var_pos].sym, cfg);
        it->second.add_term(std::move(rest), c);
    }
    // every varied field gets an entry, zero or not
    for (int s = 0; s < cfg->symbol_count(); ++s)
        if (!cfg->symbol(s).constant) res.el_terms.try_emplace(s, cfg);
    return res;
}

std::map<int, FieldPolynomial> euler_lagrange(const FieldPolynomial& lagrangian) {
    const auto& cfg = lagrangian.config();
    std::map<int, FieldPolynomial> out;
    if (!cfg) return out;
    if (lagrangian.has_variations())
        throw ConfigError("euler_lagrange: input contains variation factors");

    std::set<std::pair<int, DerivativeWord>> generators;
    for (const auto& [m, c] : lagrangian.terms())
        for (const auto& f : m.factors)
            if (!cfg->symbol(f.sym).constant) generators.emplace(f.sym, f.word);

    for (int s = 0; s < cfg->symbol_count(); ++s)
        if (!cfg->symbol(s).constant) out.emplace(s, FieldPolynomial(cfg));

    for (const auto& [sym, word] : generators) {
        FieldPolynomial contrib = lagrangian.partial(sym, word).d(word);
        if (word.order() % 2 == 1) contrib = -contrib;
        out.at(sym) += contrib;
    }
    return out;
}

FieldPolynomial symmetry_defect(const FieldPolynomial& lagrangian,
                                const std::map<int, FieldPolynomial>& gen,
                                const std::vector<FieldPolynomial>* surface) {
    const auto& cfg = lagrangian.config();
    for (const auto& [sym, g] : gen) {
        if (sym < 0 || sym >= cfg->symbol_count() || cfg->symbol(sym).constant)
            throw ConfigError("symmetry_defect: generator for unknown or constant symbol");
        if (g.has_variations()) throw ConfigError("symmetry_defect: generator contains variations");
    }
    FieldPolynomial defect = total_variation(lagrangian).substitute_variations(gen);
    if (surface) {
        if (static_cast<int>(surface->size()) != cfg->dim())
            throw ConfigError("symmetry_defect: surface term has wrong arity");
        defect -= divergence(*surface);
    }
    return defect;
}

std::vector<FieldPolynomial> noether_current(const FieldPolynomial& lagrangian,
                                             const std::map<int, FieldPolynomial>& gen,
                                             const std::vector<FieldPolynomial>* surface) {
    FieldPolynomial defect = symmetry_defect(lagrangian, gen, surface);
    if (!defect.is_zero())
        throw DomainError("noether_current: not a symmetry; residual = " + to_string(defect));
    auto res = vary(lagrangian);
    std::vector<FieldPolynomial> j;
    j.reserve(res.boundary_current.size());
    for (std::size_t mu = 0; mu < res.boundary_current.size(); ++mu) {
        FieldPolynomial comp = res.boundary_current[mu].substitute_variations(gen);
        if (surface) comp -= (*surface)[mu];
        j.push_back(std::move(comp));
    }
    return j;
}

FieldPolynomial ConservationCertificate::reconstruct(
    const std::map<int, FieldPolynomial>& el) const {
    FieldPolynomial out;
    for (const auto& w : witness) {
        FieldPolynomial mult;
        const auto& base = el.at(w.field);
        mult = FieldPolynomial(base.config());
        mult.add_term(w.multiplier, w.coefficient);
        out += mult * base.d(w.word);
    }
    return out;
}

namespace {

/// Sparse exact row reduction: maintains an echelon basis of candidate
/// columns, each remembering its expansion in the original candidates.
struct Eliminator {
    using Vec = std::map<Monomial, GRat>;           // sparse column
    using Combo = std::map<std::size_t, GRat>;      // candidate index -> weight

    struct Row {
        Monomial pivot;
        Vec vec;
        Combo combo;
    };
    std::vector<Row> rows;

    static void axpy(Vec& x, const GRat& a, const Vec& y) {
        for (const auto& [m, c] : y) {
            auto it = x.find(m);
            if (it == x.end()) {
                GRat v = a * c;
                if (!v.is_zero()) x.emplace(m, std::move(v));
            } else {
                it->second += a * c;
                if (it->second.is_zero()) x.erase(it);
            }
        }
    }

    static void axpy(Combo& x, const GRat& a, const Combo& y) {
        for (const auto& [i, c] : y) {
            auto it = x.find(i);
            if (it == x.end())
                x.emplace(i, a * c);
            else {
                it->second += a * c;
                if (it->second.is_zero()) x.erase(it);
            }
        }
    }

    void reduce(Vec& v, Combo& combo) const {
        for (const auto& row : rows) {
            auto it = v.find(row.pivot);
            if (it == v.end()) continue;
            GRat f = -it->second;
            axpy(v, f, row.vec);
            axpy(combo, f, row.combo);
        }
    }

    void insert(Vec v, Combo combo) {
        reduce(v, combo);
        if (v.empty()) return;
        Row row;
        row.pivot = v.begin()->first;
        GRat lead = v.begin()->second;
        for (auto& [m, c] : v) c /= lead;
        for (auto& [i, c] : combo) c /= lead;
        row.vec = std::move(v);
        row.combo = std::move(combo);
        rows.push_back(std::move(row));
    }
};

void all_words(int dim, int max_order, std::vector<DerivativeWord>& out) {
    DerivativeWord w(dim);
    std::function<void(int, int)> rec = [&](int mu, int left) {
        if (mu == dim) {
            out.push_back(w);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            w.counts[static_cast<std::size_t>(mu)] = static_cast<std::uint8_t>(k);
            rec(mu + 1, left - k);
        }
        w.counts[static_cast<std::size_t>(mu)] = 0;
    };
    rec(0, max_order);
    std::sort(out.begin(), out.end());
}

}  // namespace

ConservationCertificate check_conserved(const std::vector<FieldPolynomial>& j,
                                        const std::map<int, FieldPolynomial>& el,
                                        int derivative_bound, std::size_t max_candidates) {
    ConservationCertificate cert;
    FieldPolynomial target = divergence(j);
    if (target.is_zero()) {
        cert.status = ConservationStatus::conserved;
        return cert;
    }
    const auto& cfg = target.config();

    // the candidate space cannot even express the divergence when the bound
    // is below its derivative order
    if (derivative_bound < target.max_word_order()) {
        cert.status = ConservationStatus::inconclusive;
        return cert;
    }

    std::vector<DerivativeWord> words;
    all_words(cfg->dim(), derivative_bound, words);

    int min_el_degree = target.max_degree();
    for (const auto& [sym, e] : el)
        if (!e.is_zero()) min_el_degree = std::min(min_el_degree, e.min_degree());
    const int max_mult_degree = std::max(0, target.max_degree() - min_el_degree);

    // multiplier factor alphabet: differentiated fields plus bare constants
    std::vector<Factor> alphabet;
    for (int s = 0; s < cfg->symbol_count(); ++s) {
        if (cfg->symbol(s).constant) {
            alphabet.push_back(Factor{s, false, DerivativeWord(cfg->dim())});
        } else {
            for (const auto& w : words) alphabet.push_back(Factor{s, false, w});
        }
    }

    std::vector<Monomial> multipliers;
    Monomial cur;
    std::function<void(std::size_t, int)> build = [&](std::size_t start, int left) {
        multipliers.push_back(cur);
        if (left == 0) return;
        for (std::size_t i = start; i < alphabet.size(); ++i) {
            cur.factors.push_back(alphabet[i]);
            build(i, left - 1);
            cur.factors.pop_back();
        }
    };
    build(0, max_mult_degree);

    struct Candidate {
        int field;
        DerivativeWord word;
        Monomial multiplier;
    };
    std::vector<Candidate> cands;
    std::vector<FieldPolynomial> cand_polys;
    for (const auto& [sym, e] : el) {
        if (e.is_zero()) continue;
        for (const auto& w : words) {
            FieldPolynomial dw = e.d(w);
            for (const auto& m : multipliers) {
                if (cands.size() > max_candidates)
                    throw ResourceError("check_conserved: candidate space too large");
                FieldPolynomial mono(cfg);
                mono.add_term(m, GRat(1));
                FieldPolynomial col = mono * dw;
                if (col.is_zero()) continue;
                if (col.min_degree() > target.max_degree()) continue;
                cands.push_back(Candidate{sym, w, m});
                cand_polys.push_back(std::move(col));
            }
        }
    }

    Eliminator elim;
    for (std::size_t i = 0; i < cand_polys.size(); ++i) {
        Eliminator::Vec v(cand_polys[i].terms().begin(), cand_polys[i].terms().end());
        Eliminator::Combo combo{{i, GRat(1)}};
        elim.insert(std::move(v), std::move(combo));
    }

    Eliminator::Vec rhs(target.terms().begin(), target.terms().end());
    Eliminator::Combo combo;
    elim.reduce(rhs, combo);
    if (!rhs.empty()) {
        cert.status = ConservationStatus::not_conserved_at_bound;
        return cert;
    }
    cert.status = ConservationStatus::conserved;
    for (const auto& [idx, c] : combo) {
        const auto& cd = cands[idx];
        cert.witness.push_back(WitnessTerm{cd.field, cd.word, cd.multiplier, -c});
    }
    return cert;
}

}  // namespace perturbia::fields
