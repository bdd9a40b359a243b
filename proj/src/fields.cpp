#include "perturbia/fields.hpp"

#include <algorithm>

namespace perturbia::fields {

FieldConfig::FieldConfig(int dim, std::vector<int> metric) : dim_(dim), metric_(std::move(metric)) {
    if (dim < 1) throw ConfigError("FieldConfig: dimension must be positive");
    if (static_cast<int>(metric_.size()) != dim)
        throw ConfigError("FieldConfig: metric length must equal the dimension");
    for (int s : metric_)
        if (s != 1 && s != -1) throw ConfigError("FieldConfig: metric entries must be +1 or -1");
}

int FieldConfig::metric_sign(int mu) const {
    if (mu < 0 || mu >= dim_) throw ConfigError("metric_sign: index out of range");
    return metric_[static_cast<std::size_t>(mu)];
}

int FieldConfig::add_symbol(const std::string& name, int conj, bool constant) {
    if (name.empty()) throw ConfigError("add_symbol: empty name");
    if (find(name) != -1) throw ConfigError("add_symbol: duplicate symbol '" + name + "'");
    symbols_.push_back(Symbol{name, conj, constant});
    return static_cast<int>(symbols_.size()) - 1;
}

int FieldConfig::add_field(const std::string& name) {
    const int id = add_symbol(name, 0, false);
    symbols_[static_cast<std::size_t>(id)].conj = id;
    return id;
}

std::pair<int, int> FieldConfig::add_conjugate_pair(const std::string& name,
                                                    const std::string& star_name) {
    const int a = add_symbol(name, 0, false);
    const int b = add_symbol(star_name, a, false);
    symbols_[static_cast<std::size_t>(a)].conj = b;
    return {a, b};
}

int FieldConfig::add_constant(const std::string& name) {
    const int id = add_symbol(name, 0, true);
    symbols_[static_cast<std::size_t>(id)].conj = id;
    return id;
}

int FieldConfig::find(const std::string& name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return static_cast<int>(i);
    return -1;
}

int FieldConfig::require(const std::string& name) const {
    const int id = find(name);
    if (id == -1) throw ConfigError("unknown symbol '" + name + "'");
    return id;
}

int DerivativeWord::order() const {
    int s = 0;
    for (auto c : counts) s += c;
    return s;
}

DerivativeWord DerivativeWord::raised(int mu) const {
    DerivativeWord w = *this;
    w.counts.at(static_cast<std::size_t>(mu)) += 1;
    return w;
}

DerivativeWord DerivativeWord::lowered(int mu) const {
    DerivativeWord w = *this;
    auto& c = w.counts.at(static_cast<std::size_t>(mu));
    if (c == 0) throw DomainError("DerivativeWord::lowered: order underflow");
    c -= 1;
    return w;
}

void Monomial::normalize() { std::sort(factors.begin(), factors.end()); }

int Monomial::field_degree(const FieldConfig& cfg) const {
    int d = 0;
    for (const auto& f : factors)
        if (!cfg.symbol(f.sym).constant) ++d;
    return d;
}

int Monomial::variation_degree() const {
    int d = 0;
    for (const auto& f : factors)
        if (f.variation) ++d;
    return d;
}

int Monomial::max_word_order() const {
    int m = 0;
    for (const auto& f : factors) m = std::max(m, f.word.order());
    return m;
}

FieldPolynomial FieldPolynomial::generator(ConfigPtr cfg, int sym, DerivativeWord word) {
    if (!cfg) throw ConfigError("generator: null config");
    if (sym < 0 || sym >= cfg->symbol_count()) throw ConfigError("generator: bad symbol id");
    if (word.dim() == 0) word = DerivativeWord(cfg->dim());
    if (word.dim() != cfg->dim()) throw ConfigError("generator: word dimension mismatch");
    FieldPolynomial p(cfg);
    Monomial m;
    m.factors.push_back(Factor{sym, false, std::move(word)});
    p.add_term(std::move(m), GRat(1));
    return p;
}

FieldPolynomial FieldPolynomial::generator(ConfigPtr cfg, const std::string& name) {
    if (!cfg) throw ConfigError("generator: null config");
    return generator(cfg, cfg->require(name));
}

FieldPolynomial FieldPolynomial::constant(ConfigPtr cfg, const GRat& c) {
    FieldPolynomial p(std::move(cfg));
    p.add_term(Monomial{}, c);
    return p;
}

void FieldPolynomial::add_term(Monomial m, const GRat& c) {
    if (c.is_zero()) return;
    m.normalize();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GRat FieldPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GRat() : it->second;
}

void FieldPolynomial::require_config(const FieldPolynomial& o) const {
    if (cfg_ && o.cfg_ && cfg_ != o.cfg_)
        throw ConfigError("FieldPolynomial: mixing polynomials from different configurations");
}

FieldPolynomial& FieldPolynomial::operator+=(const FieldPolynomial& o) {
    require_config(o);
    if (!cfg_) cfg_ = o.cfg_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

FieldPolynomial& FieldPolynomial::operator-=(const FieldPolynomial& o) {
    require_config(o);
    if (!cfg_) cfg_ = o.cfg_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

FieldPolynomial operator-(const FieldPolynomial& a) {
    FieldPolynomial out(a.cfg_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
}

FieldPolynomial operator*(const FieldPolynomial& a, const FieldPolynomial& b) {
    a.require_config(b);
    FieldPolynomial out(a.cfg_ ? a.cfg_ : b.cfg_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
            out.add_term(std::move(m), ca * cb);
        }
    return out;
}

FieldPolynomial operator*(const GRat& s, const FieldPolynomial& a) {
    FieldPolynomial out(a.cfg_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
}

FieldPolynomial FieldPolynomial::pow(int k) const {
    if (k < 0) throw DomainError("FieldPolynomial::pow: negative power");
    FieldPolynomial out = constant(cfg_, GRat(1));
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

FieldPolynomial FieldPolynomial::d(int mu) const {
    if (!cfg_) return {};
    if (mu < 0 || mu >= cfg_->dim()) throw ConfigError("d: coordinate index out of range");
    FieldPolynomial out(cfg_);
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            if (i > 0 && m.factors[i] == m.factors[i - 1]) continue;   // handled with multiplicity
            const auto& f = m.factors[i];
            if (cfg_->symbol(f.sym).constant) continue;
            const auto mult = std::count(m.factors.begin(), m.factors.end(), f);
            Monomial n = m;
            n.factors[i].word = f.word.raised(mu);
            out.add_term(std::move(n), GRat(Rat(static_cast<long>(mult))) * c);
        }
    }
    return out;
}

FieldPolynomial FieldPolynomial::d(const DerivativeWord& w) const {
    FieldPolynomial out = *this;
    for (int mu = 0; mu < w.dim(); ++mu)
        for (int k = 0; k < w[mu]; ++k) out = out.d(mu);
    return out;
}

FieldPolynomial FieldPolynomial::partial(int sym, const DerivativeWord& word) const {
    FieldPolynomial out(cfg_);
    const Factor target{sym, false, word};
    for (const auto& [m, c] : terms_) {
        const auto mult = std::count(m.factors.begin(), m.factors.end(), target);
        if (mult == 0) continue;
        Monomial n = m;
        n.factors.erase(std::find(n.factors.begin(), n.factors.end(), target));
        out.add_term(std::move(n), GRat(Rat(static_cast<long>(mult))) * c);
    }
    return out;
}

FieldPolynomial FieldPolynomial::conjugated() const {
    FieldPolynomial out(cfg_);
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        for (auto& f : n.factors) f.sym = cfg_->conj_of(f.sym);
        out.add_term(std::move(n), c.conj());
    }
    return out;
}

FieldPolynomial FieldPolynomial::substitute_variations(
    const std::map<int, FieldPolynomial>& gen) const {
    FieldPolynomial out(cfg_);
    for (const auto& [m, c] : terms_) {
        FieldPolynomial term = FieldPolynomial::constant(cfg_, c);
        for (const auto& f : m.factors) {
            if (!f.variation) {
                Monomial single;
                single.factors.push_back(f);
                FieldPolynomial g(cfg_);
                g.add_term(std::move(single), GRat(1));
                term = term * g;
                continue;
            }
            auto it = gen.find(f.sym);
            FieldPolynomial image =
                it == gen.end() ? FieldPolynomial(cfg_) : it->second.d(f.word);
            term = term * image;
        }
        out += term;
    }
    return out;
}

bool FieldPolynomial::has_variations() const {
    for (const auto& [m, c] : terms_)
        if (m.variation_degree() > 0) return true;
    return false;
}

int FieldPolynomial::max_word_order() const {
    int v = 0;
    for (const auto& [m, c] : terms_) v = std::max(v, m.max_word_order());
    return v;
}

int FieldPolynomial::max_degree() const {
    int v = 0;
    for (const auto& [m, c] : terms_) v = std::max(v, m.degree());
    return v;
}

int FieldPolynomial::min_degree() const {
    int v = terms_.empty() ? 0 : terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) v = std::min(v, m.degree());
    return v;
}

FieldPolynomial divergence(const std::vector<FieldPolynomial>& j) {
    FieldPolynomial out;
    for (std::size_t mu = 0; mu < j.size(); ++mu) out += j[mu].d(static_cast<int>(mu));
    return out;
}

FieldPolynomial dd_contraction(const FieldPolynomial& f, const FieldPolynomial& g) {
    const auto& cfg = f.config() ? f.config() : g.config();
    if (!cfg) throw ConfigError("dd_contraction: missing configuration");
    FieldPolynomial out(cfg);
    for (int mu = 0; mu < cfg->dim(); ++mu) {
        GRat sign(Rat(cfg->metric_sign(mu)));
        out += sign * (f.d(mu) * g.d(mu));
    }
    return out;
}

namespace {

std::string factor_string(const FieldConfig& cfg, const Factor& f) {
    std::string core = cfg.symbol(f.sym).name;
    if (f.variation) core = "delta(" + core + ")";
    for (int mu = cfg.dim() - 1; mu >= 0; --mu)
        for (int k = 0; k < f.word[mu]; ++k) core = "d" + std::to_string(mu) + "(" + core + ")";
    return core;
}

}  // namespace

std::string to_string(const FieldConfig& cfg, const Monomial& m) {
    if (m.factors.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < m.factors.size()) {
        std::size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!out.empty()) out += "*";
        out += factor_string(cfg, m.factors[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string to_string(const FieldPolynomial& p) {
    if (p.is_zero()) return "0";
    const auto& cfg = *p.config();
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        std::string mono = to_string(cfg, m);
        bool negative = false;
        std::string coeff;
        if (c.is_real()) {
            Rat r = c.re;
            if (r < 0) {
                negative = true;
                r = -r;
            }
            if (r != 1 || m.factors.empty()) coeff = fraction_string(r);
        } else {
            coeff = "(" + perturbia::to_string(c) + ")";
        }
        std::string term;
        if (coeff.empty())
            term = mono;
        else if (m.factors.empty())
            term = coeff;
        else
            term = coeff + "*" + mono;
        if (out.empty())
            out = (negative ? "-" : "") + term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out;
}

}  // namespace perturbia::fields
