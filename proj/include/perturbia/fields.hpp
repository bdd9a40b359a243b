#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perturbia/rational.hpp"

namespace perturbia::fields {

/// Immutable description of the polynomial algebra: spacetime dimension, the
/// diagonal metric, and the commuting generators (fields, their conjugation
/// pairing, and formal constants that derivatives annihilate).
class FieldConfig {
public:
    struct Symbol {
        std::string name;
        int conj;          // index of the star partner (self for real fields)
        bool constant;     // formal coefficient: no variation, zero derivative
    };

    FieldConfig(int dim, std::vector<int> metric);

    int dim() const { return dim_; }
    const std::vector<int>& metric() const { return metric_; }
    int metric_sign(int mu) const;

    int add_field(const std::string& name);                              // self-conjugate
    std::pair<int, int> add_conjugate_pair(const std::string& name,
                                           const std::string& star_name);
    int add_constant(const std::string& name);

    int find(const std::string& name) const;            // -1 when absent
    int require(const std::string& name) const;         // throws ConfigError
    const Symbol& symbol(int id) const { return symbols_.at(static_cast<std::size_t>(id)); }
    int symbol_count() const { return static_cast<int>(symbols_.size()); }
    int conj_of(int id) const { return symbol(id).conj; }

private:
    int add_symbol(const std::string& name, int conj, bool constant);

    int dim_;
    std::vector<int> metric_;
    std::vector<Symbol> symbols_;
};

using ConfigPtr = std::shared_ptr<const FieldConfig>;

/// Commuting multi-index of coordinate derivatives.
struct DerivativeWord {
    std::vector<std::uint8_t> counts;

    explicit DerivativeWord(int dim = 0) : counts(static_cast<std::size_t>(dim), 0) {}
    int dim() const { return static_cast<int>(counts.size()); }
    int order() const;
    int operator[](int mu) const { return counts[static_cast<std::size_t>(mu)]; }
    DerivativeWord raised(int mu) const;
    DerivativeWord lowered(int mu) const;

    auto operator<=>(const DerivativeWord&) const = default;
};

/// One generator occurrence: a (possibly differentiated) field, or its formal
/// variation delta(field).
struct Factor {
    int sym = 0;
    bool variation = false;
    DerivativeWord word;

    auto operator<=>(const Factor&) const = default;
};

/// Canonically sorted multiset of factors.
struct Monomial {
    std::vector<Factor> factors;

    void normalize();
    int degree() const { return static_cast<int>(factors.size()); }
    int field_degree(const FieldConfig& cfg) const;    // non-constant factors
    int variation_degree() const;
    int max_word_order() const;

    auto operator<=>(const Monomial&) const = default;
};

/// Element of the polynomial algebra over the Gaussian rationals: a sum of
/// canonical monomials with nonzero coefficients.
class FieldPolynomial {
public:
    FieldPolynomial() = default;
    explicit FieldPolynomial(ConfigPtr cfg) : cfg_(std::move(cfg)) {}

    static FieldPolynomial generator(ConfigPtr cfg, int sym,
                                     DerivativeWord word = DerivativeWord());
    static FieldPolynomial generator(ConfigPtr cfg, const std::string& name);
    static FieldPolynomial constant(ConfigPtr cfg, const GRat& c);

    const ConfigPtr& config() const { return cfg_; }
    const std::map<Monomial, GRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, const GRat& c);
    GRat coefficient(const Monomial& m) const;

    FieldPolynomial& operator+=(const FieldPolynomial& o);
    FieldPolynomial& operator-=(const FieldPolynomial& o);
    friend FieldPolynomial operator+(FieldPolynomial a, const FieldPolynomial& b) { return a += b; }
    friend FieldPolynomial operator-(FieldPolynomial a, const FieldPolynomial& b) { return a -= b; }
    friend FieldPolynomial operator-(const FieldPolynomial& a);
    friend FieldPolynomial operator*(const FieldPolynomial& a, const FieldPolynomial& b);
    friend FieldPolynomial operator*(const GRat& s, const FieldPolynomial& a);
    friend bool operator==(const FieldPolynomial& a, const FieldPolynomial& b) {
        return a.terms_ == b.terms_;
    }

    FieldPolynomial pow(int k) const;

    /// Coordinate derivative (a derivation; constants are annihilated).
    FieldPolynomial d(int mu) const;
    FieldPolynomial d(const DerivativeWord& w) const;

    /// Formal partial derivative with respect to the generator (sym, word).
    FieldPolynomial partial(int sym, const DerivativeWord& word) const;

    /// Star conjugation: swaps paired fields and conjugates coefficients.
    FieldPolynomial conjugated() const;

    /// Replace every variation factor delta(∂_w f) by ∂_w(gen[f]).
    FieldPolynomial substitute_variations(const std::map<int, FieldPolynomial>& gen) const;

    bool has_variations() const;
    int max_word_order() const;
    int max_degree() const;
    int min_degree() const;

private:
    void require_config(const FieldPolynomial& o) const;

    ConfigPtr cfg_;
    std::map<Monomial, GRat> terms_;
};

/// Sum_mu d_mu j[mu].
FieldPolynomial divergence(const std::vector<FieldPolynomial>& j);

/// Contraction sum_mu g^{mu mu} (d_mu f)(d_mu g): the `dd` macro.
FieldPolynomial dd_contraction(const FieldPolynomial& f, const FieldPolynomial& g);

/// Canonical text rendering; parse_lagrangian inverts it for variation-free
/// polynomials.
std::string to_string(const FieldPolynomial& p);
std::string to_string(const FieldConfig& cfg, const Monomial& m);

}  // namespace perturbia::fields
