#pragma once

#include <functional>
#include <map>
#include <string>

#include "perturbia/rational.hpp"

namespace perturbia {

/// Sparse commutative polynomial in integer-indexed variables.  Small and
/// exact; the value algebra for renormalisation prescriptions and the
/// symbolic matrix entries of the slash calculus.
template <typename Coeff>
class SparsePoly {
public:
    using Exponents = std::map<int, int>;   // variable -> positive power

    SparsePoly() = default;

    static SparsePoly constant(const Coeff& c) {
        SparsePoly p;
        if (!(c == Coeff(0))) p.terms_.emplace(Exponents{}, c);
        return p;
    }

    static SparsePoly variable(int id, int power = 1) {
        SparsePoly p;
        if (power < 0) throw DomainError("SparsePoly: negative power");
        if (power == 0) return constant(Coeff(1));
        p.terms_.emplace(Exponents{{id, power}}, Coeff(1));
        return p;
    }

    const std::map<Exponents, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Coeff constant_value() const {
        if (terms_.empty()) return Coeff(0);
        if (!is_constant()) throw DomainError("SparsePoly: not a constant");
        return terms_.begin()->second;
    }

    void add_term(const Exponents& e, const Coeff& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!(c == Coeff(0))) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, Coeff(0) - c);
        return *this;
    }
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (const auto& [var, pw] : eb) e[var] += pw;
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend SparsePoly operator*(const Coeff& s, const SparsePoly& a) {
        SparsePoly out;
        if (s == Coeff(0)) return out;
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
        return out;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    std::string render(const std::function<std::string(int)>& var_name) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string mono;
            for (const auto& [var, pw] : e) {
                if (!mono.empty()) mono += "*";
                mono += var_name(var);
                if (pw > 1) mono += "^" + std::to_string(pw);
            }
            std::string cs = coeff_string(c);
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

private:
    static std::string coeff_string(const Rat& c) { return fraction_string(c); }
    static std::string coeff_string(const GRat& c) { return to_string(c); }

    std::map<Exponents, Coeff> terms_;
};

}  // namespace perturbia
