#pragma once

#include <array>
#include <map>

#include "perturbia/rational.hpp"

namespace perturbia::zerodim {

/// Inclusive truncation orders for the three formal variables.  The series
/// in this module live in (lambda, j, hbar); the effective action reuses the
/// second slot for the classical field.
struct Caps {
    int a = 4;
    int b = 6;
    int c = 3;
    friend bool operator==(const Caps&, const Caps&) = default;
};

/// Truncated multivariate power series with exact rational coefficients.
/// Keys beyond the caps are silently dropped by every operation, so ring
/// arithmetic is consistent under truncation.
class FormalSeries {
public:
    using Key = std::array<int, 3>;

    explicit FormalSeries(Caps caps) : caps_(caps) {}

    static FormalSeries constant(Caps caps, const Rat& v) {
        FormalSeries s(caps);
        s.set_coeff(0, 0, 0, v);
        return s;
    }

    const Caps& caps() const { return caps_; }
    const std::map<Key, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rat coeff(int a, int b, int c = 0) const {
        auto it = coeffs_.find(Key{a, b, c});
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    void set_coeff(int a, int b, int c, const Rat& v) {
        if (a > caps_.a || b > caps_.b || c > caps_.c) return;
        if (a < 0 || b < 0 || c < 0) throw DomainError("FormalSeries: negative exponent");
        if (v == 0)
            coeffs_.erase(Key{a, b, c});
        else
            coeffs_[Key{a, b, c}] = v;
    }

    void add_coeff(int a, int b, int c, const Rat& v) { set_coeff(a, b, c, coeff(a, b, c) + v); }

    FormalSeries& operator+=(const FormalSeries& o) {
        require_same_caps(o);
        for (const auto& [k, v] : o.coeffs_) add_coeff(k[0], k[1], k[2], v);
        return *this;
    }
    FormalSeries& operator-=(const FormalSeries& o) {
        require_same_caps(o);
        for (const auto& [k, v] : o.coeffs_) add_coeff(k[0], k[1], k[2], -v);
        return *this;
    }
    friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
    friend FormalSeries operator-(const FormalSeries& a) {
        FormalSeries out(a.caps_);
        for (const auto& [k, v] : a.coeffs_) out.coeffs_[k] = -v;
        return out;
    }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
        a.require_same_caps(b);
        FormalSeries out(a.caps_);
        for (const auto& [ka, va] : a.coeffs_)
            for (const auto& [kb, vb] : b.coeffs_) {
                const int x = ka[0] + kb[0], y = ka[1] + kb[1], z = ka[2] + kb[2];
                if (x > a.caps_.a || y > a.caps_.b || z > a.caps_.c) continue;
                out.add_coeff(x, y, z, va * vb);
            }
        return out;
    }

    friend FormalSeries operator*(const Rat& s, const FormalSeries& a) {
        FormalSeries out(a.caps_);
        if (s == 0) return out;
        for (const auto& [k, v] : a.coeffs_) out.coeffs_[k] = s * v;
        return out;
    }

    friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
        return a.caps_ == b.caps_ && a.coeffs_ == b.coeffs_;
    }

    /// d/dj (the second variable).
    FormalSeries derivative_j() const {
        FormalSeries out(caps_);
        for (const auto& [k, v] : coeffs_)
            if (k[1] > 0) out.add_coeff(k[0], k[1] - 1, k[2], Rat(k[1]) * v);
        return out;
    }

    /// Multiplication by j.
    FormalSeries mul_j() const { return shifted(0, 1, 0); }

    /// Multiplication by a monomial in the three variables.
    FormalSeries shifted(int da, int db, int dc) const {
        FormalSeries out(caps_);
        for (const auto& [k, v] : coeffs_) out.add_coeff(k[0] + da, k[1] + db, k[2] + dc, v);
        return out;
    }

    FormalSeries truncated(Caps caps) const {
        FormalSeries out(caps);
        for (const auto& [k, v] : coeffs_) out.set_coeff(k[0], k[1], k[2], v);
        return out;
    }

    /// Formal exponential; requires zero constant term.
    FormalSeries exp() const {
        if (coeff(0, 0, 0) != 0) throw DomainError("FormalSeries::exp: nonzero constant term");
        FormalSeries out = constant(caps_, Rat(1));
        FormalSeries term = constant(caps_, Rat(1));
        const int max_k = caps_.a + caps_.b + caps_.c;
        for (int k = 1; k <= max_k; ++k) {
            term = term * *this;
            if (term.is_zero()) break;
            out += rat(1, k) * term;
            term = rat(1, k) * term;   // keep term = this^k / k!
        }
        return out;
    }

    /// Formal logarithm; requires constant term 1.
    FormalSeries log() const {
        if (coeff(0, 0, 0) != 1) throw DomainError("FormalSeries::log: constant term must be 1");
        FormalSeries u = *this - constant(caps_, Rat(1));
        FormalSeries out(caps_);
        FormalSeries pw = constant(caps_, Rat(1));
        const int max_k = caps_.a + caps_.b + caps_.c;
        for (int k = 1; k <= max_k; ++k) {
            pw = pw * u;
            if (pw.is_zero()) break;
            out += rat(k % 2 == 1 ? 1 : -1, k) * pw;
        }
        return out;
    }

    /// Substitute another series for the second variable (which must carry no
    /// hbar dependence on either side).  Used for the Legendre composition.
    FormalSeries substitute_second(const FormalSeries& inner) const {
        for (const auto& [k, v] : coeffs_)
            if (k[2] != 0) throw DomainError("substitute_second: outer series depends on hbar");
        FormalSeries out(inner.caps());
        std::map<int, FormalSeries> powers;
        powers.emplace(0, constant(inner.caps(), Rat(1)));
        for (const auto& [k, v] : coeffs_) {
            const int deg = k[1];
            if (powers.find(deg) == powers.end()) {
                int have = powers.rbegin()->first;
                FormalSeries p = powers.rbegin()->second;
                while (have < deg) {
                    p = p * inner;
                    ++have;
                    powers.emplace(have, p);
                }
            }
            FormalSeries term = v * powers.at(deg);
            for (const auto& [tk, tv] : term.coeffs()) {
                if (tk[0] + k[0] > inner.caps().a) continue;
                out.add_coeff(tk[0] + k[0], tk[1], tk[2], tv);
            }
        }
        return out;
    }

    /// Sum the hbar grading into the hbar-free slice (evaluation at hbar=1).
    FormalSeries eval_hbar_one() const {
        FormalSeries out(Caps{caps_.a, caps_.b, 0});
        for (const auto& [k, v] : coeffs_) out.add_coeff(k[0], k[1], 0, v);
        return out;
    }

    FormalSeries hbar_slice(int c) const {
        FormalSeries out(Caps{caps_.a, caps_.b, 0});
        for (const auto& [k, v] : coeffs_)
            if (k[2] == c) out.set_coeff(k[0], k[1], 0, v);
        return out;
    }

private:
    void require_same_caps(const FormalSeries& o) const {
        if (!(caps_ == o.caps_)) throw DomainError("FormalSeries: truncation caps mismatch");
    }

    Caps caps_;
    std::map<Key, Rat> coeffs_;
};

}  // namespace perturbia::zerodim
