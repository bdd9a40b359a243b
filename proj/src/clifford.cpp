#include "perturbia/clifford.hpp"

#include <algorithm>
#include <bit>

namespace perturbia::clifford {

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0) throw DomainError("Signature: negative generator count");
    if (p + q > 30) throw ResourceError("Signature: dimension out of range");
}

int blade_grade(Blade b) { return std::popcount(b); }

BladeProduct blade_mul(Blade a, Blade b, const Signature& sig) {
    // transpositions: each generator of b moves past the generators of a
    // that sit above it
    int swaps = 0;
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        swaps += std::popcount(a >> (i + 1));
    }
    int sign = swaps % 2 == 0 ? 1 : -1;
    for (Blade common = a & b; common != 0; common &= common - 1) {
        const int i = std::countr_zero(common);
        if (i >= sig.p) sign = -sign;   // e_i^2 = -1 in the negative block
    }
    return BladeProduct{a ^ b, sign};
}

CliffordElement CliffordElement::scalar(const GRat& c) { return blade(0, c); }

CliffordElement CliffordElement::blade(Blade b, const GRat& c) {
    CliffordElement x;
    x.add(b, c);
    return x;
}

CliffordElement CliffordElement::generator(int i) {
    if (i < 0 || i >= 30) throw DomainError("CliffordElement: generator index out of range");
    return blade(Blade(1) << i, GRat(1));
}

GRat CliffordElement::coeff(Blade b) const {
    auto it = coeffs_.find(b);
    return it == coeffs_.end() ? GRat() : it->second;
}

void CliffordElement::add(Blade b, const GRat& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(b);
    if (it == coeffs_.end())
        coeffs_.emplace(b, c);
    else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

bool CliffordElement::is_scalar() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

GRat CliffordElement::scalar_value() const {
    if (!is_scalar()) throw DomainError("CliffordElement: not a scalar");
    return coeff(0);
}

int CliffordElement::max_grade() const {
    int g = 0;
    for (const auto& [b, c] : coeffs_) g = std::max(g, blade_grade(b));
    return g;
}

CliffordElement CliffordElement::grade_part(int k) const {
    CliffordElement out;
    for (const auto& [b, c] : coeffs_)
        if (blade_grade(b) == k) out.coeffs_.emplace(b, c);
    return out;
}

namespace {

int reversal_sign(int k) { return (k * (k - 1) / 2) % 2 == 0 ? 1 : -1; }
int involution_sign(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

CliffordElement CliffordElement::reversed() const {
    CliffordElement out;
    for (const auto& [b, c] : coeffs_)
        out.coeffs_.emplace(b, GRat(Rat(reversal_sign(blade_grade(b)))) * c);
    return out;
}

CliffordElement CliffordElement::grade_involution() const {
    CliffordElement out;
    for (const auto& [b, c] : coeffs_)
        out.coeffs_.emplace(b, GRat(Rat(involution_sign(blade_grade(b)))) * c);
    return out;
}

CliffordElement CliffordElement::conjugation() const { return grade_involution().reversed(); }

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement out = a;
    for (const auto& [bl, c] : b.coeffs_) out.add(bl, c);
    return out;
}

CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement out = a;
    for (const auto& [bl, c] : b.coeffs_) out.add(bl, -c);
    return out;
}

CliffordElement operator*(const GRat& s, const CliffordElement& a) {
    CliffordElement out;
    if (s.is_zero()) return out;
    for (const auto& [bl, c] : a.coeffs_) out.coeffs_.emplace(bl, s * c);
    return out;
}

CliffordElement multiply(const CliffordElement& a, const CliffordElement& b,
                         const Signature& sig) {
    const Blade limit = sig.n() >= 30 ? ~Blade(0) : (Blade(1) << sig.n());
    CliffordElement out;
    for (const auto& [ba, ca] : a.coeffs()) {
        if (ba >= limit) throw DomainError("multiply: blade outside the algebra");
        for (const auto& [bb, cb] : b.coeffs()) {
            if (bb >= limit) throw DomainError("multiply: blade outside the algebra");
            const auto prod = blade_mul(ba, bb, sig);
            out.add(prod.blade, GRat(Rat(prod.sign)) * (ca * cb));
        }
    }
    return out;
}

std::vector<Blade> center_basis(const Signature& sig, bool even_only) {
    if (sig.n() > 8) throw ResourceError("center_basis: dimension above the brute-force bound");
    std::vector<Blade> out;
    const Blade limit = Blade(1) << sig.n();
    for (Blade b = 0; b < limit; ++b) {
        if (even_only && blade_grade(b) % 2 != 0) continue;
        bool central = true;
        for (int i = 0; i < sig.n() && central; ++i) {
            const Blade e = Blade(1) << i;
            if (even_only) {
                // check against the even subalgebra's generators e_1 e_{i+1}
                if (i == 0) continue;
                const Blade gen = (Blade(1) << 0) | e;
                auto lhs = blade_mul(b, gen, sig);
                auto rhs = blade_mul(gen, b, sig);
                central = lhs.blade == rhs.blade && lhs.sign == rhs.sign;
            } else {
                auto lhs = blade_mul(b, e, sig);
                auto rhs = blade_mul(e, b, sig);
                central = lhs.blade == rhs.blade && lhs.sign == rhs.sign;
            }
        }
        if (central) out.push_back(b);
    }
    return out;
}

int ring_dimension_over_r(Ring r) {
    switch (r) {
        case Ring::real: return 1;
        case Ring::real_pair: return 2;
        case Ring::complex: return 2;
        case Ring::quaternion: return 4;
        case Ring::quaternion_pair: return 8;
    }
    throw DomainError("ring_dimension_over_r: bad ring");
}

std::string ring_label(Ring r) {
    switch (r) {
        case Ring::real: return "R";
        case Ring::real_pair: return "R+R";
        case Ring::complex: return "C";
        case Ring::quaternion: return "H";
        case Ring::quaternion_pair: return "H+H";
    }
    throw DomainError("ring_label: bad ring");
}

AlgebraType classify_mod8(const Signature& sig) {
    static const Ring table[8] = {Ring::real,      Ring::real_pair,  Ring::real,
                                  Ring::complex,   Ring::quaternion, Ring::quaternion_pair,
                                  Ring::quaternion, Ring::complex};
    const Ring ring = table[sig.signature_mod8()];
    // 2^n = size^2 * dim_R(ring)
    const int n = sig.n();
    const int dim_log2 = [&] {
        switch (ring) {
            case Ring::real: return 0;
            case Ring::real_pair: return 1;
            case Ring::complex: return 1;
            case Ring::quaternion: return 2;
            case Ring::quaternion_pair: return 3;
        }
        throw DomainError("classify_mod8: bad ring");
    }();
    if ((n - dim_log2) % 2 != 0)
        throw DomainError("classify_mod8: dimension bookkeeping failed");
    return AlgebraType{ring, 1L << ((n - dim_log2) / 2)};
}

namespace {

/// M_2(R) tensor: doubles the matrix size.
AlgebraType tensor_m2(AlgebraType t) {
    t.matrix_size *= 2;
    return t;
}

/// H tensor, using H(x)H = M_4(R), H(x)C = M_2(C).
AlgebraType tensor_h(AlgebraType t) {
    switch (t.ring) {
        case Ring::real: return AlgebraType{Ring::quaternion, t.matrix_size};
        case Ring::real_pair: return AlgebraType{Ring::quaternion_pair, t.matrix_size};
        case Ring::complex: return AlgebraType{Ring::complex, 2 * t.matrix_size};
        case Ring::quaternion: return AlgebraType{Ring::real, 4 * t.matrix_size};
        case Ring::quaternion_pair: return AlgebraType{Ring::real_pair, 4 * t.matrix_size};
    }
    throw DomainError("tensor_h: bad ring");
}

}  // namespace

AlgebraType classify_recurrence(const Signature& sig) {
    const int p = sig.p, q = sig.q;
    if (p == 0 && q == 0) return AlgebraType{Ring::real, 1};
    if (p == 1 && q == 0) return AlgebraType{Ring::real_pair, 1};
    if (p == 0 && q == 1) return AlgebraType{Ring::complex, 1};
    if (p >= 1 && q >= 1) return tensor_m2(classify_recurrence(Signature(p - 1, q - 1)));
    if (p >= 2) return tensor_m2(classify_recurrence(Signature(q, p - 2)));
    return tensor_h(classify_recurrence(Signature(q - 2, p)));
}

AlgebraType classify(const Signature& sig) {
    const AlgebraType a = classify_mod8(sig);
    const AlgebraType b = classify_recurrence(sig);
    if (!(a == b))
        throw DomainError("classify: mod-8 table and recurrences disagree at (" +
                          std::to_string(sig.p) + "," + std::to_string(sig.q) + ")");
    return a;
}

AlgebraType even_classify(const Signature& sig) {
    if (sig.n() == 0) return AlgebraType{Ring::real, 1};
    if (sig.p >= 1) return classify(Signature(sig.q, sig.p - 1));
    return classify(Signature(sig.p, sig.q - 1));
}

std::set<SpinorType> spinor_types(const Signature& sig) {
    std::set<SpinorType> out{SpinorType::dirac};
    const int s8 = sig.signature_mod8();
    if (sig.signature() % 2 == 0) out.insert(SpinorType::weyl);
    if (s8 == 0 || s8 == 1 || s8 == 2) out.insert(SpinorType::majorana);
    if (s8 == 0) out.insert(SpinorType::majorana_weyl);
    return out;
}

std::string spinor_label(SpinorType t) {
    switch (t) {
        case SpinorType::dirac: return "Dirac";
        case SpinorType::weyl: return "Weyl";
        case SpinorType::majorana: return "Majorana";
        case SpinorType::majorana_weyl: return "Majorana-Weyl";
    }
    throw DomainError("spinor_label: bad type");
}

Mat4 mat_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = GRat(1);
    return m;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Mat4 mat_add(const Mat4& a, const Mat4& b) {
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

Mat4 mat_scale(const GRat& s, const Mat4& a) {
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = s * a[i][j];
    return out;
}

Mat4 mat_conj(const Mat4& a) {
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j].conj();
    return out;
}

bool mat_eq(const Mat4& a, const Mat4& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a[i][j] != b[i][j]) return false;
    return true;
}

GammaRep gamma_rep() {
    const GRat one(1), i = GRat::i();
    // Pauli matrices
    const std::array<std::array<GRat, 2>, 2> s1{{{GRat(0), one}, {one, GRat(0)}}};
    const std::array<std::array<GRat, 2>, 2> s2{{{GRat(0), -i}, {i, GRat(0)}}};
    const std::array<std::array<GRat, 2>, 2> s3{{{one, GRat(0)}, {GRat(0), -one}}};

    GammaRep rep;
    // Dirac basis: gamma0 = diag(I, -I); the printed diag(I, I) variant is
    // the identity and cannot anticommute with the spatial matrices
    rep.gamma[0] = Mat4{};
    rep.gamma[0][0][0] = one;
    rep.gamma[0][1][1] = one;
    rep.gamma[0][2][2] = -one;
    rep.gamma[0][3][3] = -one;

    const auto offdiag = [&](const std::array<std::array<GRat, 2>, 2>& s) {
        Mat4 g{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                g[a][2 + b] = s[a][b];
                g[2 + a][b] = -s[a][b];
            }
        return g;
    };
    rep.gamma[1] = offdiag(s1);
    rep.gamma[2] = offdiag(s2);
    rep.gamma[3] = offdiag(s3);
    rep.gamma5 = mat_mul(mat_mul(rep.gamma[0], rep.gamma[1]), mat_mul(rep.gamma[2], rep.gamma[3]));
    return rep;
}

PolyMat4 slash(int var_base) {
    using P = SparsePoly<GRat>;
    const auto rep = gamma_rep();
    PolyMat4 out;
    for (int mu = 0; mu < 4; ++mu) {
        P v = P::variable(var_base + mu);   // gamma^mu v_mu
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (rep.gamma[mu][a][b].is_zero()) continue;
                out[a][b] += rep.gamma[mu][a][b] * v;
            }
    }
    return out;
}

PolyMat4 poly_mat_mul(const PolyMat4& a, const PolyMat4& b) {
    PolyMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

PolyMat4 poly_mat_add(const PolyMat4& a, const PolyMat4& b) {
    PolyMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

CliffordElement spinor_norm(const CliffordElement& x, const Signature& sig) {
    return multiply(x, x.conjugation(), sig);
}

CliffordElement reflect(const CliffordElement& x, const CliffordElement& y,
                        const Signature& sig) {
    if (!(x.grade_part(1) == x) || x.is_zero())
        throw DomainError("reflect: mirror element must be a nonzero vector");
    const CliffordElement xsq = multiply(x, x, sig);
    const GRat qx = xsq.scalar_value();
    if (qx.is_zero()) throw DomainError("reflect: isotropic vector has no inverse");
    // alpha(x) y x^{-1} with x^{-1} = x / q(x)
    CliffordElement out = multiply(multiply(x.grade_involution(), y, sig), x, sig);
    return (GRat(1) / qx) * out;
}

CPTData cpt_matrices() {
    const auto rep = gamma_rep();
    CPTData out;
    out.parity = rep.gamma[0];
    out.charge = mat_scale(-GRat::i(), rep.gamma[2]);
    out.time_reversal = mat_scale(GRat(Rat(-1)), mat_mul(rep.gamma[1], rep.gamma[3]));
    out.parity_squared = mat_mul(out.parity, out.parity);
    const Mat4 g13 = mat_mul(rep.gamma[1], rep.gamma[3]);
    out.time_matrix_squared = mat_mul(g13, g13);
    out.charge_twice = mat_mul(out.charge, mat_conj(out.charge));
    return out;
}

}  // namespace perturbia::clifford
