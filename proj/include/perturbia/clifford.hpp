#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "perturbia/polynomial.hpp"
#include "perturbia/rational.hpp"

namespace perturbia::clifford {

/// Quadratic-form signature: p generators squaring to +1, q to -1.
struct Signature {
    int p = 0;
    int q = 0;

    Signature(int p_, int q_);
    int n() const { return p + q; }
    int signature() const { return p - q; }
    int signature_mod8() const { return ((p - q) % 8 + 8) % 8; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Basis blade: bit i set means generator e_{i+1} participates (ascending).
using Blade = std::uint32_t;

/// Product of two basis blades: resulting blade and the accumulated sign.
struct BladeProduct {
    Blade blade;
    int sign;
};
BladeProduct blade_mul(Blade a, Blade b, const Signature& sig);

int blade_grade(Blade b);

/// Sparse element of the Clifford algebra with exact coefficients.
class CliffordElement {
public:
    CliffordElement() = default;

    static CliffordElement scalar(const GRat& c);
    static CliffordElement blade(Blade b, const GRat& c = GRat(1));
    static CliffordElement generator(int i);   // e_{i+1}

    const std::map<Blade, GRat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    GRat coeff(Blade b) const;
    void add(Blade b, const GRat& c);

    bool is_scalar() const;
    GRat scalar_value() const;   // throws unless grade-0

    int max_grade() const;
    CliffordElement grade_part(int k) const;

    /// Transpose anti-automorphism: reverses products.
    CliffordElement reversed() const;
    /// Grade involution alpha: negates odd grades.
    CliffordElement grade_involution() const;
    /// Conjugation: alpha composed with transpose.
    CliffordElement conjugation() const;

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator*(const GRat& s, const CliffordElement& a);
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::map<Blade, GRat> coeffs_;
};

/// Bilinear extension of the blade product.
CliffordElement multiply(const CliffordElement& a, const CliffordElement& b, const Signature& sig);

/// Blades spanning the center (of the even subalgebra when even_only), by
/// brute-force commutator checks over the 2^n basis; n <= 8.
std::vector<Blade> center_basis(const Signature& sig, bool even_only);

enum class Ring { real, real_pair, complex, quaternion, quaternion_pair };

int ring_dimension_over_r(Ring r);
std::string ring_label(Ring r);

/// Matrix algebra M_size(ring).
struct AlgebraType {
    Ring ring;
    long matrix_size;
    friend bool operator==(const AlgebraType&, const AlgebraType&) = default;
};

/// Structure of C(R^{p,q}) by the signature-mod-8 table.
AlgebraType classify_mod8(const Signature& sig);
/// Structure by recursive descent to the small base cases.
AlgebraType classify_recurrence(const Signature& sig);
/// Both routes; throws DomainError if they ever disagree.
AlgebraType classify(const Signature& sig);
/// Structure of the even subalgebra.
AlgebraType even_classify(const Signature& sig);

enum class SpinorType { dirac, weyl, majorana, majorana_weyl };
std::set<SpinorType> spinor_types(const Signature& sig);
std::string spinor_label(SpinorType t);

/// Exact 4x4 Gaussian-rational matrices.
using Mat4 = std::array<std::array<GRat, 4>, 4>;

Mat4 mat_identity();
Mat4 mat_mul(const Mat4& a, const Mat4& b);
Mat4 mat_add(const Mat4& a, const Mat4& b);
Mat4 mat_scale(const GRat& s, const Mat4& a);
Mat4 mat_conj(const Mat4& a);   // entrywise complex conjugation
bool mat_eq(const Mat4& a, const Mat4& b);

/// Dirac-basis gamma matrices for g = diag(1,-1,-1,-1), gamma5 their product.
struct GammaRep {
    std::array<Mat4, 4> gamma;
    Mat4 gamma5;
};
GammaRep gamma_rep();

/// Matrix of polynomials: the slash of a symbolic 4-vector whose components
/// are variables var_base..var_base+3.
using PolyMat4 = std::array<std::array<SparsePoly<GRat>, 4>, 4>;
PolyMat4 slash(int var_base);
PolyMat4 poly_mat_mul(const PolyMat4& a, const PolyMat4& b);
PolyMat4 poly_mat_add(const PolyMat4& a, const PolyMat4& b);

/// Spinor norm N(x) = x * conjugation(x); scalar on the Clifford group.
CliffordElement spinor_norm(const CliffordElement& x, const Signature& sig);

/// Twisted conjugation alpha(x) y x^{-1} of a vector y in a non-isotropic
/// vector x; acts as the reflection y - 2 (x,y)/q(x) x.
CliffordElement reflect(const CliffordElement& x, const CliffordElement& y, const Signature& sig);

/// Discrete symmetry data: matrix part plus whether the operator conjugates
/// its argument; squares are computed, not asserted.
struct CPTData {
    Mat4 parity;          // gamma0, linear
    Mat4 charge;          // -i gamma2, composed with conjugation
    Mat4 time_reversal;   // -gamma1 gamma3, antilinear
    Mat4 parity_squared;
    Mat4 time_matrix_squared;      // (gamma1 gamma3)^2
    Mat4 charge_twice;             // charge * conj(charge): C o C as a matrix
};
CPTData cpt_matrices();

}  // namespace perturbia::clifford
