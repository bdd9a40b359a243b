#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "perturbia/rational.hpp"

namespace perturbia::gaussfree {

using Complex = std::complex<double>;

/// Symmetric complex matrix with positive definite imaginary part,
/// the quadratic form of a convergent oscillatory Gaussian.
class QuadForm {
public:
    explicit QuadForm(Eigen::MatrixXcd a);
    const Eigen::MatrixXcd& matrix() const { return a_; }
    int dim() const { return static_cast<int>(a_.rows()); }

private:
    Eigen::MatrixXcd a_;
};

/// Closed form of the n-dimensional integral of exp(i (x,Ax) + i (j,x)):
/// exp(-i (A^{-1} j, j) / 4) * sqrt(pi)^n / sqrt(det(A / i)), with the root
/// branch continued along the segment from A = iI.
Complex gauss_closed_form(const QuadForm& q, const Eigen::VectorXcd& j);

/// Numeric oracle for the same integral, n <= 2 only.
Complex quad_gauss(const QuadForm& q, const Eigen::VectorXcd& j);

/// All perfect matchings of {1..n}; each pairing stands for a product of
/// two-point functions over its pairs.
struct PairingExpression {
    int points = 0;
    std::vector<std::vector<std::pair<int, int>>> terms;
    bool odd = false;   // odd point count: the function vanishes

    std::string render(std::size_t term) const;   // e.g. "D(x1-x2)D(x3-x4)"
};

PairingExpression green_function(int n_points, int max_points = 12);

/// The massive Euclidean two-point profile in one dimension,
/// f(x) = (pi / m) exp(-m |x|), which solves (-d^2/dx^2 + m^2) f = 2 pi delta.
class Propagator1D {
public:
    explicit Propagator1D(double mass);

    double mass() const { return m_; }
    double operator()(double x) const;
    double derivative(double x) const;   // one-sided limits away from 0

    /// Strength of the delta distribution the profile produces; 2 pi for the
    /// transform convention without the 1/(2 pi) inverse factor.
    static constexpr double kDeltaStrength = 2.0 * 3.14159265358979323846;

private:
    double m_;
};

/// Integral of f' t' + m^2 f t minus delta_strength * t(0) over a uniform
/// grid sample of a smooth compactly supported test function; the first term
/// is the once-integrated-by-parts form of f * (-t'').  Small for the true
/// profile.  Throws ResourceError when the grid is too coarse to trust.
double weak_residual(const Propagator1D& f, const std::vector<double>& samples, double x0,
                     double step, double delta_strength = Propagator1D::kDeltaStrength);

}  // namespace perturbia::gaussfree
