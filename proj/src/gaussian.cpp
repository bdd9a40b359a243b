#include "perturbia/gaussian.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace perturbia::gaussfree {

namespace {

constexpr double kPi = 3.14159265358979323846;

double min_imag_eigenvalue(const Eigen::MatrixXcd& a) {
    Eigen::MatrixXd im = a.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im);
    return es.eigenvalues().minCoeff();
}

}  // namespace

QuadForm::QuadForm(Eigen::MatrixXcd a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() == 0)
        throw DomainError("QuadForm: matrix must be square and nonempty");
    if (a_.rows() > 8) throw ResourceError("QuadForm: dimension above the small-matrix bound");
    const double scale = a_.cwiseAbs().maxCoeff();
    if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
        throw DomainError("QuadForm: matrix is not symmetric");
    if (min_imag_eigenvalue(a_) <= 0)
        throw DomainError("QuadForm: imaginary part is not positive definite");
}

namespace {

/// det(A(s)/i) along A(s) = (1-s) iI + s A, with the argument unwrapped from
/// det = 1 at s = 0.  The path stays in the nonsingular region, so the phase
/// is continuous; steps are refined until each increment is below pi/2.
Complex sqrt_det_over_i(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    const Eigen::MatrixXcd ii = Complex(0, 1) * Eigen::MatrixXcd::Identity(n, n);
    const auto det_at = [&](double s) {
        Eigen::MatrixXcd m = Complex(0, -1) * ((1.0 - s) * ii + s * a);
        return m.partialPivLu().determinant();
    };
    double theta = 0.0;
    double s = 0.0;
    Complex prev = det_at(0.0);
    double step = 1.0 / 32.0;
    while (s < 1.0) {
        double next = std::min(1.0, s + step);
        Complex cur = det_at(next);
        double dtheta = std::arg(cur / prev);
        if (std::abs(dtheta) > 1.5 && step > 1e-6) {
            step /= 2;
            continue;
        }
        theta += dtheta;
        prev = cur;
        s = next;
        step = std::min(step * 2, 1.0 / 32.0);
    }
    return std::sqrt(std::abs(prev)) * std::exp(Complex(0, theta / 2));
}

}  // namespace

Complex gauss_closed_form(const QuadForm& q, const Eigen::VectorXcd& j) {
    const auto& a = q.matrix();
    if (j.size() != a.rows()) throw DomainError("gauss_closed_form: source dimension mismatch");
    Eigen::VectorXcd x = a.partialPivLu().solve(j);
    Complex quad = x.cwiseProduct(j).sum();   // bilinear, not Hermitian
    Complex phase = std::exp(Complex(0, -1) * quad / 4.0);
    return phase * std::pow(std::sqrt(kPi), a.rows()) / sqrt_det_over_i(a);
}

namespace {

template <typename F>
Complex integrate_complex(const F& f, double lo, double hi, double tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double re = GK::integrate([&](double x) { return f(x).real(); }, lo, hi, 12, tol);
    double im = GK::integrate([&](double x) { return f(x).imag(); }, lo, hi, 12, tol);
    return Complex(re, im);
}

double window_radius(double lambda_min, double j_im_max) {
    // solve lambda r^2 - j r = 50
    return (j_im_max + std::sqrt(j_im_max * j_im_max + 200.0 * lambda_min)) / (2.0 * lambda_min);
}

}  // namespace

Complex quad_gauss(const QuadForm& q, const Eigen::VectorXcd& j) {
    const auto& a = q.matrix();
    if (j.size() != a.rows()) throw DomainError("quad_gauss: source dimension mismatch");
    const int n = q.dim();
    if (n > 2) throw ResourceError("quad_gauss: only n <= 2 is supported");
    const double lam = min_imag_eigenvalue(a);
    const double jmax = j.imag().cwiseAbs().maxCoeff();
    const double r = window_radius(lam, jmax);

    if (n == 1) {
        const Complex a00 = a(0, 0), j0 = j(0);
        return integrate_complex(
            [&](double x) { return std::exp(Complex(0, 1) * (a00 * x * x + j0 * x)); }, -r, r,
            1e-12);
    }
    const Complex a00 = a(0, 0), a01 = a(0, 1), a11 = a(1, 1);
    const Complex j0 = j(0), j1 = j(1);
    return integrate_complex(
        [&](double x) {
            return integrate_complex(
                [&](double y) {
                    Complex quad = a00 * x * x + 2.0 * a01 * x * y + a11 * y * y;
                    return std::exp(Complex(0, 1) * (quad + j0 * x + j1 * y));
                },
                -r, r, 1e-12);
        },
        -r, r, 1e-11);
}

std::string PairingExpression::render(std::size_t term) const {
    std::string out;
    for (const auto& [a, b] : terms.at(term))
        out += "D(x" + std::to_string(a) + "-x" + std::to_string(b) + ")";
    return out;
}

PairingExpression green_function(int n_points, int max_points) {
    if (n_points < 0) throw DomainError("green_function: negative point count");
    if (n_points > max_points) throw ResourceError("green_function: point count above bound");
    PairingExpression out;
    out.points = n_points;
    if (n_points % 2 != 0) {
        out.odd = true;   // odd Green's functions vanish
        return out;
    }
    std::vector<int> unused;
    for (int i = 1; i <= n_points; ++i) unused.push_back(i);
    std::vector<std::pair<int, int>> current;
    std::function<void()> rec = [&]() {
        if (unused.empty()) {
            out.terms.push_back(current);
            return;
        }
        const int first = unused.front();
        for (std::size_t k = 1; k < unused.size(); ++k) {
            std::vector<int> rest;
            for (std::size_t t = 1; t < unused.size(); ++t)
                if (t != k) rest.push_back(unused[t]);
            current.emplace_back(first, unused[k]);
            std::swap(unused, rest);
            rec();
            std::swap(unused, rest);
            current.pop_back();
        }
    };
    if (n_points > 0)
        rec();
    else
        out.terms.push_back({});
    return out;
}

Propagator1D::Propagator1D(double mass) : m_(mass) {
    if (!(mass > 0)) throw DomainError("Propagator1D: mass must be positive");
}

double Propagator1D::operator()(double x) const { return kPi / m_ * std::exp(-m_ * std::abs(x)); }

double Propagator1D::derivative(double x) const {
    if (x == 0) return 0;
    return -kPi * (x > 0 ? 1.0 : -1.0) * std::exp(-m_ * std::abs(x));
}

namespace {

/// Composite Simpson over uniformly spaced samples; a 3/8 patch covers an
/// odd interval count.
double simpson(const std::vector<double>& v, double h) {
    const std::size_t n = v.size();
    if (n < 2) return 0;
    const std::size_t intervals = n - 1;
    double total = 0;
    std::size_t start = 0;
    if (intervals % 2 != 0) {
        if (intervals < 3) return h / 2 * (v[0] + v[1]);   // single trapezoid
        total += 3.0 * h / 8.0 * (v[0] + 3 * v[1] + 3 * v[2] + v[3]);
        start = 3;
    }
    for (std::size_t i = start; i + 2 <= intervals; i += 2)
        total += h / 3.0 * (v[i] + 4 * v[i + 1] + v[i + 2]);
    return total;
}

std::vector<double> derivative_samples(const std::vector<double>& t, double h) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    auto at = [&](std::ptrdiff_t i) {
        // the test function decays to zero at the boundary
        return i < 0 || i >= static_cast<std::ptrdiff_t>(n) ? 0.0 : t[static_cast<std::size_t>(i)];
    };
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        d[static_cast<std::size_t>(i)] =
            (-at(i + 2) + 8 * at(i + 1) - 8 * at(i - 1) + at(i - 2)) / (12 * h);
    return d;
}

double residual_on_grid(const Propagator1D& f, const std::vector<double>& t, double x0, double h,
                        std::size_t zero_index, double delta_strength) {
    const std::vector<double> tp = derivative_samples(t, h);
    const double m2 = f.mass() * f.mass();

    auto side_integral = [&](std::size_t lo, std::size_t hi, double sign_at_zero) {
        std::vector<double> g;
        g.reserve(hi - lo + 1);
        for (std::size_t i = lo; i <= hi; ++i) {
            const double x = x0 + static_cast<double>(i) * h;
            const double fp = i == zero_index ? sign_at_zero * kPi : f.derivative(x);
            g.push_back(fp * tp[i] + m2 * f(x) * t[i]);
        }
        return simpson(g, h);
    };
    // f' jumps at the origin: integrate each side with its one-sided limit
    const double left = side_integral(0, zero_index, 1.0);
    const double right = side_integral(zero_index, t.size() - 1, -1.0);
    return left + right - delta_strength * t[zero_index];
}

}  // namespace

double weak_residual(const Propagator1D& f, const std::vector<double>& samples, double x0,
                     double step, double delta_strength) {
    if (!(step > 0)) throw DomainError("weak_residual: step must be positive");
    if (samples.size() < 16) throw ResourceError("weak_residual: grid too coarse");
    std::size_t zero_index = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (std::abs(x0 + static_cast<double>(i) * step) < 1e-12 * std::max(1.0, std::abs(x0)))
            zero_index = i;
    if (zero_index == samples.size())
        throw DomainError("weak_residual: the grid must contain the origin");

    const double fine = residual_on_grid(f, samples, x0, step, zero_index, delta_strength);

    // stability estimate: recompute on every second point (keeping the
    // origin on the grid) and require agreement
    const std::size_t parity = zero_index % 2;
    std::vector<double> coarse;
    for (std::size_t i = parity; i < samples.size(); i += 2) coarse.push_back(samples[i]);
    double tmax = 0;
    for (double v : samples) tmax = std::max(tmax, std::abs(v));
    const double coarse_res = residual_on_grid(f, coarse, x0 + static_cast<double>(parity) * step,
                                               2 * step, (zero_index - parity) / 2, delta_strength);
    if (std::abs(fine - coarse_res) > 1e-3 * std::max(tmax, 1e-30))
        throw ResourceError("weak_residual: residual unstable under grid coarsening");
    return fine;
}

}  // namespace perturbia::gaussfree
