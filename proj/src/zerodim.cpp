#include "perturbia/zerodim.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdlib>

#include "perturbia/multigraph.hpp"

namespace perturbia::zerodim {

using graphs::ClassEntry;
using graphs::GraphFilter;
using graphs::enumerate_classes;

namespace {

/// Gaussian moment <x^(2n)> = (2n-1)!!; odd moments vanish.
Rat moment_coeff(int a, int b) {
    const int power = 4 * a + b;
    if (power % 2 != 0) return Rat(0);
    Int num = double_factorial(power - 1);
    Int den = factorial(static_cast<unsigned long>(a)) * factorial(static_cast<unsigned long>(b));
    for (int i = 0; i < a; ++i) den *= 24;
    Rat out = rat(num, den);
    return a % 2 == 0 ? out : -out;
}

Rat class_weight_sum(int v4, int v1, GraphFilter filter, int max_vertices) {
    Rat sum(0);
    for (const auto& c : enumerate_classes(v4, v1, filter, max_vertices).classes)
        sum += rat(Int(1), Int(static_cast<unsigned long>(c.aut)));
    return sum;
}

int sign_pow(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

FormalSeries z_series(Caps caps, ZMethod method, int max_vertices) {
    FormalSeries out(caps);
    for (int a = 0; a <= caps.a; ++a)
        for (int b = 0; b <= caps.b; ++b) {
            if ((4 * a + b) % 2 != 0) continue;
            if (method == ZMethod::moments) {
                out.set_coeff(a, b, 0, moment_coeff(a, b));
            } else {
                Rat w = class_weight_sum(a, b, GraphFilter::all, max_vertices);
                out.set_coeff(a, b, 0, Rat(sign_pow(a)) * w);
            }
        }
    return out;
}

FormalSeries w_series(Caps caps, WMethod method, int max_vertices) {
    if (method == WMethod::log_z) return z_series(caps, ZMethod::moments, max_vertices).log();
    FormalSeries out(caps);
    for (int a = 0; a <= caps.a; ++a)
        for (int b = 0; b <= caps.b; ++b) {
            if ((4 * a + b) % 2 != 0) continue;
            Rat w = class_weight_sum(a, b, GraphFilter::connected, max_vertices);
            out.set_coeff(a, b, 0, Rat(sign_pow(a)) * w);
        }
    return out;
}

FormalSeries phi_cl_series(Caps caps, PhiVariant variant, int max_vertices) {
    if (variant == PhiVariant::full) {
        Caps wide{caps.a, caps.b + 1, caps.c};
        return w_series(wide, WMethod::log_z, max_vertices).derivative_j().truncated(caps);
    }
    FormalSeries out(caps);
    const GraphFilter filter =
        variant == PhiVariant::tree ? GraphFilter::trees : GraphFilter::connected;
    for (int a = 0; a <= caps.a; ++a) {
        for (int v1 = 1; v1 <= caps.b + 1; ++v1) {
            if ((4 * a + v1) % 2 != 0) continue;
            for (const auto& c : enumerate_classes(a, v1, filter, max_vertices).classes) {
                const int loops = c.representative.loop_number();
                const int grade = variant == PhiVariant::hbar ? loops : 0;
                if (variant == PhiVariant::tree && loops != 0)
                    throw DomainError("phi_cl_series: tree filter returned a looped graph");
                Rat w = rat(Int(sign_pow(a)) * v1, Int(static_cast<unsigned long>(c.aut)));
                out.add_coeff(a, v1 - 1, grade, w);
            }
        }
    }
    return out;
}

FormalSeries effective_action_series(Caps caps, int max_vertices) {
    FormalSeries out(Caps{caps.a, caps.b, 0});
    out.set_coeff(0, 2, 0, rat(-1, 2));
    for (int v4 = 1; v4 <= caps.a; ++v4)
        for (int legs = 0; legs <= caps.b; ++legs) {
            if ((4 * v4 + legs) % 2 != 0) continue;
            for (const auto& c : enumerate_classes(v4, legs, GraphFilter::one_pi, max_vertices).classes)
                out.add_coeff(v4, legs, 0,
                              rat(Int(sign_pow(v4)), Int(static_cast<unsigned long>(c.aut))));
        }
    return out;
}

FormalSeries legendre_residual(Caps caps, int max_vertices) {
    Caps flat{caps.a, caps.b, 0};
    FormalSeries gamma = effective_action_series(flat, max_vertices);
    FormalSeries phi = phi_cl_series(flat, PhiVariant::full, max_vertices);
    FormalSeries w = w_series(flat, WMethod::log_z, max_vertices);
    return gamma.substitute_second(phi) - w + phi.mul_j();
}

bool per_graph_tree_identity(int max_v4, int max_v1, int max_vertices) {
    for (int v4 = 0; v4 <= max_v4; ++v4)
        for (int v1 = 0; v1 <= max_v1; ++v1) {
            if ((4 * v4 + v1) % 2 != 0) continue;
            for (const auto& c : enumerate_classes(v4, v1, GraphFilter::connected, max_vertices).classes) {
                auto d = graphs::one_pi_decompose(c.representative);
                if (-1 + v1 - static_cast<int>(d.bridges.size()) +
                        static_cast<int>(d.pieces.size()) != 0)
                    return false;
            }
        }
    return true;
}

double quad_z(double lambda, double j) {
    if (!(lambda > 0)) throw DomainError("quad_z: lambda must be positive");
    const auto f = [&](double x) {
        return std::exp(-0.5 * x * x - lambda * x * x * x * x / 24.0 + j * x);
    };
    // window: quartic decay only helps, so bound with the Gaussian part and
    // double for safety
    const double r0 = std::abs(j) + std::sqrt(j * j + 90.0);
    const double r = 2.0 * r0;
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -r, r, 15, 1e-14,
                                                                             &err);
    return v / std::sqrt(2.0 * M_PI);
}

std::vector<Rat> z_coefficients_j0(int n_terms) {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(n_terms));
    for (int k = 0; k < n_terms; ++k) out.push_back(moment_coeff(k, 0));
    return out;
}

TruncationReport truncation_report(double lambda, int coeff_cap) {
    if (!(lambda > 0)) throw DomainError("truncation_report: lambda must be positive");
    const double k_star = 1.5 / lambda;
    const int needed = static_cast<int>(std::ceil(2.0 * k_star)) + 1;
    if (needed > coeff_cap)
        throw ResourceError("truncation_report: need " + std::to_string(needed) +
                            " coefficients, cap is " + std::to_string(coeff_cap));
    const auto coeffs = z_coefficients_j0(needed);

    TruncationReport rep;
    rep.lambda = lambda;
    rep.quad_value = quad_z(lambda, 0.0);
    rep.k_star = k_star;
    rep.error_scale = std::exp(-k_star);

    double sum = 0;
    double pw = 1;
    rep.min_error = std::numeric_limits<double>::infinity();
    for (int k = 0; k < needed; ++k) {
        sum += mpq_get_d(coeffs[static_cast<std::size_t>(k)].get_mpq_t()) * pw;
        pw *= lambda;
        rep.partial_sums.push_back(sum);
        const double err = std::abs(sum - rep.quad_value);
        if (err < rep.min_error) {
            rep.min_error = err;
            rep.k_opt = k;
        }
    }
    rep.k_opt_in_band = rep.k_opt >= 0.7 * k_star && rep.k_opt <= 1.3 * k_star;
    const double ratio = rep.min_error / rep.error_scale;
    rep.error_in_band = ratio >= 1e-2 && ratio <= 1e2;
    return rep;
}

namespace {

/// Solve the M x M linear system for the denominator of the [L/M] rational
/// approximant of sum b_k t^k; exact over the rationals.
bool pade_denominator(const std::vector<Rat>& b, int L, int M, std::vector<Rat>& q) {
    auto bc = [&](int i) { return i >= 0 && i < static_cast<int>(b.size()) ? b[static_cast<std::size_t>(i)] : Rat(0); };
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(M),
                                    std::vector<Rat>(static_cast<std::size_t>(M) + 1, Rat(0)));
    for (int k = 1; k <= M; ++k) {
        for (int j = 1; j <= M; ++j) m[k - 1][j - 1] = bc(L + k - j);
        m[k - 1][static_cast<std::size_t>(M)] = -bc(L + k);
    }
    // Gaussian elimination with partial (first nonzero) pivoting
    std::vector<int> where(static_cast<std::size_t>(M), -1);
    int row = 0;
    for (int col = 0; col < M && row < M; ++col) {
        int piv = -1;
        for (int r = row; r < M; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv == -1) continue;
        std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(row)]);
        Rat lead = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (auto& x : m[static_cast<std::size_t>(row)]) x /= lead;
        for (int r = 0; r < M; ++r) {
            if (r == row) continue;
            Rat f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int cc = col; cc <= M; ++cc)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc)];
        }
        where[static_cast<std::size_t>(col)] = row;
        ++row;
    }
    q.assign(static_cast<std::size_t>(M) + 1, Rat(0));
    q[0] = Rat(1);
    for (int col = 0; col < M; ++col) {
        if (where[static_cast<std::size_t>(col)] == -1) return false;   // singular system
        q[static_cast<std::size_t>(col) + 1] =
            m[static_cast<std::size_t>(where[static_cast<std::size_t>(col)])]
             [static_cast<std::size_t>(M)];
    }
    return true;
}

double eval_poly(const std::vector<double>& c, double x) {
    double v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

double borel_sum(const std::vector<Rat>& coeffs, double lambda) {
    const int n = static_cast<int>(coeffs.size());
    if (n < 8) throw DomainError("borel_sum: need at least 8 series terms");
    if (!(lambda > 0)) throw DomainError("borel_sum: lambda must be positive");

    // Borel transform b_k = a_k / k!
    std::vector<Rat> b(coeffs.size());
    for (int k = 0; k < n; ++k)
        b[static_cast<std::size_t>(k)] =
            coeffs[static_cast<std::size_t>(k)] / Rat(factorial(static_cast<unsigned long>(k)));

    int M = n / 2;
    int L = n - 1 - M;
    std::vector<Rat> q;
    while (M > 0 && !pade_denominator(b, L, M, q)) {
        --M;        // degenerate table entry; fall back to a smaller block
        L = n - 1 - M;
    }
    if (M == 0) q.assign(1, Rat(1));

    std::vector<Rat> p(static_cast<std::size_t>(L) + 1, Rat(0));
    for (int i = 0; i <= L; ++i)
        for (int j = 0; j <= std::min(i, M); ++j)
            p[static_cast<std::size_t>(i)] +=
                q[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)];

    std::vector<double> pd(p.size()), qd(q.size());
    for (std::size_t i = 0; i < p.size(); ++i) pd[i] = mpq_get_d(p[i].get_mpq_t());
    for (std::size_t i = 0; i < q.size(); ++i) qd[i] = mpq_get_d(q[i].get_mpq_t());

    // pole scan on the integration ray t = lambda * u, u in (0, U]
    const double u_max = 80.0;
    double prev = eval_poly(qd, 0.0);
    for (int i = 1; i <= 8000; ++i) {
        const double u = u_max * i / 8000.0;
        const double cur = eval_poly(qd, lambda * u);
        if (cur == 0.0 || (prev < 0) != (cur < 0)) {
            double lo = u_max * (i - 1) / 8000.0, hi = u;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((eval_poly(qd, lambda * lo) < 0) != (eval_poly(qd, lambda * mid) < 0))
                    hi = mid;
                else
                    lo = mid;
            }
            throw DomainError("borel_sum: approximant pole on the integration ray near t = " +
                              std::to_string(lambda * 0.5 * (lo + hi)));
        }
        prev = cur;
    }

    const auto integrand = [&](double u) {
        if (u > 700.0) return 0.0;   // exp underflow; the tail is exactly negligible
        const double t = lambda * u;
        return std::exp(-u) * eval_poly(pd, t) / eval_poly(qd, t);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(integrand, 1e-13);
}

double borel_sum_z(int n_terms, double lambda) {
    return borel_sum(z_coefficients_j0(n_terms), lambda);
}

}  // namespace perturbia::zerodim
