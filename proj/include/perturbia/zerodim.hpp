#pragma once

#include <vector>

#include "perturbia/series.hpp"

namespace perturbia::zerodim {

enum class ZMethod { moments, graphs };
enum class WMethod { log_z, graphs };
enum class PhiVariant { full, tree, hbar };

/// Series of Z[lambda, j] / sqrt(2 pi): by Gaussian moments or by the sum
/// over isomorphism classes of graphs weighted by 1/|Aut|.
FormalSeries z_series(Caps caps, ZMethod method, int max_vertices = 14);

/// W = log Z; either as the formal logarithm or as the connected-graph sum.
FormalSeries w_series(Caps caps, WMethod method = WMethod::log_z, int max_vertices = 14);

/// The average field phi_cl = dW/dj; `tree` keeps loopless graphs only,
/// `hbar` grades every connected graph by hbar^loop_number.
FormalSeries phi_cl_series(Caps caps, PhiVariant variant, int max_vertices = 14);

/// Effective action Gamma in (lambda, phi): -phi^2/2 plus the sum over
/// one-particle-irreducible classes with a phi per unused edge.
FormalSeries effective_action_series(Caps caps, int max_vertices = 14);

/// Gamma[phi_cl] - W + j*phi_cl as a series in (lambda, j).  Every
/// j-dependent coefficient vanishes; pure vacuum terms may survive.
FormalSeries legendre_residual(Caps caps, int max_vertices = 14);

/// Exact per-class identity -1 + v1 - #bridges + #pieces = 0 that drives the
/// Legendre transform argument; checked on every connected class in range.
bool per_graph_tree_identity(int max_v4, int max_v1, int max_vertices = 14);

/// Numeric oracle: integral of exp(-x^2/2 - lambda x^4/4! + j x) over the
/// real line, divided by sqrt(2 pi).  Absolute error below 1e-12.
double quad_z(double lambda, double j);

/// Coefficients a_0..a_{n-1} of Z[lambda, 0]/sqrt(2 pi).
std::vector<Rat> z_coefficients_j0(int n_terms);

struct TruncationReport {
    double lambda = 0;
    int k_opt = 0;
    std::vector<double> partial_sums;
    double quad_value = 0;
    double min_error = 0;
    double k_star = 0;        // 3 / (2 lambda)
    double error_scale = 0;   // exp(-3 / (2 lambda))
    bool k_opt_in_band = false;    // within +-30% of k_star
    bool error_in_band = false;    // within two decades of error_scale
};

/// Optimal-truncation study of the divergent series against the quadrature
/// oracle.  Needs roughly 3/lambda coefficients.
TruncationReport truncation_report(double lambda, int coeff_cap = 120);

/// Borel resummation: transform to sum a_n t^n / n!, accelerate with a
/// diagonal rational approximant, Laplace-integrate along t > 0.
/// Throws DomainError if the approximant has a pole on the integration ray.
double borel_sum(const std::vector<Rat>& coeffs, double lambda);
double borel_sum_z(int n_terms, double lambda);

}  // namespace perturbia::zerodim
