#pragma once

#include <map>
#include <optional>
#include <vector>

#include "perturbia/fields.hpp"

namespace perturbia::fields {

/// Output of the variational calculus: delta L = sum_f delta(f) * el_terms[f]
/// + sum_mu d_mu J[mu], an exact identity in the extended algebra.
struct VariationResult {
    std::map<int, FieldPolynomial> el_terms;
    std::vector<FieldPolynomial> boundary_current;
};

/// Literal variation: each non-constant factor replaced by its delta once.
FieldPolynomial total_variation(const FieldPolynomial& lagrangian);

/// Integrate by parts until no variation factor carries a derivative.  The
/// boundary current is fixed by processing terms in canonical monomial order
/// and stripping derivatives in increasing coordinate order.
VariationResult vary(const FieldPolynomial& lagrangian);

/// Classical alternating-sign formula; equals vary(L).el_terms identically.
std::map<int, FieldPolynomial> euler_lagrange(const FieldPolynomial& lagrangian);

/// delta L with the generators substituted, minus div K; zero iff `gen` is a
/// (quasi-)symmetry with surface term K.
FieldPolynomial symmetry_defect(const FieldPolynomial& lagrangian,
                                const std::map<int, FieldPolynomial>& gen,
                                const std::vector<FieldPolynomial>* surface = nullptr);

/// Noether current j^mu = J^mu[gen] - K^mu.  Throws DomainError (carrying the
/// printed residual) when gen is not a symmetry up to the surface term.
std::vector<FieldPolynomial> noether_current(const FieldPolynomial& lagrangian,
                                             const std::map<int, FieldPolynomial>& gen,
                                             const std::vector<FieldPolynomial>* surface = nullptr);

enum class ConservationStatus { conserved, not_conserved_at_bound, inconclusive };

struct WitnessTerm {
    int field;                 // which stationarity expression
    DerivativeWord word;       // derivative applied to it
    Monomial multiplier;
    GRat coefficient;
};

struct ConservationCertificate {
    ConservationStatus status = ConservationStatus::inconclusive;
    std::vector<WitnessTerm> witness;

    /// Re-expanded witness sum, for independent verification.
    FieldPolynomial reconstruct(const std::map<int, FieldPolynomial>& el) const;
};

/// Decide divergence(j) ∈ ideal generated by the stationarity expressions and
/// their derivatives, searching multipliers and derivative words up to
/// `derivative_bound`.  Exact linear algebra over the monomial basis.
ConservationCertificate check_conserved(const std::vector<FieldPolynomial>& j,
                                        const std::map<int, FieldPolynomial>& el,
                                        int derivative_bound,
                                        std::size_t max_candidates = 20000);

}  // namespace perturbia::fields
