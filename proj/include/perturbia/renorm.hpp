#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perturbia/fields.hpp"
#include "perturbia/multigraph.hpp"
#include "perturbia/polynomial.hpp"

namespace perturbia::renorm {

/// Hard size limit every map carries; all group laws are asserted within it.
struct Bound {
    int vertices = 3;
    int edges = 6;
    friend bool operator==(const Bound&, const Bound&) = default;
};

/// The catalogue of connected graph classes within a bound, with the
/// spanning-subgraph/contraction tables the convolutions need.
class GraphUniverse {
public:
    struct SubsetData {
        std::vector<int> gamma_components;   // class index per non-point component
        int contracted;                      // class index of Gamma / gamma
    };

    static const GraphUniverse& get(Bound bound);

    Bound bound() const { return bound_; }
    const std::vector<graphs::ClassEntry>& classes() const { return classes_; }
    int point_index() const { return point_; }
    int index_of(const std::string& code) const;            // -1 when absent
    bool is_one_pi(int idx) const { return one_pi_[static_cast<std::size_t>(idx)]; }
    const std::vector<SubsetData>& subsets(int idx) const {
        return subsets_[static_cast<std::size_t>(idx)];
    }
    int edge_count(int idx) const {
        return classes_[static_cast<std::size_t>(idx)].representative.size();
    }

private:
    explicit GraphUniverse(Bound bound);

    Bound bound_;
    std::vector<graphs::ClassEntry> classes_;
    std::map<std::string, int> index_;
    std::vector<bool> one_pi_;
    std::vector<std::vector<SubsetData>> subsets_;
    int point_ = -1;
};

/// Scalar counterterm: rational on each connected class, 1 on the point,
/// multiplicative over disjoint unions.  An element of the group of finite
/// renormalisations.
class CountertermMap {
public:
    CountertermMap(Bound bound, bool one_pi_supported);

    static CountertermMap identity(Bound bound);

    Bound bound() const { return bound_; }
    bool one_pi_supported() const { return one_pi_; }

    void set_value(const std::string& code, const Rat& v);
    Rat value(int class_index) const;
    Rat value(const std::string& code) const;
    const std::map<int, Rat>& values() const { return values_; }

    /// Product over connected components (codes must lie in the universe).
    Rat evaluate(const graphs::MultiGraph& g) const;

    friend bool operator==(const CountertermMap& a, const CountertermMap& b) {
        return a.bound_ == b.bound_ && a.values_ == b.values_;
    }

private:
    Bound bound_;
    bool one_pi_;
    std::map<int, Rat> values_;   // class index -> value, zero omitted
};

/// Toy value algebra: polynomials over the rationals in one symbol per
/// connected one-particle-irreducible class.
using Value = SparsePoly<Rat>;

/// Multiplicative, point-normalized assignment of values to graphs.
class Prescription {
public:
    explicit Prescription(Bound bound);

    /// Symbol of each 1PI piece, multiplied over pieces.
    static Prescription free_form(Bound bound);

    /// 1 on the point, 0 on everything else (the faithfulness witness).
    static Prescription delta_point(Bound bound);

    Bound bound() const { return bound_; }
    void set_value(const std::string& code, Value v);
    Value value(int class_index) const;
    Value value(const std::string& code) const;
    const std::map<int, Value>& values() const { return values_; }

    friend bool operator==(const Prescription& a, const Prescription& b) {
        return a.bound_ == b.bound_ && a.values_ == b.values_;
    }

private:
    Bound bound_;
    std::map<int, Value> values_;
};

/// Spanning-subgraph convolution (C1 ∘ C2)(G) = sum_g C1(g) C2(G/g).
CountertermMap compose(const CountertermMap& c1, const CountertermMap& c2);

/// Same sum with subgraphs containing a non-1PI component skipped up front;
/// requires both maps 1PI-supported and agrees with compose exactly.
CountertermMap compose_pruned(const CountertermMap& c1, const CountertermMap& c2);

/// Group inverse by induction on graph size.
CountertermMap inverse(const CountertermMap& c);

/// Action on prescriptions: C[F](G) = sum_g C(g) F(G/g).
Prescription act(const CountertermMap& c, const Prescription& f);

/// The counterterm carrying f1 to f2, built layer by layer.  Throws
/// DomainError when some required difference is not a scalar.
CountertermMap transitive_connector(const Prescription& f1, const Prescription& f2, Bound bound);

/// Scaling degree of a monomial in d-dimensional spacetime:
/// (d/2 - 1) per field factor plus one per derivative.
Rat term_degree(const fields::FieldConfig& cfg, const fields::Monomial& m, int d);

/// Largest power k with k (d/2 - 1) <= d; nullopt means unbounded (d = 2).
std::optional<int> dyson_max_power(int d);

}  // namespace perturbia::renorm
