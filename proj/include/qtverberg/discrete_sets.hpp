#pragma once

#include "qtverberg/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtv {

class DiscreteSetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// r linearly independent rational vectors in Q^d generating a lattice.
class LatticeBasis {
public:
    LatticeBasis() = default;
    LatticeBasis(std::size_t dim, std::vector<Vector> vectors);

    static LatticeBasis standard(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return vectors_.size(); }
    const std::vector<Vector> &vectors() const { return vectors_; }

    // Coefficients c with sum c_i b_i = p, or nullopt if p is outside the span.
    std::optional<Vector> coordinates(const Point &p) const;
    // Left inverse of the basis evaluated at p; equals coordinates(p) on span(L).
    Vector projected_coordinates(const Point &p) const;
    Point point_at(const std::vector<Integer> &coords) const;
    bool contains(const Point &p) const;
    bool contains_lattice(const LatticeBasis &sub) const;

private:
    std::size_t dim_ = 0;
    std::vector<Vector> vectors_;
    std::vector<std::size_t> pivot_rows_;   // coordinates where the basis is invertible
    std::vector<Vector> pivot_inverse_;     // inverse of the basis restricted to pivot_rows_
};

// Axis-aligned box [lower_i, upper_i] in ambient coordinates.
struct Box {
    std::vector<Integer> lower;
    std::vector<Integer> upper;

    static Box cube(std::size_t dim, long lo, long hi);
    std::size_t dim() const { return lower.size(); }
    PointSet corners() const;
};

// A discrete set S: a lattice, a lattice minus finitely many sublattices, or
// the mixed product Z^a x R^b (bounds only).
class DiscreteSetSpec {
public:
    enum class Variant { lattice, difference, mixed };

    static DiscreteSetSpec integer_lattice(std::size_t dim);
    static DiscreteSetSpec lattice(LatticeBasis basis);
    // Throws DiscreteSetError unless every sublattice lies in `basis`.
    static DiscreteSetSpec difference(LatticeBasis basis, std::vector<LatticeBasis> sublattices);
    static DiscreteSetSpec mixed(std::size_t integer_dims, std::size_t real_dims);

    Variant variant() const { return variant_; }
    std::size_t dim() const { return dim_; }
    bool enumerable() const { return variant_ != Variant::mixed; }
    const LatticeBasis &basis() const { return basis_; }
    const std::vector<LatticeBasis> &sublattices() const { return sublattices_; }
    std::size_t integer_dims() const { return a_; }
    std::size_t real_dims() const { return b_; }

    std::string describe() const;

private:
    Variant variant_ = Variant::lattice;
    std::size_t dim_ = 0;
    LatticeBasis basis_;
    std::vector<LatticeBasis> sublattices_;
    std::size_t a_ = 0;
    std::size_t b_ = 0;
};

// V-representation of a polytope.
struct PolytopeV {
    PointSet vertices;
};

struct HollowCertificate {
    PointSet set;
    std::size_t k = 1;
    std::vector<Point> nonvertex_points;

    bool hollow() const { return nonvertex_points.size() < k; }
};

enum class BoundMode { paper, best };
enum class SearchMode { exhaustive, greedy };

struct HollowSearchOptions {
    std::size_t exhaustive_cap = 20;
};

bool set_contains(const DiscreteSetSpec &s, const Point &p);

// Points of S in conv(vertices), sorted lexicographically. Each returned
// point has passed an exact membership test.
std::vector<Point> enumerate_in_polytope(const DiscreteSetSpec &s, const PolytopeV &k);

// Points of S in the box, sorted lexicographically.
std::vector<Point> enumerate_in_box(const DiscreteSetSpec &s, const Box &box);

// Number of points of S in the box, without materializing them when S is a
// plain lattice; saturates at UINT64_MAX.
std::uint64_t count_in_box(const DiscreteSetSpec &s, const Box &box);

std::pair<std::size_t, HollowCertificate> count_nonvertex(const DiscreteSetSpec &s, const PointSet &p,
                                                          std::size_t k = 1);
bool is_k_hollow(const PointSet &p, const DiscreteSetSpec &s, std::size_t k);
bool is_k_hoffman(const PointSet &p, const DiscreteSetSpec &s, std::size_t k);

// Maximum (exhaustive) or inclusion-maximal (greedy) k-hollow subset of S
// within the box. Throws CapExceeded if exhaustive search would exceed the cap.
HollowCertificate hollow_search(const DiscreteSetSpec &s, const Box &box, std::size_t k, SearchMode mode,
                                const HollowSearchOptions &opts = {});

std::uint64_t helly_upper_bound(const DiscreteSetSpec &s, std::size_t k, BoundMode mode);
std::uint64_t tverberg_upper_bound(const DiscreteSetSpec &s, std::size_t m, std::size_t k, BoundMode mode);

// Predicates restricted to a finite ground set G with S ∩ conv(P) ⊆ G; used
// by searches that already hold S ∩ box.
namespace ground {
std::size_t count_nonvertex(const std::vector<Point> &ground_set, const PointSet &p,
                            std::vector<Point> *nonvertex = nullptr);
bool is_k_hoffman(const std::vector<Point> &ground_set, const PointSet &p, std::size_t k);
} // namespace ground

std::string to_string(BoundMode m);
BoundMode parse_bound_mode(const std::string &s);
SearchMode parse_search_mode(const std::string &s);

} // namespace qtv
