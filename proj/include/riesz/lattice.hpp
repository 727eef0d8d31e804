#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "riesz/errors.hpp"

namespace riesz {

/// Finite weighted atom set carrying the whole construction. Weights are
/// strictly positive and need not sum to one; conditional expectations
/// normalise per block.
class SampleSpace {
   public:
    SampleSpace(std::vector<std::string> atoms, std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }
    double total_weight() const { return total_weight_; }

   private:
    std::vector<std::string> atoms_;
    std::vector<double> weights_;
    double total_weight_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

SpacePtr make_space(std::size_t atom_count, std::vector<double> weights);
SpacePtr make_space(std::vector<std::string> atoms, std::vector<double> weights);
SpacePtr make_uniform_space(std::size_t atom_count);

/// Two vectors may interoperate when they share a space object or the spaces
/// are structurally identical.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Element of the function space over a SampleSpace: one real per atom.
/// Order, lattice and algebra operations are all componentwise; the weak
/// order unit e is the all-ones vector.
class LatticeVector {
   public:
    LatticeVector(SpacePtr space, std::vector<double> values);

    static LatticeVector constant(SpacePtr space, double value);
    static LatticeVector unit(SpacePtr space) { return constant(std::move(space), 1.0); }
    static LatticeVector zero(SpacePtr space) { return constant(std::move(space), 0.0); }

    std::size_t size() const { return values_.size(); }
    const SpacePtr& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    LatticeVector& operator+=(const LatticeVector& rhs);
    LatticeVector& operator-=(const LatticeVector& rhs);
    LatticeVector& operator*=(double scalar);

   private:
    SpacePtr space_;
    std::vector<double> values_;
};

LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs);
LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs);
LatticeVector operator-(LatticeVector f);
LatticeVector operator*(double scalar, LatticeVector f);
LatticeVector operator*(LatticeVector f, double scalar);

/// Componentwise product; the f-algebra multiplication with unit e.
LatticeVector multiply(const LatticeVector& f, const LatticeVector& g);

LatticeVector sup(const LatticeVector& f, const LatticeVector& g);
LatticeVector inf(const LatticeVector& f, const LatticeVector& g);
LatticeVector abs(const LatticeVector& f);
LatticeVector positive_part(const LatticeVector& f);

double max_component(const LatticeVector& f);
double min_component(const LatticeVector& f);
double max_abs(const LatticeVector& f);

/// true iff f <= g + tol componentwise.
bool leq(const LatticeVector& f, const LatticeVector& g, double tol = 0.0);
/// true iff |f - g| <= tol componentwise.
bool approx_equal(const LatticeVector& f, const LatticeVector& g, double tol);

/// Componentwise square root; the convergence oracle for sqrt_dyadic.
LatticeVector sqrt_exact(const LatticeVector& f);

/// Square root of the level-n dyadic lower approximation of f, assembled
/// from the disjoint band projections onto the grid cells
/// {k/2^n <= f < (k+1)/2^n} plus the cap band {f >= n}. The result is
/// monotone in n and never exceeds sqrt_exact(f); for f <= n*e the gap is
/// at most 2^{-n/2} componentwise.
LatticeVector sqrt_dyadic(const LatticeVector& f, int level);

/// Disjoint cover of the atom indices. Blocks are canonicalised: atoms
/// sorted within blocks, blocks ordered by their smallest atom.
class Partition {
   public:
    Partition(std::size_t atom_count, std::vector<std::vector<std::size_t>> blocks);

    static Partition trivial(std::size_t atom_count);
    static Partition discrete(std::size_t atom_count);
    /// Builds the partition whose blocks are the distinct labels.
    static Partition from_labels(const std::vector<int>& labels);
    /// Level sets of f under exact value equality.
    static Partition level_sets(const LatticeVector& f);
    /// Coarsest common refinement (the join in the refinement order).
    static Partition common_refinement(const Partition& p, const Partition& q);

    std::size_t atom_count() const { return block_of_.size(); }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::size_t block_of(std::size_t atom) const { return block_of_[atom]; }

    /// true iff every block of *this is contained in a block of coarser.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& other) const = default;

   private:
    Partition() = default;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> block_of_;
};

/// Weighted block-averaging projection attached to a partition: the finite
/// model of a conditional expectation operator. Idempotent, positive,
/// fixes e, and averages: S(f * Sg) = Sf * Sg.
class CondExpOperator {
   public:
    CondExpOperator(SpacePtr space, Partition partition);

    const SpacePtr& space() const { return space_; }
    const Partition& partition() const { return partition_; }
    std::size_t block_count() const { return partition_.block_count(); }

    LatticeVector apply(const LatticeVector& f) const;

    /// true iff f is constant on every block, i.e. f lies in the range.
    bool in_range(const LatticeVector& f, double tol = 0.0) const;

   private:
    SpacePtr space_;
    Partition partition_;
    std::vector<double> block_weight_;
};

CondExpOperator cond_exp(SpacePtr space, Partition partition);

/// true iff S's partition refines T's, equivalently ST = TS = T. The
/// structural answer is cross-checked against the operator identity on the
/// coordinate basis.
bool is_compatible(const CondExpOperator& S, const CondExpOperator& T);

/// Multiplication by a 0/1 indicator: an order projection onto a band.
class BandProjection {
   public:
    BandProjection(SpacePtr space, std::vector<std::uint8_t> indicator);

    static BandProjection zero(SpacePtr space);
    static BandProjection identity(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    const std::vector<std::uint8_t>& indicator() const { return indicator_; }
    LatticeVector indicator_vector() const;
    LatticeVector apply(const LatticeVector& f) const;

    /// Membership in the band algebra of S: the indicator is constant on
    /// every block of S's partition.
    bool in_band_algebra(const CondExpOperator& S) const;

   private:
    SpacePtr space_;
    std::vector<std::uint8_t> indicator_;
};

/// Band projection onto the band generated by the positive part of g,
/// i.e. the indicator of {g > 0}.
BandProjection positive_part_projection(const LatticeVector& g);

namespace detail {
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);
}

/// Absolute tolerance for asserting identities and inequalities: 1e-9
/// scaled by the magnitude of the quantities involved.
inline double ineq_tolerance(double scale) {
    return 1e-9 * (scale > 1.0 ? scale : 1.0);
}

}  // namespace riesz
