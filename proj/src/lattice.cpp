#include "riesz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace riesz {

SampleSpace::SampleSpace(std::vector<std::string> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw LengthMismatch("a sample space needs at least one atom");
    }
    if (atoms_.size() != weights_.size()) {
        throw LengthMismatch("atom name count does not match weight count");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw NonPositiveWeight("every atom weight must be strictly positive and finite");
        }
    }
    std::map<std::string, int> seen;
    for (const auto& a : atoms_) {
        if (++seen[a] > 1) {
            throw ValidationError("duplicate atom identifier '" + a + "'");
        }
    }
    total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

SpacePtr make_space(std::size_t atom_count, std::vector<double> weights) {
    if (atom_count == 0) {
        throw LengthMismatch("atom_count must be at least 1");
    }
    if (weights.size() != atom_count) {
        throw LengthMismatch("weight list length does not match atom count");
    }
    std::vector<std::string> names(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) {
        names[i] = "a" + std::to_string(i);
    }
    return std::make_shared<SampleSpace>(std::move(names), std::move(weights));
}

SpacePtr make_space(std::vector<std::string> atoms, std::vector<double> weights) {
    return std::make_shared<SampleSpace>(std::move(atoms), std::move(weights));
}

SpacePtr make_uniform_space(std::size_t atom_count) {
    if (atom_count == 0) {
        throw LengthMismatch("atom_count must be at least 1");
    }
    return make_space(atom_count, std::vector<double>(atom_count, 1.0 / double(atom_count)));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return a->atoms() == b->atoms() && a->weights() == b->weights();
}

namespace detail {
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (!same_space(a, b)) {
        throw SpaceMismatch(std::string(what) + ": operands live on different sample spaces");
    }
}
}  // namespace detail

LatticeVector::LatticeVector(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_ || values_.size() != space_->size()) {
        throw LengthMismatch("vector length does not match atom count of its space");
    }
}

LatticeVector LatticeVector::constant(SpacePtr space, double value) {
    std::size_t n = space->size();
    return LatticeVector(std::move(space), std::vector<double>(n, value));
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& rhs) {
    detail::require_same_space(space_, rhs.space_, "vector addition");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += rhs.values_[i];
    }
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& rhs) {
    detail::require_same_space(space_, rhs.space_, "vector subtraction");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= rhs.values_[i];
    }
    return *this;
}

LatticeVector& LatticeVector::operator*=(double scalar) {
    for (double& v : values_) {
        v *= scalar;
    }
    return *this;
}

LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs) {
    lhs += rhs;
    return lhs;
}

LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs) {
    lhs -= rhs;
    return lhs;
}

LatticeVector operator-(LatticeVector f) {
    f *= -1.0;
    return f;
}

LatticeVector operator*(double scalar, LatticeVector f) {
    f *= scalar;
    return f;
}

LatticeVector operator*(LatticeVector f, double scalar) {
    f *= scalar;
    return f;
}

LatticeVector multiply(const LatticeVector& f, const LatticeVector& g) {
    detail::require_same_space(f.space(), g.space(), "multiplication");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] * g[i];
    }
    return LatticeVector(f.space(), std::move(out));
}

LatticeVector sup(const LatticeVector& f, const LatticeVector& g) {
    detail::require_same_space(f.space(), g.space(), "sup");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = std::max(f[i], g[i]);
    }
    return LatticeVector(f.space(), std::move(out));
}

LatticeVector inf(const LatticeVector& f, const LatticeVector& g) {
    detail::require_same_space(f.space(), g.space(), "inf");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = std::min(f[i], g[i]);
    }
    return LatticeVector(f.space(), std::move(out));
}

LatticeVector abs(const LatticeVector& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = std::fabs(f[i]);
    }
    return LatticeVector(f.space(), std::move(out));
}

LatticeVector positive_part(const LatticeVector& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] > 0.0 ? f[i] : 0.0;
    }
    return LatticeVector(f.space(), std::move(out));
}

double max_component(const LatticeVector& f) {
    return *std::max_element(f.values().begin(), f.values().end());
}

double min_component(const LatticeVector& f) {
    return *std::min_element(f.values().begin(), f.values().end());
}

double max_abs(const LatticeVector& f) {
    double m = 0.0;
    for (double v : f.values()) {
        m = std::max(m, std::fabs(v));
    }
    return m;
}

bool leq(const LatticeVector& f, const LatticeVector& g, double tol) {
    detail::require_same_space(f.space(), g.space(), "leq");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] > g[i] + tol) {
            return false;
        }
    }
    return true;
}

bool approx_equal(const LatticeVector& f, const LatticeVector& g, double tol) {
    detail::require_same_space(f.space(), g.space(), "approx_equal");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::fabs(f[i] - g[i]) > tol) {
            return false;
        }
    }
    return true;
}

LatticeVector sqrt_exact(const LatticeVector& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0) {
            throw NegativeInput("sqrt_exact requires a nonnegative vector");
        }
        out[i] = std::sqrt(f[i]);
    }
    return LatticeVector(f.space(), std::move(out));
}

LatticeVector sqrt_dyadic(const LatticeVector& f, int level) {
    if (level < 1) {
        throw ValidationError("sqrt_dyadic level must be positive");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0) {
            throw NegativeInput("sqrt_dyadic requires a nonnegative vector");
        }
    }
    const SpacePtr& space = f.space();
    const LatticeVector e = LatticeVector::unit(space);
    const double scale = std::pow(2.0, double(level));
    const double cap = double(level);

    // Only grid cells occupied by some atom contribute; all other terms of
    // the dyadic sum vanish identically.
    std::vector<std::int64_t> cells;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < cap) {
            cells.push_back(std::int64_t(std::floor(f[i] * scale)));
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    LatticeVector result = LatticeVector::zero(space);
    for (std::int64_t k : cells) {
        // indicator of {k/2^n <= f < (k+1)/2^n} as a product of band
        // projections, exactly as the dyadic sum prescribes
        const double lo = double(k) / scale;
        const double hi = double(k + 1) / scale;
        BandProjection below_hi = positive_part_projection(hi * e - f);
        BandProjection below_lo = positive_part_projection(lo * e - f);
        LatticeVector cell = below_hi.indicator_vector() - below_lo.indicator_vector();
        result += std::sqrt(lo) * cell;
    }
    // cap band {f >= level} contributes sqrt(level)
    BandProjection below_cap = positive_part_projection(cap * e - f);
    result += std::sqrt(cap) * (e - below_cap.indicator_vector());
    return result;
}

Partition::Partition(std::size_t atom_count, std::vector<std::vector<std::size_t>> blocks) {
    if (atom_count == 0) {
        throw InvalidPartition("partition of an empty atom set");
    }
    block_of_.assign(atom_count, std::size_t(-1));
    for (auto& block : blocks) {
        if (block.empty()) {
            throw InvalidPartition("partition block is empty");
        }
        std::sort(block.begin(), block.end());
        for (std::size_t atom : block) {
            if (atom >= atom_count) {
                throw InvalidPartition("partition references atom index " + std::to_string(atom) +
                                       " beyond atom count " + std::to_string(atom_count));
            }
            if (block_of_[atom] != std::size_t(-1)) {
                throw InvalidPartition("partition blocks overlap at atom " + std::to_string(atom));
            }
            block_of_[atom] = 0;  // provisional; reassigned below
        }
    }
    for (std::size_t atom = 0; atom < atom_count; ++atom) {
        if (block_of_[atom] == std::size_t(-1)) {
            throw InvalidPartition("partition does not cover atom " + std::to_string(atom));
        }
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    blocks_ = std::move(blocks);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (std::size_t atom : blocks_[b]) {
            block_of_[atom] = b;
        }
    }
}

Partition Partition::trivial(std::size_t atom_count) {
    std::vector<std::size_t> all(atom_count);
    std::iota(all.begin(), all.end(), std::size_t(0));
    return Partition(atom_count, {std::move(all)});
}

Partition Partition::discrete(std::size_t atom_count) {
    std::vector<std::vector<std::size_t>> blocks(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) {
        blocks[i] = {i};
    }
    return Partition(atom_count, std::move(blocks));
}

Partition Partition::from_labels(const std::vector<int>& labels) {
    std::map<int, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        grouped[labels[i]].push_back(i);
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [label, atoms] : grouped) {
        blocks.push_back(std::move(atoms));
    }
    return Partition(labels.size(), std::move(blocks));
}

Partition Partition::level_sets(const LatticeVector& f) {
    std::map<double, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < f.size(); ++i) {
        grouped[f[i]].push_back(i);
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [value, atoms] : grouped) {
        blocks.push_back(std::move(atoms));
    }
    return Partition(f.size(), std::move(blocks));
}

Partition Partition::common_refinement(const Partition& p, const Partition& q) {
    if (p.atom_count() != q.atom_count()) {
        throw InvalidPartition("common_refinement of partitions over different atom sets");
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < p.atom_count(); ++i) {
        grouped[{p.block_of(i), q.block_of(i)}].push_back(i);
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [key, atoms] : grouped) {
        blocks.push_back(std::move(atoms));
    }
    return Partition(p.atom_count(), std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (atom_count() != coarser.atom_count()) {
        return false;
    }
    for (const auto& block : blocks_) {
        std::size_t target = coarser.block_of(block.front());
        for (std::size_t atom : block) {
            if (coarser.block_of(atom) != target) {
                return false;
            }
        }
    }
    return true;
}

CondExpOperator::CondExpOperator(SpacePtr space, Partition partition)
    : space_(std::move(space)), partition_(std::move(partition)) {
    if (!space_ || partition_.atom_count() != space_->size()) {
        throw InvalidPartition("partition atom count does not match the sample space");
    }
    block_weight_.assign(partition_.block_count(), 0.0);
    for (std::size_t b = 0; b < partition_.block_count(); ++b) {
        for (std::size_t atom : partition_.blocks()[b]) {
            block_weight_[b] += space_->weight(atom);
        }
    }
}

LatticeVector CondExpOperator::apply(const LatticeVector& f) const {
    detail::require_same_space(space_, f.space(), "conditional expectation");
    std::vector<double> block_mean(partition_.block_count(), 0.0);
    for (std::size_t b = 0; b < partition_.block_count(); ++b) {
        double acc = 0.0;
        for (std::size_t atom : partition_.blocks()[b]) {
            acc += space_->weight(atom) * f[atom];
        }
        block_mean[b] = acc / block_weight_[b];
    }
    std::vector<double> out(f.size());
    for (std::size_t atom = 0; atom < f.size(); ++atom) {
        out[atom] = block_mean[partition_.block_of(atom)];
    }
    return LatticeVector(space_, std::move(out));
}

bool CondExpOperator::in_range(const LatticeVector& f, double tol) const {
    detail::require_same_space(space_, f.space(), "range membership");
    for (const auto& block : partition_.blocks()) {
        double ref = f[block.front()];
        for (std::size_t atom : block) {
            if (std::fabs(f[atom] - ref) > tol) {
                return false;
            }
        }
    }
    return true;
}

CondExpOperator cond_exp(SpacePtr space, Partition partition) {
    return CondExpOperator(std::move(space), std::move(partition));
}

bool is_compatible(const CondExpOperator& S, const CondExpOperator& T) {
    detail::require_same_space(S.space(), T.space(), "compatibility");
    bool structural = S.partition().refines(T.partition());

    // Cross-check the refinement answer against ST = TS = T on the
    // coordinate basis; a disagreement would mean a broken invariant.
    bool identity = true;
    const SpacePtr& sp = S.space();
    const double tol = 1e-12;
    for (std::size_t i = 0; i < sp->size() && identity; ++i) {
        LatticeVector basis = LatticeVector::zero(sp);
        basis[i] = 1.0;
        LatticeVector t = T.apply(basis);
        if (!approx_equal(S.apply(t), t, tol) || !approx_equal(T.apply(S.apply(basis)), t, tol)) {
            identity = false;
        }
    }
    if (identity != structural) {
        throw Error("refinement check disagrees with the operator identity ST = TS = T");
    }
    return structural;
}

BandProjection::BandProjection(SpacePtr space, std::vector<std::uint8_t> indicator)
    : space_(std::move(space)), indicator_(std::move(indicator)) {
    if (!space_ || indicator_.size() != space_->size()) {
        throw LengthMismatch("indicator length does not match atom count");
    }
    for (auto v : indicator_) {
        if (v > 1) {
            throw ValidationError("band projection indicator entries must be 0 or 1");
        }
    }
}

BandProjection BandProjection::zero(SpacePtr space) {
    std::size_t n = space->size();
    return BandProjection(std::move(space), std::vector<std::uint8_t>(n, 0));
}

BandProjection BandProjection::identity(SpacePtr space) {
    std::size_t n = space->size();
    return BandProjection(std::move(space), std::vector<std::uint8_t>(n, 1));
}

LatticeVector BandProjection::indicator_vector() const {
    std::vector<double> out(indicator_.size());
    for (std::size_t i = 0; i < indicator_.size(); ++i) {
        out[i] = double(indicator_[i]);
    }
    return LatticeVector(space_, std::move(out));
}

LatticeVector BandProjection::apply(const LatticeVector& f) const {
    detail::require_same_space(space_, f.space(), "band projection");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = indicator_[i] ? f[i] : 0.0;
    }
    return LatticeVector(space_, std::move(out));
}

bool BandProjection::in_band_algebra(const CondExpOperator& S) const {
    detail::require_same_space(space_, S.space(), "band algebra membership");
    for (const auto& block : S.partition().blocks()) {
        std::uint8_t ref = indicator_[block.front()];
        for (std::size_t atom : block) {
            if (indicator_[atom] != ref) {
                return false;
            }
        }
    }
    return true;
}

BandProjection positive_part_projection(const LatticeVector& g) {
    std::vector<std::uint8_t> ind(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        ind[i] = g[i] > 0.0 ? 1 : 0;
    }
    return BandProjection(g.space(), std::move(ind));
}

}  // namespace riesz
