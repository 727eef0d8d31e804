#pragma once

#include <vector>

#include "riesz/lattice.hpp"
#include "riesz/norms.hpp"
#include "riesz/report.hpp"

namespace riesz {

class FamilyOperators;  // see process.hpp

enum class MixKind { alpha, phi };

/// A conditional mixing coefficient: nonnegative and constant on the blocks
/// of the conditioning operator.
struct MixingCoefficient {
    MixKind kind;
    LatticeVector value;
};

/// All band projections whose indicator is constant on S's blocks, i.e.
/// every union of S-blocks including 0 and the identity. Throws CapExceeded
/// when S has more than cap blocks.
std::vector<BandProjection> enumerate_band_projections(const CondExpOperator& S, std::size_t cap);

/// Strong mixing coefficient between U and V conditioned on T: the
/// componentwise maximum of |T(PQe) - TPe * TQe| over P in B(U), Q in B(V).
/// The enumeration runs independently inside each T-block, which visits
/// exactly the projection pairs that can attain the blockwise maximum.
MixingCoefficient alpha_coefficient(const CondExpOperator& U, const CondExpOperator& V,
                                    const CondExpOperator& T, std::size_t cap);

/// Uniform mixing coefficient: the componentwise maximum of
/// ||U(Qe) - T(Qe)||_{T,inf} over Q in B(V). Dominates the strong
/// coefficient.
MixingCoefficient phi_coefficient(const CondExpOperator& U, const CondExpOperator& V,
                                  const CondExpOperator& T, std::size_t cap);

/// ||Uf - Tf||_{T,1} <= 4 alpha_T(U,V) ||f||_{T,inf} for f in the range
/// of V.
Report verify_strong_mixing_inequality(const CondExpOperator& U, const CondExpOperator& V,
                                       const CondExpOperator& T, const LatticeVector& f,
                                       std::size_t cap);

/// ||Uf - Tf||_{T,1} <= ||Uf - Tf||_{T,inf} <= 2 phi_T(U,V) ||f||_{T,inf}
/// for f in the range of V.
Report verify_uniform_mixing_inequality(const CondExpOperator& U, const CondExpOperator& V,
                                        const CondExpOperator& T, const LatticeVector& f,
                                        std::size_t cap);

/// Sequence coefficient at gap m: the componentwise maximum over n of the
/// coefficient between the backward tail up to n and the forward tail from
/// n+m, both realised on the family's finite window.
MixingCoefficient sequence_alpha(const FamilyOperators& family, int m, std::size_t cap);
MixingCoefficient sequence_phi(const FamilyOperators& family, int m, std::size_t cap);

}  // namespace riesz
