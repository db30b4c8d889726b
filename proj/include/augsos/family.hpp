#pragma once

#include <cstddef>
#include <vector>

#include "augsos/group.hpp"
#include "augsos/ring.hpp"

namespace augsos {

/// Ordered n-tuple of generators (s_1, ..., s_n).
using GeneratorTuple = std::vector<Letter>;

enum class Sign { Plus = 1, Minus = -1 };

/// All n-tuples over the alphabet in lexicographic letter order.
std::vector<GeneratorTuple> all_tuples(const Group& group, std::size_t n);

/// (1 - s_1)(1 - s_2) ... (1 - s_n).
RingElement tuple_product(const GroupPtr& group, const GeneratorTuple& s);

/// The tuple s' with alpha_{s'} = alpha_s^*: reversed and inverted.
GeneratorTuple adjoint_tuple(const Group& group, const GeneratorTuple& s);

/// The codifferential d = [1 - s]_{s in S}, an |S| x 1 column.
RingMatrix codifferential(const GroupPtr& group);

/// D(xi) = d^* xi d for an |S| x |S| matrix.
RingElement apply_D(const RingMatrix& xi);

/// Sum_s (1 - s)^*(1 - s).
RingElement laplacian(const GroupPtr& group);

/// box(0) = 1, box(n) = D(diag(box(n-1))).
RingElement box(const GroupPtr& group, int n);
/// Sum over n-tuples of alpha_s^* alpha_s.
RingElement box_closed(const GroupPtr& group, int n);

/// Sum over n-tuples of alpha_s^* u alpha_s.
RingElement u_n(const RingElement& u, int n);

/// 2x2 matrix with zero diagonal, (0,1) = +-alpha_s g alpha_t and
/// (1,0) = +-alpha_t^* g^-1 alpha_s^*.
RingMatrix E_matrix(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t, const Word& g,
                    Sign sign);
/// diag(alpha_s alpha_s^*, alpha_t^* alpha_t).
RingMatrix box_st(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t);

/// d d^*: entry (s, t) = (1 - s)(1 - t)^*. D(d d^*) = Delta^2.
RingMatrix laplacian_squared_preimage(const GroupPtr& group);
/// Diagonal matrix with (1 - s)(1 - s)^* at (s, s).
RingMatrix sq_preimage(const GroupPtr& group);

/// m over I[G] with D(m) = xi, assembled from a depth-3 idempotence
/// decomposition. Not symmetrized.
RingMatrix d_preimage(const RingElement& xi, const FiniteAbelianizationWitness& w);
RingMatrix d_preimage(const RingElement& xi);

/// m over the group ring with D(m) = xi (depth-2 decomposition suffices).
RingMatrix d_preimage_group_ring(const RingElement& xi, const FiniteAbelianizationWitness& w);

/// (m + m^*) / 2.
RingMatrix hermitian_part(const RingMatrix& m);

}  // namespace augsos
