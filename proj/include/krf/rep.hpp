#pragma once

#include "krf/cartan.hpp"
#include "krf/linalg.hpp"
#include "krf/pbw.hpp"

#include <map>
#include <memory>
#include <vector>

namespace krf {

// (mu, nu) under the normalized invariant form, weights in the
// fundamental-weight basis.
Rat weight_pairing(const CartanData& cd, const Weight& mu, const Weight& nu);

// Root-basis coordinates of a weight; throws if not in the root lattice.
RootVector weight_to_root(const CartanData& cd, const Weight& w);
bool weight_in_root_lattice(const CartanData& cd, const Weight& w);

// Image of the lowest weight map w_0 lambda.
Weight lowest_weight(const CartanData& cd, const Weight& lambda);

// All gamma in Q^+ with lambda - gamma dominant, sorted by height then lex.
std::vector<RootVector> dominant_gamma_range(const CartanData& cd, const Weight& lambda);

Int weyl_dim(const CartanData& cd, const Weight& lambda);

// Full weight multiplicity table of V(lambda).
std::map<Weight, Int> freudenthal_weights(const CartanData& cd, const Weight& lambda);

// Decomposition of V(lambda) (x) V(mu) into simples.
std::map<Weight, Int> tensor_decompose(const CartanData& cd, const Weight& lambda,
                                       const Weight& mu);

// Explicit exact matrices of V(lambda) in a weight-adapted basis. Basis
// vectors are images of PBW monomials of U(n_-) applied to the highest
// weight vector, modulo the radical of the contravariant form.
struct IrrepMatrices {
    const CartanData* cd = nullptr;
    Weight lambda;
    std::size_t dim = 0;
    std::vector<Weight> wt;       // weight of each basis vector
    std::size_t highest_index = 0;
    std::vector<QMat> e, f, h;    // one per node
};

IrrepMatrices build_irrep(const CartanData& cd, const Weight& lambda);

} // namespace krf
