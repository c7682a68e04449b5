#pragma once

#include "krf/fermionic.hpp"
#include "krf/linalg.hpp"
#include "krf/rep.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krf {

// Generator symbol x (x) t^k with x one of e_i, f_i, h_i.
struct GenKey {
    enum Kind { E, F, H } kind;
    int node;
    long k;
    bool operator<(const GenKey& o) const
    {
        return std::tuple(int(kind), node, k) < std::tuple(int(o.kind), o.node, o.k);
    }
};

// Requested realization outside the certified scope.
struct unsupported_realization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-dimensional weight-and-degree graded module over the current
// algebra, with explicit exact action matrices for the generators up to the
// truncation order K_max.
struct GradedModule {
    const CartanData* cd = nullptr;
    std::size_t dim = 0;
    std::vector<Weight> wt;
    std::vector<long> deg;
    bool graded = true; // false for evaluation modules at c != 0
    long K_max = 1;     // graded case: x (x) t^k = 0 for k >= K_max
    std::size_t cyclic_index = 0;
    std::map<GenKey, QMat> action;

    const QMat& act(GenKey::Kind kind, int node, long k) const;
    QVec apply(GenKey::Kind kind, int node, long k, const QVec& v) const;
    std::map<std::pair<Weight, long>, long> graded_character() const;
};

// Pull-back of V(lambda) along evaluation at t = c. All basis vectors sit in
// degree 0; the module is graded iff c == 0. K_cap bounds the stored t-powers
// in the filtered case.
GradedModule evaluation_module(const CartanData& cd, const Weight& lambda, const Rat& c,
                               long K_cap = 8);

// Evaluation realization of the level-l node-i module, certified at build
// time (defining relations on the cyclic vector + dimension audit against the
// fermionic count). Supported for type A and rank 1 only.
GradedModule kr_module(const CartanData& cd, int node, long level, const Rat& c);

// Associated graded of the tensor of pulled-back cyclic modules at pairwise
// distinct points.
GradedModule fusion_product(const CartanData& cd, const std::vector<GradedModule>& modules,
                            const std::vector<Rat>& points);

// Multiplicity of V(mu) per degree, computed both as the dimension of the
// simultaneous e_i kernel and via coinvariants; throws if the two disagree.
std::map<std::pair<Weight, long>, long> g_decompose(const GradedModule& m);

struct RelationCheck {
    std::string description;
    bool pass;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass = true;
};

// Verify the presentation relations of the fusion module on the cyclic
// vector: annihilation by n_+[t], the h (x) f(t) eigenvalue relations, and
// the full band of current-power relations.
RelationReport check_presentation(const GradedModule& m, const KRSpec& spec);

// CSV (weight coefficients, degree, dim) for the graded character.
void write_character_csv(std::ostream& os, const GradedModule& m);
// Sparse triplet dump of the action matrices: one line per entry,
// "kind node k row col value" with kind in {e,f,h}.
void write_action_triplets(std::ostream& os, const GradedModule& m);

} // namespace krf
