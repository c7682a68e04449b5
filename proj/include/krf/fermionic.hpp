#pragma once

#include "krf/cartan.hpp"

#include <map>
#include <vector>

namespace krf {

// A multiset of (node, level) pairs defining a fusion product.
struct KRSpec {
    std::vector<std::pair<int, long>> factors; // (node index 0-based, level >= 1)

    Weight highest_weight(const CartanData& cd) const;
    // Levels attached to node i (the multiset {l_k : k in S_i}).
    std::vector<long> levels_at(int node) const;
    long max_level() const;
    std::size_t size() const { return factors.size(); }

    // Canonical form: factors sorted. The counting operations depend only on
    // the multiset, which the tests exercise.
    KRSpec sorted() const;
};

// Finite-support map (node, a) -> m_a^{(i)}.
struct ConfigShape {
    std::map<std::pair<int, long>, long> m; // only nonzero entries

    RootVector gamma(const CartanData& cd) const;
    long at(int node, long a) const;
    bool operator<(const ConfigShape& o) const { return m < o.m; }
    bool operator==(const ConfigShape& o) const { return m == o.m; }
};

// Vacancy number p_a^{(i)}.
long vacancy(const CartanData& cd, const KRSpec& spec, const ConfigShape& config, int node, long a);

// All configurations with the given root-lattice weight and nonnegative
// vacancies everywhere, in a deterministic order.
std::vector<ConfigShape> enumerate_configs(const CartanData& cd, const KRSpec& spec,
                                           const RootVector& gamma);

// Sum over admissible configurations of products binom(p+m, m).
// Requires lambda - gamma dominant.
Int fermionic_multiplicity(const CartanData& cd, const KRSpec& spec, const RootVector& gamma);

// Sum of fermionic_multiplicity(gamma) * dim V(lambda-gamma) over all gamma
// with lambda - gamma dominant.
Int fermionic_total(const CartanData& cd, const KRSpec& spec);

// True iff sum_k min{r, mu_k^{(i)}} >= sum_k min{r, nu_k^{(i)}} for every
// node i and every r > 0 (sizes must match per node).
bool dominance_surjection_exists(const NTuplePartitions& mu, const NTuplePartitions& nu);

} // namespace krf
