#pragma once

#include "krf/cartan.hpp"
#include "krf/fermionic.hpp"
#include "krf/laurent.hpp"
#include "krf/linalg.hpp"
#include "krf/pbw.hpp"

#include <optional>
#include <vector>

namespace krf {

// Variable layout of the function space attached to gamma: one block of
// m_i variables per node, nodes ascending.
struct VarLayout {
    std::vector<int> sizes;   // m_i per node
    std::vector<int> offsets; // block starts
    int width = 0;

    static VarLayout of(const CartanData& cd, const RootVector& gamma);
    int var(int node, int r) const { return offsets[node] + r; } // r is 0-based
    int group_of(int v) const;
    std::vector<std::vector<int>> groups() const;
};

// Rational function: Laurent numerator over a product of differences
// (x_a - x_b), a < b positionally.
struct RationalFn {
    int width = 0;
    LaurentPoly num;
    std::map<std::pair<int, int>, long> den;

    bool is_zero() const { return num.is_zero(); }
};

// Element of the functional space attached to gamma: numerator over the
// implicit canonical denominator (the product of all cross-node
// differences).
struct RationalElement {
    RootVector gamma;
    LaurentPoly num;

    bool is_zero() const { return num.is_zero(); }
    // Total degree (numerator degree minus denominator degree); requires a
    // homogeneous nonzero numerator.
    long degree(const CartanData& cd) const;
};

long denominator_degree(const CartanData& cd, const RootVector& gamma);

RationalFn to_fn(const CartanData& cd, const RationalElement& e);

// Structural invariants: in-block symmetry and the vanishing condition on
// collisions prescribed by the hatted Cartan entries.
bool validate_element(const CartanData& cd, const RationalElement& e, std::string* why = nullptr);

// --- residue calculus ------------------------------------------------------

// Res_{x_v} x_v^k f with the global expansion convention: the residue
// variable is small, every (x_v - y)^{-1} expands in nonnegative powers of
// x_v. The variable is removed from the space.
RationalFn residue_small(const RationalFn& f, int v, long k);

// Pole order of f along x_a = x_b (negative values indicate a zero).
long pole_order(const RationalFn& f, int a, int b);

// Substitute x_a := x_b; requires no pole along x_a = x_b. Slot a is removed.
RationalFn substitute_equal(const RationalFn& f, int a, int b);

// Res_{x_a = x_b} f = ((x_a - x_b) f)|_{x_a = x_b}; requires at most a
// simple pole.
RationalFn residue_at_equal(const RationalFn& f, int a, int b);

bool fn_equal(const RationalFn& f, const RationalFn& g);

// R_{i,k}: U_gamma -> U_{gamma - alpha_i}.
RationalElement residue_R(const CartanData& cd, int node, long k, const RationalElement& e);

// Iterated pairing <f_{i_1,k_1}...f_{i_N,k_N}, g>, letters given as
// (node, k). Requires word weight <= gamma componentwise.
RationalElement pair_word(const CartanData& cd, const std::vector<std::pair<int, long>>& word,
                          const RationalElement& e);

// As pair_word, but an exhausted variable class yields the zero element
// rather than an error (the pairing of mismatched weights).
RationalElement pair_word_or_zero(const CartanData& cd,
                                  const std::vector<std::pair<int, long>>& word,
                                  const RationalElement& e);

Rat scalar_of(const RationalElement& e); // gamma must be 0

// Pairing of a PBW monomial (factors expanded through nested commutators of
// simple currents) against an element of full weight; scalar result.
Rat pair_monomial(const CartanData& cd, const PBWMonomial& m, const RationalElement& e);

// Nested commutator [R_{i_h,k_h},[...,[R_{i_2,k_2},R_{i_1,k_1}]...]] applied
// to e; the sequence lists (i_1,k_1),...,(i_h,k_h).
RationalElement nested_commutator_residue(const CartanData& cd,
                                          const std::vector<std::pair<int, long>>& seq,
                                          const RationalElement& e);

// The collapsed single-residue form of the same operator.
RationalFn collapsed_commutator_residue(const CartanData& cd,
                                        const std::vector<std::pair<int, long>>& seq,
                                        const RationalElement& e);

// True iff every successive residue along the sequence has at most a simple
// pole at the next collision.
bool check_simple_pole(const CartanData& cd, const std::vector<int>& node_seq,
                       const RationalElement& e);

// --- graded components of the dual spaces ----------------------------------

// Basis of the degree-d component cut out by symmetry, the vanishing
// condition, and the per-variable degree bound (<= -2).
std::vector<RationalElement> basis_of_barU(const CartanData& cd, const RootVector& gamma, long d);

// Additionally cut by the pole-order conditions of the spec'd level data.
std::vector<RationalElement> basis_of_V(const CartanData& cd, const KRSpec& spec,
                                        const RootVector& gamma, long d);

// Basis of numerators with symmetry + vanishing only, per-variable exponents
// in [lo, hi], homogeneous of the given total numerator degree. Used to
// sample random elements of the function space.
std::vector<RationalElement> sample_space(const CartanData& cd, const RootVector& gamma,
                                          long num_degree, int lo, int hi);

struct DimTrace {
    std::optional<long> value;
    std::vector<std::pair<long, long>> trace; // (window lo, cumulative dim)
};

// Total dimension over the degree window, widened until stable twice.
DimTrace dim_V(const CartanData& cd, const KRSpec& spec, const RootVector& gamma);

// --- specialization and the filtration --------------------------------------

struct SpecializedFn {
    NTuplePartitions mu;
    // y-variable labels: (node, row length a, row index u), lexicographic.
    std::vector<std::tuple<int, long, long>> labels;
    RationalFn fn;

    int label_index(int node, long a, long u) const;
};

SpecializedFn specialize_phi(const CartanData& cd, const RationalElement& e,
                             const NTuplePartitions& mu);

// phi_mu(e) == 0.
bool specializes_to_zero(const CartanData& cd, const RationalElement& e,
                         const NTuplePartitions& mu);

// e lies in the filtration component of mu: phi_nu(e) = 0 for all nu > mu.
bool gamma_filtration_test(const CartanData& cd, const RationalElement& e,
                           const NTuplePartitions& mu);

// All I-tuples of partitions with |mu^(i)| = sizes[i].
std::vector<NTuplePartitions> all_partition_tuples(const std::vector<long>& sizes);

long compute_P(const CartanData& cd, const NTuplePartitions& mu);

// --- dual current functions --------------------------------------------------

// The distinguished element of the degree dual attached to a positive root
// and a t-degree k >= 1.
RationalElement dual_current_function(const CartanData& cd, const RootVector& gamma_root, long k);

} // namespace krf
