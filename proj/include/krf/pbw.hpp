#pragma once

#include "krf/cartan.hpp"
#include "krf/fermionic.hpp"
#include "krf/linalg.hpp"

#include <map>
#include <optional>
#include <vector>

namespace krf {

// Letter f_{alpha,k}: a positive-root current generator.
struct CurrentLetter {
    int root; // index into positive_roots
    long k;   // t-degree, >= 0
    bool operator<(const CurrentLetter& o) const
    {
        return std::pair(root, k) < std::pair(o.root, o.k);
    }
    bool operator==(const CurrentLetter& o) const { return root == o.root && k == o.k; }
};

// Ordered monomial in the f_{alpha,k}, sorted by (root, k); the basis unit
// for enveloping-algebra linear algebra.
struct PBWMonomial {
    struct Factor {
        int root;
        long k;
        long exp; // >= 1
        bool operator<(const Factor& o) const
        {
            return std::tuple(root, k, exp) < std::tuple(o.root, o.k, o.exp);
        }
        bool operator==(const Factor& o) const
        {
            return root == o.root && k == o.k && exp == o.exp;
        }
    };
    std::vector<Factor> factors;

    RootVector weight(const CartanData& cd) const;
    long tdegree() const;
    long length() const; // number of letters counted with exponents
    std::vector<CurrentLetter> letters() const;
    bool operator<(const PBWMonomial& o) const { return factors < o.factors; }
    bool operator==(const PBWMonomial& o) const { return factors == o.factors; }
};

using MonCombo = std::map<PBWMonomial, Rat>;

PBWMonomial monomial_from_sorted_letters(const std::vector<CurrentLetter>& w);

// Expand an arbitrary word in current letters into the PBW basis using
// [f_{a,j}, f_{b,k}] = -N(a,b) f_{a+b,j+k}.
MonCombo straighten(const CartanData& cd, const std::vector<CurrentLetter>& word);

// All PBW monomials of weight gamma with t-degree <= degree_cap and every
// letter degree >= min_k, in the deterministic basis order.
std::vector<PBWMonomial> pbw_basis(const CartanData& cd, const RootVector& gamma,
                                   long degree_cap, long min_k = 0);

// Same, with t-degree exactly d.
std::vector<PBWMonomial> pbw_basis_fixed_degree(const CartanData& cd, const RootVector& gamma,
                                                long d, long min_k);

// Coefficient (F_i(z)^r)_s as a sum of sorted degree-homogeneous monomials in
// f_{i,k} with multinomial multiplicities. Empty when s > -r.
std::vector<std::pair<PBWMonomial, Int>> current_power_coefficient(const CartanData& cd, int node,
                                                                   long r, long s);

// Expansion of f_{beta,k} (beta any positive root) as a combination of words
// in simple-root letters; the t-power rides on the outermost letter.
std::vector<std::pair<Rat, std::vector<CurrentLetter>>> simple_word_expansion(const CartanData& cd,
                                                                              int root, long k);

// Spanning vectors of (n_- U^- + I)_{-gamma} up to t-degree D, expressed in
// the coordinates of pbw_basis(gamma, D).
struct IdealSlice {
    RootVector gamma;
    long degree_cap;
    std::vector<PBWMonomial> basis;
    std::vector<QVec> spanning; // rows over basis coordinates
};

IdealSlice ideal_slice(const CartanData& cd, const KRSpec& spec, const RootVector& gamma, long D);

long slice_corank(const IdealSlice& s);

// Corank of the ideal slice at each D of the schedule; returns the value once
// two consecutive caps agree.
struct StabilizedCount {
    std::optional<long> value;                   // empty if not stabilized
    std::vector<std::pair<long, long>> trace;    // (D, corank)
};

StabilizedCount multiplicity_upper_bound(const CartanData& cd, const KRSpec& spec,
                                         const RootVector& gamma,
                                         const std::vector<long>& schedule = {});

} // namespace krf
