#pragma once

#include "krf/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace krf {

// Weight in the fundamental-weight basis; length = rank.
struct Weight {
    std::vector<long> c;

    Weight() = default;
    explicit Weight(std::vector<long> coeffs) : c(std::move(coeffs)) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<long>(rank, 0)); }

    bool dominant() const
    {
        for (long x : c)
            if (x < 0)
                return false;
        return true;
    }
    bool operator==(const Weight& o) const { return c == o.c; }
    bool operator<(const Weight& o) const { return c < o.c; }
    Weight operator+(const Weight& o) const
    {
        Weight r = *this;
        for (std::size_t i = 0; i < c.size(); ++i)
            r.c[i] += o.c[i];
        return r;
    }
    Weight operator-(const Weight& o) const
    {
        Weight r = *this;
        for (std::size_t i = 0; i < c.size(); ++i)
            r.c[i] -= o.c[i];
        return r;
    }
};

// Element of Q^+ in the simple-root basis, nonnegative coefficients.
struct RootVector {
    std::vector<long> m;

    RootVector() = default;
    explicit RootVector(std::vector<long> coeffs) : m(std::move(coeffs)) {}
    static RootVector zero(std::size_t rank) { return RootVector(std::vector<long>(rank, 0)); }

    long height() const
    {
        long h = 0;
        for (long x : m)
            h += x;
        return h;
    }
    bool is_zero() const { return height() == 0; }
    bool operator==(const RootVector& o) const { return m == o.m; }
    bool operator<(const RootVector& o) const { return m < o.m; }
    RootVector operator+(const RootVector& o) const
    {
        RootVector r = *this;
        for (std::size_t i = 0; i < m.size(); ++i)
            r.m[i] += o.m[i];
        return r;
    }
    // Componentwise difference; caller checks nonnegativity if needed.
    RootVector operator-(const RootVector& o) const
    {
        RootVector r = *this;
        for (std::size_t i = 0; i < m.size(); ++i)
            r.m[i] -= o.m[i];
        return r;
    }
    bool leq(const RootVector& o) const
    {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > o.m[i])
                return false;
        return true;
    }
};

// Weakly decreasing positive parts.
struct Partition {
    std::vector<long> parts;

    Partition() = default;
    explicit Partition(std::vector<long> p);

    long size() const
    {
        long s = 0;
        for (long x : parts)
            s += x;
        return s;
    }
    // Number of rows of length a.
    long row_count(long a) const;
    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const; // lexicographic
};

enum class DomRel { less, equal, greater, incomparable };

// Dominance comparison of partitions of equal size via partial sums.
DomRel dominance_compare(const Partition& mu, const Partition& nu);

// I-indexed tuple of partitions.
struct NTuplePartitions {
    std::vector<Partition> mu; // one per node

    bool operator==(const NTuplePartitions& o) const { return mu == o.mu; }
    bool operator<(const NTuplePartitions& o) const; // lexicographic, node-major
    bool all_empty() const;
};

// Exact root datum of a simple Lie algebra of rank <= 4, together with a
// Chevalley basis bracket table certified by a Jacobi scan.
struct CartanData {
    std::string type_label;
    std::size_t rank = 0;
    std::vector<std::vector<long>> cartan;   // c[i][j] = alpha_j(h_i)
    std::vector<long> sym;                   // minimal positive symmetrizers d_i
    std::vector<std::vector<long>> hatted;   // max{1 - c_ij, 1}
    std::vector<RootVector> positive_roots;  // height-then-lex total order
    // Bilinear form on the root lattice, normalized so the highest root has
    // squared length 2. form[i][j] = (alpha_i, alpha_j).
    std::vector<std::vector<Rat>> form;
    // N(a,b) for pairs of positive roots with a+b a positive root, keyed by
    // (index of a, index of b) in positive_roots; antisymmetric completion is
    // done by struct_constant().
    std::map<std::pair<int, int>, long> n_pos;

    long root_index(const RootVector& r) const; // -1 if not a positive root
    bool is_positive_root(const RootVector& r) const { return root_index(r) >= 0; }

    Rat pairing(const RootVector& a, const RootVector& b) const; // (a, b)
    // Coroot of a positive root, as integer coefficients over simple coroots.
    std::vector<long> coroot(const RootVector& a) const;
    // <h_i, w> for w in the fundamental-weight basis is just w.c[i]; this is
    // <h_alpha, w> for a general positive root alpha.
    long eval_coroot(const RootVector& alpha, const Weight& w) const;

    // Structure constant N(a,b) for arbitrary roots a, b (each given as a
    // positive root index and a sign), with a+b a root. Throws if a+b is not
    // a root or a+b == 0.
    long struct_constant(int ia, int sa, int ib, int sb) const;

    Weight root_to_weight(const RootVector& r) const;
    Weight fundamental(std::size_t i) const;
    Weight rho() const;

    long max_root_height() const;
};

// Supported labels: A1 A2 A3 B2 C2 B3 C3 D4 G2.
const CartanData& build_cartan(const std::string& type_label);

// Basis symbol of the Lie algebra: e_alpha / f_alpha (alpha a positive root,
// identified by index) or h_i.
struct LieBasisElt {
    enum Kind { E, F, H } kind;
    int idx; // root index for E/F, node for H
    bool operator<(const LieBasisElt& o) const
    {
        return std::pair(int(kind), idx) < std::pair(int(o.kind), o.idx);
    }
    bool operator==(const LieBasisElt& o) const { return kind == o.kind && idx == o.idx; }
};

using LieElt = std::map<LieBasisElt, Rat>; // sparse combination

// Bracket of basis symbols in the fixed Chevalley basis.
LieElt bracket(const CartanData& cd, const LieBasisElt& x, const LieBasisElt& y);
LieElt bracket(const CartanData& cd, const LieElt& x, const LieElt& y);

// Exhaustive Jacobi scan over all basis triples; throws on violation.
void check_jacobi(const CartanData& cd);

} // namespace krf
