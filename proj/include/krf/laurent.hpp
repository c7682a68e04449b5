#pragma once

#include "krf/rat.hpp"

#include <map>
#include <vector>

namespace krf {

// Sparse multivariate Laurent polynomial; exponent vectors are positional,
// the variable layout is carried by the caller.
using Expo = std::vector<int>;

struct LaurentPoly {
    int width = 0;
    std::map<Expo, Rat> t; // no zero coefficients stored

    LaurentPoly() = default;
    explicit LaurentPoly(int w) : width(w) {}

    static LaurentPoly constant(int w, const Rat& c);
    static LaurentPoly monomial(int w, const Expo& e, const Rat& c);
    // x_a - x_b
    static LaurentPoly difference(int w, int a, int b);

    bool is_zero() const { return t.empty(); }
    void add(const Expo& e, const Rat& c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(const Rat& c) const;
    bool operator==(const LaurentPoly& o) const { return width == o.width && t == o.t; }

    // Shift one variable's exponent.
    LaurentPoly shifted(int var, int by) const;

    // Remap variables into a new space: target[v] is the slot of variable v
    // (several variables may share a target).
    LaurentPoly substituted(int new_width, const std::vector<int>& target) const;

    // Drop a variable that no monomial uses; positions above shift down.
    LaurentPoly dropped_var(int var) const;

    // Swap two variables.
    LaurentPoly swapped(int a, int b) const;

    long max_exponent(int var) const; // requires nonzero
    long min_exponent(int var) const;
    long total_degree_max() const;

    // Coefficients as a polynomial in one variable: exponent -> coefficient
    // with the slot zeroed.
    std::map<int, LaurentPoly> coefficients_in(int var) const;
};

// Quotient of f by (x_a - x_b); returns false if not divisible.
bool exact_divide_difference(const LaurentPoly& f, int a, int b, LaurentPoly& quotient);

// Largest power of (x_a - x_b) dividing f (f nonzero; capped).
long vanishing_order_difference(const LaurentPoly& f, int a, int b, long cap = 64);

// Sum over all products of permutations within the given variable groups.
LaurentPoly symmetrize(const LaurentPoly& f, const std::vector<std::vector<int>>& groups);

bool symmetric_in(const LaurentPoly& f, const std::vector<int>& group);

} // namespace krf
