#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace krf {

// Exact arithmetic scalars. All linear algebra in this project is over Q;
// no floating point appears anywhere in the computational paths.
using Int = mpz_class;
using Rat = mpq_class;

inline Int binomial(const Int& n, unsigned long k)
{
    if (n < 0)
        throw std::invalid_argument("binomial: negative upper index");
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int factorial(unsigned long n)
{
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q)
{
    if (!is_integer(q))
        throw std::runtime_error("to_long: not an integer");
    return static_cast<long>(q.get_num().get_si());
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

} // namespace krf
