#ifndef PDEF_COMBINATORICS_HPP
#define PDEF_COMBINATORICS_HPP

// Shuffles and Koszul signs.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace pdef
{

// A permutation of {0..n-1} in one-line notation: perm[k] is the index that
// lands in position k, i.e. the arguments are read as x[perm[0]], x[perm[1]], ...
using Permutation = std::vector<std::size_t>;

// All (i,j)-shuffles: permutations increasing on the first i and on the last j
// positions, in lexicographic order of their one-line notation.
inline std::vector<Permutation> shuffles(std::size_t i, std::size_t j)
{
    std::vector<Permutation> out;
    const std::size_t n = i + j;
    // Choose the set of i values placed first; the rest follow in order.
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(i), true);
    // prev_permutation over a descending-sorted mask enumerates the subsets so
    // that the resulting one-line notations come out lexicographically.
    do {
        Permutation p;
        p.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (pick[v]) {
                p.push_back(v);
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!pick[v]) {
                p.push_back(v);
            }
        }
        out.push_back(std::move(p));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

inline int permutation_sign(const Permutation &p)
{
    int s = 1;
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            if (p[a] > p[b]) {
                s = -s;
            }
        }
    }
    return s;
}

// chi(sigma; x_1..x_k) = sign(sigma) * eps(sigma; x_1..x_k), where eps is the
// Koszul sign of x_1 ^ ... ^ x_k = eps * x_sigma(1) ^ ... ^ x_sigma(k) in the
// graded-commutative algebra. Each inversion contributes -(-1)^{|a||b|}.
inline int koszul_chi(const Permutation &sigma, const std::vector<int> &degrees)
{
    int s = 1;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        for (std::size_t b = a + 1; b < sigma.size(); ++b) {
            if (sigma[a] > sigma[b]) {
                const int da = degrees[sigma[a]], db = degrees[sigma[b]];
                if (((da * db) & 1) == 0) {
                    s = -s;
                }
            }
        }
    }
    return s;
}

inline int koszul_epsilon(const Permutation &sigma, const std::vector<int> &degrees)
{
    return koszul_chi(sigma, degrees) * permutation_sign(sigma);
}

inline constexpr int minus_one_pow(long e)
{
    return (e % 2 == 0) ? 1 : -1;
}

} // namespace pdef

#endif
