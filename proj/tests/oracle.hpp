#pragma once

// Test-only brute-force oracles, kept independent of the library's main
// computation paths.

#include "excouple/abgroup.hpp"
#include "excouple/intmat.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using excouple::Int;
using excouple::IntMat;
using excouple::IntVec;

// gcd of all k x k minors of m (0 if all vanish), by brute-force enumeration.
inline Int minor_gcd(const IntMat& m, std::size_t k) {
    std::vector<std::size_t> ridx(m.rows()), cidx(m.cols());
    std::iota(ridx.begin(), ridx.end(), 0);
    std::iota(cidx.begin(), cidx.end(), 0);
    Int g = 0;
    std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    std::sort(rsel.begin(), rsel.end());
    // iterate over row subsets via prev_permutation of the selection mask
    std::vector<std::size_t> rows, cols;
    std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t, std::size_t,
                       const std::function<void()>&)>
        choose = [&](std::size_t start, std::vector<std::size_t>& acc, std::size_t need,
                     std::size_t total, const std::function<void()>& fn) {
            if (acc.size() == need) { fn(); return; }
            for (std::size_t i = start; i < total; ++i) {
                acc.push_back(i);
                choose(i + 1, acc, need, total, fn);
                acc.pop_back();
            }
        };
    choose(0, rows, k, m.rows(), [&] {
        choose(0, cols, k, m.cols(), [&] {
            IntMat sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
            g = boost::multiprecision::gcd(g, excouple::determinant(sub));
        });
    });
    if (g < 0) g = -g;
    return g;
}

// All lattice points of the row lattice of gens (plus relations) inside the
// box [-bound, bound]^n, by brute-force integer combinations.
inline std::set<std::vector<long>> lattice_points_in_box(const IntMat& latt, long bound,
                                                         long coeff_bound) {
    const std::size_t n = latt.cols();
    std::set<std::vector<long>> pts;
    std::vector<long> coeff(latt.rows(), -coeff_bound);
    for (;;) {
        IntVec v(n);
        for (std::size_t i = 0; i < latt.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] += Int(coeff[i]) * latt(i, j);
        bool inside = true;
        std::vector<long> pt(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] > bound || v[j] < -bound) { inside = false; break; }
            pt[j] = static_cast<long>(v[j]);
        }
        if (inside) pts.insert(pt);
        std::size_t i = 0;
        while (i < coeff.size() && coeff[i] == coeff_bound) coeff[i++] = -coeff_bound;
        if (i == coeff.size()) break;
        ++coeff[i];
    }
    if (latt.rows() == 0) pts.insert(std::vector<long>(n, 0));
    return pts;
}

// Order of the group presented by (n, relations); 0 means infinite.
// Brute force: index of the relation lattice in Z^n via determinant.
inline Int group_order(const excouple::PresentedGroup& g) {
    const IntMat& r = g.relations();
    if (r.rows() < g.num_generators()) return 0;
    IntMat sq(g.num_generators(), g.num_generators());
    for (std::size_t i = 0; i < g.num_generators(); ++i)
        for (std::size_t j = 0; j < g.num_generators(); ++j) sq(i, j) = r(i, j);
    Int d = excouple::determinant(sq);
    return d < 0 ? -d : d;
}

// Invariants of ker(d_out)/im(d_in) for a free chain spot, computed straight
// from SNF data (no subquotient machinery involved).
inline excouple::GroupInvariants homology_invariants(const IntMat& d_out, const IntMat& d_in) {
    IntMat k = excouple::kernel_basis(d_out);
    IntMat rel(d_in.cols(), k.cols());
    for (std::size_t c = 0; c < d_in.cols(); ++c) {
        auto x = excouple::solve(k, d_in.column(c));
        if (!x) throw std::logic_error("homology oracle: boundary is not a cycle");
        for (std::size_t j = 0; j < k.cols(); ++j) rel(c, j) = (*x)[j];
    }
    auto s = excouple::smith_normal_form(rel);
    excouple::GroupInvariants inv;
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < k.cols() && j < rel.rows(); ++j)
        if (s.d(j, j) != 0) {
            ++nonzero;
            if (s.d(j, j) > 1) inv.torsion.push_back(s.d(j, j));
        }
    inv.rank = k.cols() - nonzero;
    return inv;
}

// Block-diagonal direct sum, for comparing a column of E_infinity entries
// against a single homology group.
inline excouple::PresentedGroup direct_sum(const std::vector<excouple::PresentedGroup>& gs) {
    std::size_t n = 0, r = 0;
    for (const auto& g : gs) {
        n += g.num_generators();
        r += g.relations().rows();
    }
    IntMat rel(r, n);
    std::size_t roff = 0, coff = 0;
    for (const auto& g : gs) {
        for (std::size_t i = 0; i < g.relations().rows(); ++i)
            for (std::size_t j = 0; j < g.num_generators(); ++j)
                rel(roff + i, coff + j) = g.relations()(i, j);
        roff += g.relations().rows();
        coff += g.num_generators();
    }
    return excouple::PresentedGroup(n, rel);
}

// Random matrix with entries uniform in [-mag, mag].
inline IntMat random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int mag) {
    std::uniform_int_distribution<int> d(-mag, mag);
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

// Random unimodular matrix built from elementary operations.
inline IntMat random_unimodular(std::mt19937& rng, std::size_t n, int ops = 12) {
    IntMat u = IntMat::identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int k = 0; k < ops; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        u.add_row_multiple(i, j, coef(rng));
    }
    return u;
}

}  // namespace oracle
