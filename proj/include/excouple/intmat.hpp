#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace excouple {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Error thrown on malformed input (bad documents, violated preconditions).
class invalid_input : public std::runtime_error {
  public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/// Error thrown when an internal mathematical invariant fails; always a bug.
class internal_error : public std::logic_error {
  public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// Dense arbitrary-precision integer matrix, row major.
class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<Int>> init);

    static IntMat identity(std::size_t n);
    static IntMat zero(std::size_t rows, std::size_t cols) { return IntMat(rows, cols); }
    static IntMat from_columns(std::size_t rows, const std::vector<IntVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const IntMat& o) const = default;

    IntMat operator*(const IntMat& o) const;
    IntVec operator*(const IntVec& v) const;
    IntMat operator-() const;
    IntMat transpose() const;
    IntMat hstack(const IntMat& o) const;  // [this | o]
    IntVec column(std::size_t c) const;
    IntVec row(std::size_t r) const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& m);  // row dst += m * row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& m);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    IntVec data_;
};

struct SmithResult {
    IntMat u;  ///< unimodular, rows x rows
    IntMat d;  ///< diagonal, rows x cols, nonnegative, d_i | d_{i+1}
    IntMat v;  ///< unimodular, cols x cols
};

/// U * M * V = D with nonnegative diagonal and divisibility chain.
SmithResult smith_normal_form(const IntMat& m);

/// Row-style Hermite normal form of the row lattice of `m`: zero rows dropped,
/// pivots positive and strictly right-moving, entries above a pivot reduced
/// into [0, pivot). Canonical for the lattice, so equality of lattices is
/// equality of HNFs.
IntMat hermite_row_basis(const IntMat& m);

/// Reduce `v` to the canonical coset representative modulo the row lattice of
/// `hnf` (which must be a hermite_row_basis output).
IntVec reduce_mod_lattice(IntVec v, const IntMat& hnf);

/// Membership of `v` in the row lattice described by `hnf`.
bool in_lattice(const IntVec& v, const IntMat& hnf);

/// Basis of the integer kernel {x : M x = 0}, returned as columns.
IntMat kernel_basis(const IntMat& m);

/// Some integer solution of M x = v, if one exists.
std::optional<IntVec> solve(const IntMat& m, const IntVec& v);

/// Determinant via fraction-free elimination (square matrices only).
Int determinant(IntMat m);

/// Rank over Q.
std::size_t rank(const IntMat& m);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_scale(const Int& c, const IntVec& v);
bool vec_is_zero(const IntVec& v);

}  // namespace excouple
