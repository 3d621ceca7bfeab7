#include "excouple/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace excouple {

IntMat::IntMat(std::initializer_list<std::initializer_list<Int>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw invalid_input("ragged matrix initializer");
        for (const auto& x : row) data_.push_back(x);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMat m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw invalid_input("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw internal_error("matrix product shape mismatch");
    IntMat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
        }
    return out;
}

IntVec IntMat::operator*(const IntVec& v) const {
    if (cols_ != v.size()) throw internal_error("matrix-vector shape mismatch");
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

IntMat IntMat::operator-() const {
    IntMat out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
}

IntMat IntMat::transpose() const {
    IntMat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

IntMat IntMat::hstack(const IntMat& o) const {
    if (rows_ != o.rows_) throw internal_error("hstack row mismatch");
    IntMat out(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, cols_ + j) = o(i, j);
    }
    return out;
}

IntVec IntMat::column(std::size_t c) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

IntVec IntMat::row(std::size_t r) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
}

bool IntMat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

void IntMat::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMat::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMat::add_row_multiple(std::size_t dst, std::size_t src, const Int& m) {
    if (m == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += m * (*this)(src, j);
}

void IntMat::add_col_multiple(std::size_t dst, std::size_t src, const Int& m) {
    if (m == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += m * (*this)(i, src);
}

void IntMat::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMat::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

SmithResult smith_normal_form(const IntMat& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithResult res{IntMat::identity(rows), m, IntMat::identity(cols)};
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;

    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        // find a nonzero pivot in the trailing block
        std::size_t pr = t, pc = t;
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i)
            for (std::size_t j = t; j < cols && !found; ++j)
                if (d(i, j) != 0) { pr = i; pc = j; found = true; }
        if (!found) break;
        d.swap_rows(t, pr); u.swap_rows(t, pr);
        d.swap_cols(t, pc); v.swap_cols(t, pc);

        for (;;) {
            // clear column t below the pivot
            bool again = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                while (d(i, t) != 0) {
                    Int q = d(i, t) / d(t, t);
                    d.add_row_multiple(i, t, -q); u.add_row_multiple(i, t, -q);
                    if (d(i, t) != 0) { d.swap_rows(t, i); u.swap_rows(t, i); again = true; }
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                while (d(t, j) != 0) {
                    Int q = d(t, j) / d(t, t);
                    d.add_col_multiple(j, t, -q); v.add_col_multiple(j, t, -q);
                    if (d(t, j) != 0) { d.swap_cols(t, j); v.swap_cols(t, j); again = true; }
                }
            }
            if (!again) break;
        }

        if (d(t, t) < 0) { d.negate_row(t); u.negate_row(t); }

        // enforce divisibility d_t | everything in the trailing block
        bool redo = false;
        for (std::size_t i = t + 1; i < rows && !redo; ++i)
            for (std::size_t j = t + 1; j < cols && !redo; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    d.add_row_multiple(t, i, 1); u.add_row_multiple(t, i, 1);
                    redo = true;
                }
        if (redo) { --t; continue; }
    }
    return res;
}

IntMat hermite_row_basis(const IntMat& m) {
    IntMat h = m;
    const std::size_t rows = h.rows(), cols = h.cols();
    std::size_t r = 0;  // next pivot row
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd the entries of column c in rows >= r into row r
        for (std::size_t i = r + 1; i < rows; ++i) {
            while (h(i, c) != 0) {
                if (h(r, c) == 0) { h.swap_rows(r, i); break; }
                Int q = h(i, c) / h(r, c);
                h.add_row_multiple(i, r, -q);
                if (h(i, c) != 0) h.swap_rows(r, i);
            }
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) h.negate_row(r);
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < r; ++i) {
            Int q = h(i, c) / h(r, c);
            if (h(i, c) - q * h(r, c) < 0) q -= 1;
            h.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    IntMat out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = h(i, j);
    return out;
}

IntVec reduce_mod_lattice(IntVec v, const IntMat& hnf) {
    for (std::size_t i = 0; i < hnf.rows(); ++i) {
        std::size_t piv = 0;
        while (piv < hnf.cols() && hnf(i, piv) == 0) ++piv;
        if (piv == hnf.cols()) continue;
        Int q = v[piv] / hnf(i, piv);
        if (v[piv] - q * hnf(i, piv) < 0) q -= 1;  // floor division
        if (q != 0)
            for (std::size_t j = piv; j < hnf.cols(); ++j) v[j] -= q * hnf(i, j);
    }
    return v;
}

bool in_lattice(const IntVec& v, const IntMat& hnf) {
    return vec_is_zero(reduce_mod_lattice(v, hnf));
}

IntMat kernel_basis(const IntMat& m) {
    if (m.cols() == 0) return IntMat(0, 0);
    if (m.rows() == 0) return IntMat::identity(m.cols());
    SmithResult s = smith_normal_form(m);
    std::vector<IntVec> cols;
    const std::size_t n = m.cols();
    for (std::size_t j = 0; j < n; ++j) {
        bool zero_diag = j >= m.rows() || s.d(j, j) == 0;
        if (zero_diag) cols.push_back(s.v.column(j));
    }
    return IntMat::from_columns(n, cols);
}

std::optional<IntVec> solve(const IntMat& m, const IntVec& v) {
    if (m.rows() != v.size()) throw internal_error("solve shape mismatch");
    if (m.rows() == 0) return IntVec(m.cols());
    SmithResult s = smith_normal_form(m);
    IntVec uv = s.u * v;
    IntVec z(m.cols());
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i < n && s.d(i, i) != 0) {
            if (uv[i] % s.d(i, i) != 0) return std::nullopt;
            z[i] = uv[i] / s.d(i, i);
        } else if (uv[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v * z;
}

Int determinant(IntMat m) {
    if (m.rows() != m.cols()) throw internal_error("determinant of non-square matrix");
    const std::size_t n = m.rows();
    // Bareiss fraction-free elimination
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return n == 0 ? Int(1) : sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMat& m) {
    return hermite_row_basis(m).rows();
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVec vec_scale(const Int& c, const IntVec& v) {
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

bool vec_is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace excouple
