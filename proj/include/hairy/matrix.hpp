#pragma once

// Sparse exact matrices over Q, rank by fraction-free elimination, and homology
// dimensions of consecutive boundary maps.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hairy/rational.hpp"

namespace hairy {

/// Raised when d_out * d_in != 0.
class ComplexIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    add_term(data_[r], c, v);
  }
  Rational at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
  }
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }
  bool is_integral() const {
    for (const auto& r : data_)
      for (const auto& [c, v] : r)
        if (v.get_den() != 1) return false;
    return true;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
    return t;
  }

  /// Appends a column.
  void append_column(const std::map<std::size_t, Rational>& col) {
    for (const auto& [r, v] : col) {
      if (r >= rows_) throw std::out_of_range("column entry out of range");
      if (sgn(v) != 0) data_[r].emplace(cols_, v);
    }
    ++cols_;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (const auto& [k, v] : a.data_[r])
        for (const auto& [c, w] : b.data_[k]) add_term(out.data_[r], c, v * w);
    return out;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Coordinate dump: header "rows cols nnz", then one "row col num/den" per entry.
  void write(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) os << r << ' ' << c << ' ' << v.get_num().get_str() << '/' << v.get_den().get_str() << '\n';
  }
  static RationalMatrix read(std::istream& is) {
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw std::invalid_argument("matrix dump: bad header");
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < nnz; ++i) {
      std::size_t r = 0, c = 0;
      std::string v;
      if (!(is >> r >> c >> v)) throw std::invalid_argument("matrix dump: truncated");
      m.add(r, c, parse_rational(v));
    }
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> data_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = abs(row.front().second);
  for (const auto& [c, v] : row) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline IntRow integer_row(const std::map<std::size_t, Rational>& r) {
  Integer l = 1;
  for (const auto& [c, v] : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(r.size());
  for (const auto& [c, v] : r) out.emplace_back(c, Integer(v.get_num() * (l / v.get_den())));
  make_primitive(out);
  return out;
}

}  // namespace detail

/// Exact rank. Rows are scaled to primitive integer vectors and eliminated without
/// fractions; the pivot is taken from a sparsest remaining row, in its column with the
/// fewest entries, then the smallest magnitude, then the lowest index.
inline std::size_t rank(const RationalMatrix& m) {
  using detail::IntRow;
  const std::size_t nr = m.rows();
  std::vector<IntRow> rows(nr);
  std::vector<std::vector<std::size_t>> col_rows(m.cols());
  std::vector<std::size_t> col_count(m.cols(), 0);
  using Item = std::tuple<std::size_t, std::size_t>;  // nnz, row
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> dead(nr, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    rows[r] = detail::integer_row(m.row(r));
    for (const auto& [c, v] : rows[r]) {
      col_rows[c].push_back(r);
      ++col_count[c];
    }
    if (rows[r].empty())
      dead[r] = 1;
    else
      heap.emplace(rows[r].size(), r);
  }

  auto has_col = [&](std::size_t r, std::size_t c) -> const Integer* {
    auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c, [](const auto& e, std::size_t x) { return e.first < x; });
    return it != rows[r].end() && it->first == c ? &it->second : nullptr;
  };

  std::size_t rk = 0;
  IntRow merged;
  while (!heap.empty()) {
    const auto [len, r] = heap.top();
    heap.pop();
    if (dead[r] || rows[r].size() != len) continue;
    // pivot column
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows[r].size(); ++i) {
      const auto& a = rows[r][i];
      const auto& b = rows[r][best];
      const auto ka = col_count[a.first], kb = col_count[b.first];
      if (ka != kb) {
        if (ka < kb) best = i;
        continue;
      }
      const int cmp = mpz_cmpabs(a.second.get_mpz_t(), b.second.get_mpz_t());
      if (cmp < 0) best = i;
    }
    const std::size_t c = rows[r][best].first;
    const Integer pv = rows[r][best].second;
    ++rk;
    dead[r] = 1;
    for (const auto& [cc, v] : rows[r]) --col_count[cc];
    const IntRow pivot_row = rows[r];
    auto targets = std::move(col_rows[c]);
    col_rows[c].clear();
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::size_t t : targets) {
      if (dead[t]) continue;
      const Integer* tv = has_col(t, c);
      if (!tv) continue;
      // row_t <- pv * row_t - tv * pivot_row, divided by gcd(pv, tv) first
      Integer g;
      mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), tv->get_mpz_t());
      const Integer a = pv / g, b = *tv / g;
      merged.clear();
      auto& tr = rows[t];
      std::size_t i = 0, j = 0;
      while (i < tr.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < tr.size() && tr[i].first < pivot_row[j].first)) {
          merged.emplace_back(tr[i].first, Integer(a * tr[i].second));
          ++i;
        } else if (i == tr.size() || pivot_row[j].first < tr[i].first) {
          merged.emplace_back(pivot_row[j].first, Integer(-b * pivot_row[j].second));
          col_rows[pivot_row[j].first].push_back(t);
          ++col_count[pivot_row[j].first];
          ++j;
        } else {
          Integer v = a * tr[i].second - b * pivot_row[j].second;
          if (sgn(v) != 0)
            merged.emplace_back(tr[i].first, std::move(v));
          else
            --col_count[tr[i].first];
          ++i;
          ++j;
        }
      }
      detail::make_primitive(merged);
      tr.swap(merged);
      if (tr.empty())
        dead[t] = 1;
      else
        heap.emplace(tr.size(), t);
    }
  }
  return rk;
}

struct HomologyReport {
  std::size_t dim_chains = 0;
  std::size_t rank_in = 0;
  std::size_t rank_out = 0;
  long betti = 0;
};

/// Homology at the middle of  C_{k+1} --d_in--> C_k --d_out--> C_{k-1}.
inline HomologyReport homology_dim(const RationalMatrix& d_out, const RationalMatrix& d_in) {
  if (d_out.cols() != d_in.rows()) throw std::invalid_argument("boundary matrices are not composable");
  if (!(d_out * d_in).is_zero()) throw ComplexIntegrityError("boundary composed with boundary is nonzero");
  HomologyReport r;
  r.dim_chains = d_out.cols();
  r.rank_out = rank(d_out);
  r.rank_in = rank(d_in);
  r.betti = static_cast<long>(r.dim_chains) - static_cast<long>(r.rank_out) - static_cast<long>(r.rank_in);
  if (r.betti < 0) throw ComplexIntegrityError("negative Betti number");
  return r;
}

/// A basis of the null space of m, one sparse vector per free column of the reduced
/// row echelon form.
inline std::vector<std::map<std::size_t, Rational>> kernel_basis(const RationalMatrix& m) {
  using Row = std::map<std::size_t, Rational>;
  std::vector<Row> pivots;  // reduced rows, pivot = first entry, leading coefficient 1
  std::map<std::size_t, std::size_t> pivot_row;  // column -> index in pivots
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Row row = m.row(r);
    for (auto it = row.begin(); it != row.end();) {
      auto p = pivot_row.find(it->first);
      if (p == pivot_row.end()) {
        ++it;
        continue;
      }
      const Rational f = it->second;
      const std::size_t c = it->first;
      add_scaled(row, pivots[p->second], -f);
      it = row.upper_bound(c);
    }
    if (row.empty()) continue;
    const Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    const std::size_t pc = row.begin()->first;
    for (auto& other : pivots) {
      auto f = other.find(pc);
      if (f != other.end()) add_scaled(other, row, -Rational(f->second));
    }
    pivot_row.emplace(pc, pivots.size());
    pivots.push_back(std::move(row));
  }
  std::vector<Row> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pivot_row.count(c)) continue;
    Row v{{c, 1}};
    for (const auto& [pc, idx] : pivot_row) {
      auto f = pivots[idx].find(c);
      if (f != pivots[idx].end()) v.emplace(pc, -f->second);
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Whether v lies in the column span of m.
inline bool in_column_span(const RationalMatrix& m, const std::map<std::size_t, Rational>& v) {
  RationalMatrix aug = m;
  aug.append_column(v);
  return rank(aug) == rank(m);
}

}  // namespace hairy
