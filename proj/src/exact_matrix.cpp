#include "bisetlab/exact_matrix.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace bisetlab {

ExactMatrix ExactMatrix::identity(size_t n)
{
  ExactMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    m.at(i, i) = Cyclotomic(1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::vector<std::vector<Cyclotomic>> const &rows)
{
  size_t cols = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("from_rows: ragged rows");
    for (size_t j = 0; j < cols; ++j)
      m.at(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::transposed() const
{
  ExactMatrix m(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      m.at(j, i) = at(i, j);
  return m;
}

ExactMatrix ExactMatrix::operator*(ExactMatrix const &o) const
{
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix product shape mismatch");
  ExactMatrix m(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      Cyclotomic const &aik = at(i, k);
      if (aik.is_zero())
        continue;
      for (size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero())
          m.at(i, j) += aik * o.at(k, j);
    }
  return m;
}

ExactMatrix ExactMatrix::operator+(ExactMatrix const &o) const
{
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  ExactMatrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i)
    m.a_[i] += o.a_[i];
  return m;
}

ExactMatrix ExactMatrix::operator-(ExactMatrix const &o) const
{
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  ExactMatrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i)
    m.a_[i] -= o.a_[i];
  return m;
}

ExactMatrix ExactMatrix::scaled(Cyclotomic const &c) const
{
  ExactMatrix m = *this;
  for (auto &e : m.a_)
    e *= c;
  return m;
}

bool ExactMatrix::operator==(ExactMatrix const &o) const
{
  if (rows_ != o.rows_ || cols_ != o.cols_)
    return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i])
      return false;
  return true;
}

bool ExactMatrix::is_zero() const
{
  for (auto const &e : a_)
    if (!e.is_zero())
      return false;
  return true;
}

namespace {

// Fraction-free elimination works on denominator-cleared rows in either Z
// (conductor 1) or Z[zeta_m]; both are instances of the same routine with
// element type vector<Int> of fixed width phi(m).
struct DomainRows {
  unsigned conductor = 1;
  size_t phi = 1;
  std::vector<std::vector<std::vector<Int>>> rows; // rows x cols x phi

  Cyclotomic to_field(std::vector<Int> const &e) const
  {
    Cyclotomic v;
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0)
        v += Cyclotomic(Rat(e[k])) * Cyclotomic::zeta(conductor, k);
    return v;
  }
};

bool elem_zero(std::vector<Int> const &e)
{
  for (auto const &c : e)
    if (c != 0)
      return false;
  return true;
}

DomainRows clear_denominators(ExactMatrix const &m)
{
  DomainRows d;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      d.conductor = (unsigned)std::lcm((unsigned long)d.conductor,
                                       (unsigned long)m.at(i, j).conductor());
  d.phi = euler_phi(d.conductor);
  d.rows.assign(m.rows(), {});
  for (size_t i = 0; i < m.rows(); ++i) {
    Int den = 1;
    std::vector<Cyclotomic> row(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) {
      row[j] = m.at(i, j).promoted(d.conductor);
      for (auto const &q : row[j].coeffs())
        den = lcm(den, q.get_den());
    }
    d.rows[i].assign(m.cols(), std::vector<Int>(d.phi));
    for (size_t j = 0; j < m.cols(); ++j)
      for (size_t k = 0; k < d.phi; ++k) {
        Rat scaled = row[j].coeffs()[k] * Rat(den);
        assert(scaled.get_den() == 1);
        d.rows[i][j][k] = scaled.get_num();
      }
  }
  return d;
}

struct RingOps {
  unsigned conductor;
  size_t phi;

  std::vector<Int> mul(std::vector<Int> const &a, std::vector<Int> const &b) const
  {
    if (conductor == 1)
      return {a[0] * b[0]};
    std::vector<Int> prod(2 * phi - 1);
    for (size_t i = 0; i < phi; ++i) {
      if (a[i] == 0)
        continue;
      for (size_t j = 0; j < phi; ++j)
        if (b[j] != 0)
          prod[i + j] += a[i] * b[j];
    }
    auto const &cp = cyclotomic_polynomial(conductor);
    while (prod.size() > phi) {
      Int c = prod.back();
      prod.pop_back();
      if (c == 0)
        continue;
      size_t shift = prod.size() - phi;
      for (size_t j = 0; j < phi; ++j)
        prod[shift + j] -= c * cp[j];
    }
    prod.resize(phi);
    return prod;
  }

  std::vector<Int> submul(std::vector<Int> const &a, std::vector<Int> const &b,
                          std::vector<Int> const &c, std::vector<Int> const &d) const
  {
    // a*b - c*d
    if (conductor == 1)
      return {a[0] * b[0] - c[0] * d[0]};
    auto r = mul(a, b);
    auto s = mul(c, d);
    for (size_t k = 0; k < phi; ++k)
      r[k] -= s[k];
    return r;
  }

  // Exact division in Z or Z[zeta]; asserts exactness.
  std::vector<Int> exact_div(std::vector<Int> const &a, std::vector<Int> const &b) const
  {
    if (conductor == 1) {
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
      assert(r == 0 && "fraction-free division must be exact");
      return {q};
    }
    DomainRows helper;
    helper.conductor = conductor;
    Cyclotomic fa = helper.to_field(a), fb = helper.to_field(b);
    Cyclotomic q = fa / fb;
    std::vector<Int> out(phi);
    auto qq = q.promoted(conductor);
    for (size_t k = 0; k < phi; ++k) {
      assert(qq.coeffs()[k].get_den() == 1 &&
             "fraction-free division must be exact");
      out[k] = qq.coeffs()[k].get_num();
    }
    return out;
  }

  // Pivot preference: smaller integer magnitude keeps Bareiss growth down;
  // over Z[zeta] the first candidate wins (deterministic either way).
  bool prefer(std::vector<Int> const &cand, std::vector<Int> const &cur) const
  {
    if (conductor == 1)
      return mpz_cmpabs(cand[0].get_mpz_t(), cur[0].get_mpz_t()) < 0;
    return false;
  }
};

size_t bareiss_echelon(DomainRows &d, std::vector<size_t> *pivot_cols)
{
  RingOps ops{d.conductor, d.phi};
  size_t rows = d.rows.size();
  size_t cols = rows ? d.rows[0].size() : 0;
  std::vector<Int> prev(d.phi);
  prev[0] = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!elem_zero(d.rows[i][c]) &&
          (sel == rows || ops.prefer(d.rows[i][c], d.rows[sel][c])))
        sel = i;
    if (sel == rows)
      continue;
    std::swap(d.rows[r], d.rows[sel]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (elem_zero(d.rows[i][c])) {
        // Still rescale so every surviving entry is the right minor.
        for (size_t j = c + 1; j < cols; ++j)
          d.rows[i][j] = ops.exact_div(ops.mul(d.rows[r][c], d.rows[i][j]), prev);
      } else {
        for (size_t j = c + 1; j < cols; ++j)
          d.rows[i][j] = ops.exact_div(
              ops.submul(d.rows[r][c], d.rows[i][j], d.rows[i][c], d.rows[r][j]),
              prev);
        d.rows[i][c].assign(d.phi, Int(0));
      }
    }
    prev = d.rows[r][c];
    if (pivot_cols)
      pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

} // namespace

size_t ExactMatrix::rank() const
{
  if (rows_ == 0 || cols_ == 0)
    return 0;
  DomainRows d = clear_denominators(*this);
  return bareiss_echelon(d, nullptr);
}

void normalize_vector(std::vector<Cyclotomic> &v)
{
  Int den = 1;
  for (auto const &e : v)
    for (auto const &q : e.coeffs())
      den = lcm(den, q.get_den());
  Int content = 0;
  for (auto &e : v) {
    if (den != 1)
      e *= Cyclotomic(Rat(den));
    for (auto const &q : e.coeffs())
      content = gcd(content, q.get_num());
  }
  if (content == 0)
    return;
  int lead = 0;
  for (auto const &e : v) {
    for (auto const &q : e.coeffs())
      if (q != 0) {
        lead = sgn(q);
        break;
      }
    if (lead != 0)
      break;
  }
  if (lead < 0)
    content = -content;
  if (content != 1)
    for (auto &e : v)
      e *= Cyclotomic(make_rat(Int(1), content));
}

std::vector<std::vector<Cyclotomic>> ExactMatrix::right_kernel() const
{
  std::vector<std::vector<Cyclotomic>> out;
  if (cols_ == 0)
    return out;
  if (rows_ == 0) {
    for (size_t j = 0; j < cols_; ++j) {
      std::vector<Cyclotomic> v(cols_);
      v[j] = Cyclotomic(1);
      out.push_back(std::move(v));
    }
    return out;
  }
  DomainRows d = clear_denominators(*this);
  std::vector<size_t> pivots;
  size_t r = bareiss_echelon(d, &pivots);

  // Field copies of the echelon rows for back-substitution.
  std::vector<std::vector<Cyclotomic>> e(r, std::vector<Cyclotomic>(cols_));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < cols_; ++j)
      e[i][j] = d.to_field(d.rows[i][j]);

  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots)
    is_pivot[c] = true;

  for (size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Cyclotomic> v(cols_);
    v[f] = Cyclotomic(1);
    for (size_t i = r; i-- > 0;) {
      size_t pc = pivots[i];
      if (pc > f)
        continue;
      Cyclotomic acc;
      for (size_t j = pc + 1; j <= f; ++j)
        if (!v[j].is_zero() && !e[i][j].is_zero())
          acc += e[i][j] * v[j];
      if (!acc.is_zero())
        v[pc] = -acc / e[i][pc];
    }
    normalize_vector(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<std::string>> ExactMatrix::str_rows() const
{
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      out[i][j] = at(i, j).str();
  return out;
}

size_t rank_of_rows(std::vector<std::vector<Cyclotomic>> const &rows)
{
  if (rows.empty())
    return 0;
  return ExactMatrix::from_rows(rows).rank();
}

void RowSpan::reduce(std::vector<Cyclotomic> &v) const
{
  for (size_t i = 0; i < rows_.size(); ++i) {
    Cyclotomic const &c = v[pivots_[i]];
    if (c.is_zero())
      continue;
    Cyclotomic f = c; // pivot entries are normalized to 1
    for (size_t j = 0; j < width_; ++j)
      if (!rows_[i][j].is_zero())
        v[j] -= f * rows_[i][j];
  }
}

bool RowSpan::add(std::vector<Cyclotomic> v)
{
  if (v.size() != width_)
    throw std::invalid_argument("RowSpan: width mismatch");
  reduce(v);
  size_t p = width_;
  for (size_t j = 0; j < width_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p == width_)
    return false;
  Cyclotomic inv = v[p].inverse();
  for (auto &e : v)
    if (!e.is_zero())
      e *= inv;
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowSpan::contains(std::vector<Cyclotomic> v) const
{
  if (v.size() != width_)
    throw std::invalid_argument("RowSpan: width mismatch");
  reduce(v);
  for (auto const &e : v)
    if (!e.is_zero())
      return false;
  return true;
}

} // namespace bisetlab
