#include "bisetlab/chartab.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>

#include "bisetlab/cache_hooks.hpp"

namespace bisetlab {

namespace {

struct Fp {
  uint64_t p;

  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
  uint64_t mul(uint64_t a, uint64_t b) const { return a * b % p; }
  uint64_t pow(uint64_t a, uint64_t e) const
  {
    uint64_t r = 1;
    a %= p;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1)
        r = mul(r, a);
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

bool is_prime(uint64_t n)
{
  if (n < 2)
    return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

using Vec = std::vector<uint64_t>;
using Mat = std::vector<Vec>;

// Reduced row echelon basis of the span of the given rows.
Mat echelon(Fp const &F, Mat rows)
{
  size_t cols = rows.empty() ? 0 : rows[0].size();
  Mat out;
  size_t lead = 0;
  for (size_t c = 0; c < cols && !rows.empty(); ++c) {
    size_t pr = SIZE_MAX;
    for (size_t r = lead; r < rows.size(); ++r)
      if (rows[r][c] % F.p != 0) {
        pr = r;
        break;
      }
    if (pr == SIZE_MAX)
      continue;
    std::swap(rows[lead], rows[pr]);
    uint64_t s = F.inv(rows[lead][c]);
    for (auto &v : rows[lead])
      v = F.mul(v, s);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != lead && rows[r][c] % F.p != 0) {
        uint64_t f = rows[r][c];
        for (size_t k = 0; k < cols; ++k)
          rows[r][k] = F.sub(rows[r][k], F.mul(f, rows[lead][k]));
      }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

// Characteristic polynomial coefficients (monic, low to high) by the
// Faddeev-LeVerrier recurrence.
Vec char_poly(Fp const &F, Mat const &a)
{
  size_t m = a.size();
  Vec c(m + 1, 0);
  c[m] = 1;
  Mat mk(m, Vec(m, 0)); // starts as the zero matrix
  for (size_t k = 1; k <= m; ++k) {
    // mk <- a * mk + c_{m-k+1} * I
    Mat next(m, Vec(m, 0));
    for (size_t i = 0; i < m; ++i)
      for (size_t l = 0; l < m; ++l) {
        if (a[i][l] == 0)
          continue;
        for (size_t j = 0; j < m; ++j)
          next[i][j] = F.add(next[i][j], F.mul(a[i][l], mk[l][j]));
      }
    for (size_t i = 0; i < m; ++i)
      next[i][i] = F.add(next[i][i], c[m - k + 1]);
    mk = std::move(next);
    uint64_t tr = 0;
    Mat am(m, Vec(m, 0));
    for (size_t i = 0; i < m; ++i)
      for (size_t l = 0; l < m; ++l) {
        if (a[i][l] == 0)
          continue;
        for (size_t j = 0; j < m; ++j)
          am[i][j] = F.add(am[i][j], F.mul(a[i][l], mk[l][j]));
      }
    for (size_t i = 0; i < m; ++i)
      tr = F.add(tr, am[i][i]);
    // c_{m-k} = -tr(a*mk)/k
    c[m - k] = F.sub(0, F.mul(tr, F.inv(k % F.p)));
  }
  return c;
}

std::shared_ptr<CharTable> build_table(Group const &g)
{
  if (g.size() > 200)
    throw GuardError("character table of order-" + std::to_string(g.size()) +
                     " group exceeds guard 200");
  auto table = std::make_shared<CharTable>();
  table->group = g.shared_from_this();

  auto const &classes = g.classes();
  size_t r = classes.size();
  size_t n = g.size();
  std::vector<Elt> rep(r);
  for (size_t i = 0; i < r; ++i)
    rep[i] = classes[i][0];

  unsigned e = 1;
  for (Elt x = 0; x < n; ++x)
    e = std::lcm(e, g.order_of(x));
  table->exponent = e;

  uint64_t p = 0;
  for (uint64_t cand = ((2 * n) / e + 1) * e + 1;; cand += e)
    if (cand % e == 1 % e && is_prime(cand) && cand > 2 * n) {
      p = cand;
      break;
    }
  Fp F{p};

  // Generator of the multiplicative group, then a fixed e-th root of unity.
  uint64_t gen = 0;
  {
    std::vector<uint64_t> qs;
    uint64_t m = p - 1;
    for (uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        qs.push_back(d);
        while (m % d == 0)
          m /= d;
      }
    if (m > 1)
      qs.push_back(m);
    for (uint64_t cand = 2;; ++cand) {
      bool ok = true;
      for (uint64_t q : qs)
        if (F.pow(cand, (p - 1) / q) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = cand;
        break;
      }
    }
  }
  uint64_t theta = F.pow(gen, (p - 1) / e);

  // Class multiplication constants via tallies over products.
  std::vector<Mat> cmat(r, Mat(r, Vec(r, 0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      Vec tally(r, 0);
      for (Elt x : classes[i])
        for (Elt y : classes[j])
          ++tally[g.class_of(g.mult(x, y))];
      for (size_t k = 0; k < r; ++k) {
        assert(tally[k] % classes[k].size() == 0);
        cmat[i][j][k] = tally[k] / classes[k].size() % p;
      }
    }

  // Split the class space into common eigenspaces of all class matrices.
  std::vector<Mat> spaces;
  {
    Mat full(r, Vec(r, 0));
    for (size_t i = 0; i < r; ++i)
      full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (size_t i = 1; i < r; ++i) {
    std::vector<Mat> next;
    for (Mat &sp : spaces) {
      size_t m = sp.size();
      if (m == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // Restriction R of the i-th class matrix: row t of sp maps to
      // sum_s R[s][t] * row s.  Solve through the echelon form.
      Mat img(m, Vec(r, 0));
      for (size_t t = 0; t < m; ++t)
        for (size_t k = 0; k < r; ++k) {
          if (sp[t][k] == 0)
            continue;
          // (row * M_i)_j = sum_k row_k (M_i)_{kj}; class algebra row-vector
          // convention: u M_i with (M_i)_{jk} = a_{ijk} acting by
          // (u M_i)_k = sum_j u_j a_{ijk}.
          for (size_t l = 0; l < r; ++l)
            img[t][l] = F.add(img[t][l], F.mul(sp[t][k], cmat[i][k][l]));
        }
      // Express img rows in the sp basis (sp rows are in echelon form).
      Mat basis = echelon(F, sp);
      assert(basis.size() == m);
      std::vector<size_t> lead(m);
      for (size_t s = 0; s < m; ++s)
        lead[s] = (size_t)(std::find_if(basis[s].begin(), basis[s].end(),
                                        [&](uint64_t v) { return v % p != 0; }) -
                           basis[s].begin());
      Mat R(m, Vec(m, 0));
      for (size_t t = 0; t < m; ++t) {
        Vec row = img[t];
        for (size_t s = 0; s < m; ++s) {
          uint64_t f = row[lead[s]] % p;
          R[s][t] = f;
          if (f)
            for (size_t k = 0; k < r; ++k)
              row[k] = F.sub(row[k], F.mul(f, basis[s][k]));
        }
        for (uint64_t v : row)
          assert(v % p == 0);
      }
      sp = basis;

      Vec cp = char_poly(F, R);
      std::vector<uint64_t> roots;
      for (uint64_t lam = 0; lam < p; ++lam) {
        uint64_t v = 0;
        for (size_t k = cp.size(); k-- > 0;)
          v = F.add(F.mul(v, lam), cp[k]);
        if (v == 0)
          roots.push_back(lam);
      }
      for (uint64_t lam : roots) {
        // Kernel of (R - lam I): eigenvectors in sp coordinates.
        Mat sys(m, Vec(m, 0));
        for (size_t a1 = 0; a1 < m; ++a1)
          for (size_t b1 = 0; b1 < m; ++b1)
            sys[a1][b1] = a1 == b1 ? F.sub(R[a1][b1], lam) : R[a1][b1];
        // Null space by echelon of the transpose trick: solve sys * x = 0.
        Mat ech = echelon(F, sys);
        std::vector<bool> pivot(m, false);
        for (auto const &row : ech)
          for (size_t c = 0; c < m; ++c)
            if (row[c] % p != 0) {
              pivot[c] = true;
              break;
            }
        Mat sub;
        for (size_t fc = 0; fc < m; ++fc) {
          if (pivot[fc])
            continue;
          Vec x(m, 0);
          x[fc] = 1;
          for (auto const &row : ech) {
            size_t lc = 0;
            while (lc < m && row[lc] % p == 0)
              ++lc;
            if (lc < m)
              x[lc] = F.sub(0, F.mul(row[fc], 1));
          }
          // Back into class coordinates.
          Vec full(r, 0);
          for (size_t s = 0; s < m; ++s)
            if (x[s])
              for (size_t k = 0; k < r; ++k)
                full[k] = F.add(full[k], F.mul(x[s], sp[s][k]));
          sub.push_back(std::move(full));
        }
        if (!sub.empty())
          next.push_back(echelon(F, sub));
      }
    }
    spaces = std::move(next);
    bool done = true;
    for (auto const &sp : spaces)
      if (sp.size() > 1)
        done = false;
    if (done)
      break;
  }
  if (spaces.size() != r)
    throw Error("character table: eigenspace splitting failed");

  // Each one-dimensional space is spanned by the coordinate row of a central
  // idempotent, proportional to k -> chi(rep_k^{-1}).
  std::vector<uint16_t> icls(r);
  for (size_t k = 0; k < r; ++k)
    icls[k] = g.class_of(g.inv(rep[k]));
  std::vector<std::vector<uint16_t>> pmap(r, std::vector<uint16_t>(e));
  for (size_t k = 0; k < r; ++k)
    for (unsigned t = 0; t < e; ++t)
      pmap[k][t] = g.class_of(g.power(rep[k], t));

  struct Row {
    unsigned degree;
    std::vector<Cyclotomic> vals;
  };
  std::vector<Row> rows;
  for (auto const &sp : spaces) {
    Vec u = sp[0];
    assert(u[0] % p != 0); // the identity coordinate of an eigenvector
    uint64_t s0 = F.inv(u[0]);
    for (auto &v : u)
      v = F.mul(v, s0);
    // With u normalized to u_0 = 1 we have u_k = chi(rep_k^{-1}) / chi(1), so
    // the second orthogonality relation pins the degree:
    //   sum_k |C_k| chi(rep_k) chi(rep_k^{-1}) = |G|  =>  d^2 = n / s.
    uint64_t s = 0;
    for (size_t k = 0; k < r; ++k)
      s = F.add(s, F.mul(F.mul(u[k], u[icls[k]]), classes[k].size() % p));
    uint64_t d2 = F.mul(n % p, F.inv(s));
    unsigned d = 0;
    for (unsigned cand = 1; cand * cand <= n; ++cand)
      if (cand * cand % p == d2) {
        d = cand;
        break;
      }
    if (d == 0)
      throw Error("character table: degree recovery failed");

    Vec chi(r);
    for (size_t k = 0; k < r; ++k)
      chi[k] = F.mul(d % p, u[icls[k]]);

    Row row;
    row.degree = d;
    row.vals.resize(r);
    uint64_t einv = F.inv(e % p);
    for (size_t k = 0; k < r; ++k) {
      Cyclotomic val;
      for (unsigned j = 0; j < e; ++j) {
        uint64_t m = 0;
        for (unsigned t = 0; t < e; ++t)
          m = F.add(m, F.mul(chi[pmap[k][t]], F.pow(F.inv(theta), (uint64_t)j * t)));
        m = F.mul(m, einv);
        assert(m <= d); // multiplicities are small nonnegative integers
        if (m)
          val += Cyclotomic::zeta(e, j) * Cyclotomic((long)m);
      }
      // Keep rational entries at conductor 1 so they print as plain numbers.
      if (val.is_rational())
        val = Cyclotomic(val.to_rational());
      row.vals[k] = std::move(val);
    }
    assert(row.vals[0].is_rational());
    assert(row.vals[0].to_rational() == Rat((long)d));
    rows.push_back(std::move(row));
  }

  // Canonical order: trivial first, then by (degree, value vector).
  auto is_trivial = [&](Row const &row) {
    for (auto const &v : row.vals)
      if (!(v.is_rational() && v.to_rational() == 1))
        return false;
    return true;
  };
  std::stable_sort(rows.begin(), rows.end(), [&](Row const &a, Row const &b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb)
      return ta;
    if (a.degree != b.degree)
      return a.degree < b.degree;
    for (size_t k = 0; k < a.vals.size(); ++k) {
      int c = Cyclotomic::cmp(a.vals[k], b.vals[k]);
      if (c)
        return c < 0;
    }
    return false;
  });

  // Verify row orthogonality exactly.
  size_t dsum = 0;
  for (auto const &row : rows)
    dsum += (size_t)row.degree * row.degree;
  if (dsum != n)
    throw Error("character table: degree sum check failed");
  for (size_t a1 = 0; a1 < rows.size(); ++a1)
    for (size_t b1 = a1; b1 < rows.size(); ++b1) {
      Cyclotomic acc;
      for (size_t k = 0; k < r; ++k)
        acc += rows[a1].vals[k] * rows[b1].vals[icls[k]] *
               Cyclotomic(Rat((long)classes[k].size()));
      Cyclotomic want = Cyclotomic(Rat(a1 == b1 ? (long)n : 0));
      if (!(acc == want))
        throw Error("character table: orthogonality check failed");
    }
  for (auto const &row : rows)
    for (size_t k = 0; k < r; ++k)
      if (!(row.vals[k].conj() == row.vals[icls[k]]))
        throw Error("character table: inverse-class conjugation failed");

  // Labels.
  std::vector<std::string> labels(rows.size());
  std::vector<size_t> linear, nonlinear;
  for (size_t i = 1; i < rows.size(); ++i)
    (rows[i].degree == 1 ? linear : nonlinear).push_back(i);
  labels[0] = "k";
  std::vector<size_t> real_linear;
  for (size_t i : linear) {
    bool real = true;
    for (auto const &v : rows[i].vals)
      if (!(v.conj() == v))
        real = false;
    if (real)
      real_linear.push_back(i);
  }
  size_t next_l = 1;
  for (size_t i : linear) {
    if (real_linear.size() == 1 && i == real_linear[0])
      labels[i] = "eps";
    else
      labels[i] = "l" + std::to_string(next_l++);
  }
  for (size_t idx = 0; idx < nonlinear.size();) {
    size_t run = idx;
    while (run < nonlinear.size() &&
           rows[nonlinear[run]].degree == rows[nonlinear[idx]].degree)
      ++run;
    for (size_t j = idx; j < run; ++j) {
      std::string lab = std::to_string(rows[nonlinear[idx]].degree);
      if (run - idx > 1)
        lab += (char)('a' + (j - idx));
      labels[nonlinear[j]] = lab;
    }
    idx = run;
  }

  for (auto &row : rows) {
    table->degrees.push_back(row.degree);
    table->chars.push_back(std::move(row.vals));
  }
  table->labels = std::move(labels);
  return table;
}

} // namespace

size_t CharTable::index_of_label(std::string const &name) const
{
  std::string want = name;
  if (want == "k+")
    want = "k";
  else if (want == "k-")
    want = "eps";
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == want)
      return i;
  throw Error("no irreducible labeled '" + name + "'; available: " + [&] {
    std::string all;
    for (auto const &l : labels)
      all += (all.empty() ? "" : ", ") + l;
    return all;
  }());
}

CharTable const &char_table(Group const &g)
{
  static std::mutex mx;
  static std::map<Group const *, std::shared_ptr<CharTable>> cache;
  std::lock_guard<std::mutex> hold(mx);
  auto &slot = cache[&g];
  if (!slot) {
    if (cache_hooks().load_chartab)
      slot = cache_hooks().load_chartab(g);
    if (!slot) {
      slot = build_table(g);
      if (cache_hooks().store_chartab)
        cache_hooks().store_chartab(g, *slot);
    }
  }
  return *slot;
}

} // namespace bisetlab
