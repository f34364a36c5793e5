#include "bisetlab/morphisms.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace bisetlab {

namespace {

constexpr Elt UNDEF = 0xffff;

// Backtracking search for isomorphisms a -> b over generator images.  A
// partial map is grown by closure under multiplication with the assigned
// generators; conflicts or image collisions prune the branch.
struct IsoSearch {
  Group const &a;
  Group const &b;
  bool collect_all;
  std::vector<Elt> gens;
  std::vector<std::vector<Elt>> cands;
  std::vector<std::vector<Elt>> found;
  size_t limit = 200000;

  IsoSearch(Group const &a_, Group const &b_, bool all_)
      : a(a_), b(b_), collect_all(all_)
  {
    gens = a.small_gens(a.full_sub());
    for (Elt g : gens) {
      std::vector<Elt> c;
      for (Elt h = 0; h < b.size(); ++h)
        if (b.order_of(h) == a.order_of(g) &&
            b.classes()[b.class_of(h)].size() ==
                a.classes()[a.class_of(g)].size())
          c.push_back(h);
      cands.push_back(std::move(c));
    }
  }

  bool close(std::vector<Elt> &m, std::vector<Elt> &defined,
             std::vector<bool> &used, size_t gen_count)
  {
    for (size_t i = 0; i < defined.size(); ++i)
      for (size_t gi = 0; gi < gen_count; ++gi) {
        Elt x = defined[i];
        Elt g = gens[gi];
        Elt y = a.mult(x, g);
        Elt img = b.mult(m[x], m[g]);
        if (m[y] == UNDEF) {
          if (used[img])
            return false;
          m[y] = img;
          used[img] = true;
          defined.push_back(y);
        } else if (m[y] != img) {
          return false;
        }
      }
    return true;
  }

  // Returns true when the search should stop.
  bool step(size_t gi, std::vector<Elt> const &m, std::vector<Elt> const &defined,
            std::vector<bool> const &used)
  {
    if (gi == gens.size()) {
      assert(defined.size() == a.size());
      found.push_back(m);
      if (found.size() > limit)
        throw GuardError("isomorphism enumeration exceeds guard");
      return !collect_all;
    }
    for (Elt h : cands[gi]) {
      if (used[h])
        continue;
      auto m2 = m;
      auto d2 = defined;
      auto u2 = used;
      assert(m2[gens[gi]] == UNDEF);
      m2[gens[gi]] = h;
      u2[h] = true;
      d2.push_back(gens[gi]);
      if (close(m2, d2, u2, gi + 1) && step(gi + 1, m2, d2, u2))
        return true;
    }
    return false;
  }

  void run()
  {
    std::vector<Elt> m(a.size(), UNDEF);
    std::vector<Elt> defined{0};
    std::vector<bool> used(b.size(), false);
    m[0] = 0;
    used[0] = true;
    step(0, m, defined, used);
  }
};

std::shared_ptr<AutData> build_aut(Group const &h)
{
  if (h.size() > config().max_aut_order)
    throw GuardError("automorphism group of order-" + std::to_string(h.size()) +
                     " group exceeds guard " +
                     std::to_string(config().max_aut_order) +
                     " (raise max_aut_order to override)");
  auto data = std::make_shared<AutData>();

  std::vector<std::vector<Elt>> autos;
  if (h.size() == 1) {
    autos.push_back({0});
  } else {
    IsoSearch s(h, h, true);
    s.run();
    autos = std::move(s.found);
  }

  // Reduce the full list to a generating set, then close once.
  std::vector<Perm> gens{Perm((uint16_t)h.size())};
  GroupPtr aut = Group::make(gens, "", 1);
  for (auto const &m : autos) {
    Perm p((std::vector<uint16_t>(m.begin(), m.end())));
    if (!aut->index_of(p)) {
      gens.push_back(std::move(p));
      aut = Group::make(gens, "", (unsigned)autos.size());
    }
  }
  assert(aut->size() == autos.size());
  data->aut = aut;

  std::vector<Elt> inn_ids;
  for (Elt g = 0; g < h.size(); ++g) {
    std::vector<uint16_t> img(h.size());
    for (Elt x = 0; x < h.size(); ++x)
      img[x] = h.conj(g, x);
    auto idx = aut->index_of(Perm(std::move(img)));
    assert(idx);
    inn_ids.push_back(*idx);
  }
  std::sort(inn_ids.begin(), inn_ids.end());
  inn_ids.erase(std::unique(inn_ids.begin(), inn_ids.end()), inn_ids.end());
  data->inn = Sub::of(std::move(inn_ids), aut->size());

  QuotientMap qm = quotient_map(*aut, aut->full_sub(), data->inn, "");
  data->out = qm.group;
  data->out_proj = std::move(qm.proj);
  data->out_rep.assign(data->out->size(), UNDEF);
  for (Elt x = 0; x < aut->size(); ++x)
    if (data->out_rep[data->out_proj[x]] == UNDEF)
      data->out_rep[data->out_proj[x]] = x;
  return data;
}

} // namespace

std::optional<std::vector<Elt>> find_isomorphism(Group const &a, Group const &b)
{
  if (a.size() != b.size())
    return std::nullopt;
  if (a.size() == 1)
    return std::vector<Elt>{0};
  if (a.iso_fingerprint() != b.iso_fingerprint())
    return std::nullopt;

  // Keys hold the instances alive so a recycled address can never alias a
  // stale entry.
  static std::mutex mx;
  static std::map<std::pair<GroupPtr, GroupPtr>,
                  std::optional<std::vector<Elt>>>
      memo;
  auto key = std::make_pair(a.shared_from_this(), b.shared_from_this());
  {
    std::lock_guard<std::mutex> hold(mx);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
  }
  IsoSearch s(a, b, false);
  s.run();
  std::optional<std::vector<Elt>> res;
  if (!s.found.empty())
    res = std::move(s.found[0]);
  std::lock_guard<std::mutex> hold(mx);
  memo[key] = res;
  return res;
}

std::vector<Elt> compose_maps(std::vector<Elt> const &first,
                              std::vector<Elt> const &then)
{
  std::vector<Elt> out(first.size());
  for (size_t i = 0; i < first.size(); ++i) {
    assert(first[i] < then.size());
    out[i] = then[first[i]];
  }
  return out;
}

std::vector<Elt> invert_map(std::vector<Elt> const &m)
{
  std::vector<Elt> out(m.size(), UNDEF);
  for (size_t i = 0; i < m.size(); ++i) {
    assert(out[m[i]] == UNDEF);
    out[m[i]] = (Elt)i;
  }
  return out;
}

Elt AutData::out_of_map(Group const &h, std::vector<Elt> const &m) const
{
  assert(m.size() == h.size());
  (void)h;
  auto idx = aut->index_of(Perm(std::vector<uint16_t>(m.begin(), m.end())));
  if (!idx)
    throw Error("out_of_map: not an automorphism of this group");
  return out_proj[*idx];
}

AutData const &Group::aut() const
{
  std::lock_guard<std::recursive_mutex> hold(build_lock_);
  if (!aut_)
    aut_ = build_aut(*this);
  return *aut_;
}

Perm induced_quotient_aut(Group const &parent, QuotientMap const &q, Elt n)
{
  size_t points = q.group->size();
  std::vector<Elt> pre(points, UNDEF);
  for (Elt x = 0; x < parent.size(); ++x)
    if (q.proj[x] != UNDEF && pre[q.proj[x]] == UNDEF)
      pre[q.proj[x]] = x;
  std::vector<uint16_t> img(points);
  for (size_t e = 0; e < points; ++e) {
    assert(pre[e] != UNDEF);
    Elt y = q.proj[parent.conj(n, pre[e])];
    assert(y != UNDEF);
    img[e] = y;
  }
  return Perm(std::move(img));
}

Sub normalizer_image_in_aut(Group const &parent, QuotientMap const &q,
                            std::vector<Elt> const &ns)
{
  AutData const &ad = q.group->aut();
  std::vector<Elt> ids;
  for (Elt n : ns) {
    auto idx = ad.aut->index_of(induced_quotient_aut(parent, q, n));
    assert(idx);
    ids.push_back(*idx);
  }
  return ad.aut->closure(ids);
}

namespace {

size_t count_involutions(Group const &g)
{
  size_t n = 0;
  for (Elt x = 0; x < g.size(); ++x)
    if (g.order_of(x) == 2)
      ++n;
  return n;
}

size_t center_order(Group const &g)
{
  return g.centralizer(g.full_sub()).order();
}

std::string abelian_name(Group const &g)
{
  size_t n = g.size();
  // Invariant factors from the element-order census, one prime at a time.
  std::vector<std::vector<unsigned>> primary; // per prime, powers descending
  size_t rest = n;
  for (unsigned p = 2; rest > 1; ++p) {
    if (rest % p != 0)
      continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // a[i] = p-adic valuation of #{x : order(x) divides p^i}.
    std::vector<unsigned> a{0};
    for (unsigned i = 1; a.back() < e; ++i) {
      size_t cnt = 0;
      for (Elt x = 0; x < g.size(); ++x) {
        unsigned o = g.order_of(x);
        size_t pi = 1;
        for (unsigned j = 0; j < i; ++j)
          pi *= p;
        if (pi % o == 0)
          ++cnt;
      }
      unsigned v = 0;
      while (cnt % p == 0) {
        cnt /= p;
        ++v;
      }
      a.push_back(v);
    }
    // d[i] = a[i] - a[i-1] counts cyclic factors of order >= p^i; transpose
    // to the list of factor exponents.
    std::vector<unsigned> d;
    for (size_t i = 1; i < a.size(); ++i)
      d.push_back(a[i] - a[i - 1]);
    std::vector<unsigned> powers;
    for (unsigned j = 1; j <= (d.empty() ? 0 : d[0]); ++j) {
      unsigned lam = 0;
      for (unsigned v : d)
        if (v >= j)
          ++lam;
      unsigned q = 1;
      for (unsigned t = 0; t < lam; ++t)
        q *= p;
      powers.push_back(q);
    }
    primary.push_back(std::move(powers));
  }

  size_t k = 0;
  for (auto const &pow : primary)
    k = std::max(k, pow.size());
  std::vector<size_t> inv(k, 1);
  for (auto const &pow : primary)
    for (size_t i = 0; i < pow.size(); ++i)
      inv[i] *= pow[i];

  if (n == 4 && k == 2)
    return "V4";
  bool uniform = true;
  for (size_t i = 1; i < k; ++i)
    if (inv[i] != inv[0])
      uniform = false;
  if (uniform && k >= 2)
    return "C" + std::to_string(inv[0]) + "^" + std::to_string(k);
  std::string out;
  for (size_t i = 0; i < k; ++i) {
    if (i)
      out += "x";
    out += "C" + std::to_string(inv[i]);
  }
  return out;
}

bool is_dihedral(Group const &g)
{
  size_t n = g.size();
  if (n < 8 || n % 2 != 0)
    return false;
  for (Elt r = 0; r < g.size(); ++r) {
    if (g.order_of(r) != n / 2)
      continue;
    Sub c = g.closure({r});
    for (Elt t = 0; t < g.size(); ++t)
      if (g.order_of(t) == 2 && !c.contains(t) && g.conj(t, r) == g.inv(r))
        return true;
  }
  return false;
}

} // namespace

std::string recognized_name(Group const &g)
{
  size_t n = g.size();
  if (n == 1)
    return "1";
  if (g.is_cyclic(g.full_sub()))
    return "C" + std::to_string(n);
  if (g.is_abelian())
    return abelian_name(g);
  if (n == 6)
    return "S3";
  if (n == 8)
    return count_involutions(g) == 1 ? "Q8" : "D8";
  if (n == 12 && count_involutions(g) == 3 && center_order(g) == 1)
    return "A4";
  if (n == 12 && count_involutions(g) == 1)
    return "Dic3";
  if (is_dihedral(g))
    return "D" + std::to_string(n);
  if ((n & (n - 1)) == 0 && count_involutions(g) == 1)
    return "Q" + std::to_string(n);
  if (n == 24 && center_order(g) == 1)
    return "S4";
  if (!g.is_solvable()) {
    if (n == 60)
      return "A5";
    if (n == 120) {
      if (count_involutions(g) == 1)
        return "SL(2,5)";
      if (center_order(g) == 1)
        return "S5";
      return "C2xA5";
    }
    if (n == 168)
      return "GL(3,2)";
    if (n == 336)
      return count_involutions(g) == 1 ? "SL(2,7)" : "PGL(2,7)";
    if (n == 360)
      return "A6";
    if (n == 504)
      return "PSL(2,8)";
    if (n == 660)
      return "PSL(2,11)";
    if (n == 720) {
      if (count_involutions(g) == 1)
        return "SL(2,9)";
      if (center_order(g) == 1)
        return "S6";
    }
  }
  return "G" + std::to_string(n);
}

} // namespace bisetlab
