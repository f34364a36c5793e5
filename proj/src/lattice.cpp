#include "bisetlab/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

#include "bisetlab/cache_hooks.hpp"
#include "bisetlab/morphisms.hpp"

namespace bisetlab {

namespace {

bool is_prime(unsigned n)
{
  if (n < 2)
    return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Lexicographically minimal conjugate; the returned transporter t satisfies
// conjugate(s, t) == min.
Sub min_conjugate(Group const &g, Sub const &s, Elt *transporter)
{
  Sub best = g.conjugate(s, 0);
  Elt arg = 0;
  for (Elt x = 1; x < g.size(); ++x) {
    Sub cand = g.conjugate(s, x);
    if (cand < best) {
      best = std::move(cand);
      arg = x;
    }
  }
  if (transporter)
    *transporter = arg;
  return best;
}

// Smallest k >= 1 with x^k in u, for x normalizing u.
unsigned order_mod(Group const &g, Elt x, Sub const &u)
{
  Elt p = x;
  unsigned k = 1;
  while (!u.contains(p)) {
    p = g.mult(p, x);
    ++k;
  }
  return k;
}

std::shared_ptr<LatticeData> build_lattice(Group const &g)
{
  auto data = std::make_shared<LatticeData>();
  std::vector<Sub> reps;
  std::unordered_set<Sub, SubHash> seen_raw;
  std::unordered_set<Sub, SubHash> known_class;

  auto submit = [&](Sub const &raw) {
    if (!seen_raw.insert(raw).second)
      return;
    Sub canon = min_conjugate(g, raw, nullptr);
    if (known_class.insert(canon).second)
      reps.push_back(std::move(canon));
  };

  // Seeds: the trivial subgroup, every cyclic subgroup, and (for nonsolvable
  // groups) the perfect subgroups.  Every other subgroup is reached from a
  // seed by a chain of normal extensions with cyclic quotient of prime
  // order, because the quotient by the perfect core is solvable.
  submit(g.trivial_sub());
  submit(g.full_sub());
  for (Elt x = 1; x < g.size(); ++x)
    submit(g.closure({x}));
  if (!g.is_solvable()) {
    // All perfect groups small enough to appear here are 2-generated, and a
    // generating pair can be conjugated so that one member is a class
    // representative.  A nontrivial perfect group has order at least 60 and
    // divisible by 4 (odd order or a Sylow 2-subgroup of order 2 would give
    // a proper normal complement).
    std::unordered_set<Sub, SubHash> scanned;
    for (auto const &cls : g.classes()) {
      Elt a = cls[0];
      for (Elt b = 0; b < g.size(); ++b) {
        Sub s = g.closure({a, b});
        if (s.order() == g.size() || s.order() < 60 || s.order() % 4 != 0)
          continue;
        if (scanned.insert(s).second && g.derived(s) == s)
          submit(s);
      }
    }
  }

  for (size_t i = 0; i < reps.size(); ++i) {
    Sub u = reps[i]; // copy: reps may reallocate while we extend u
    if (u.order() == g.size())
      continue;
    Sub n = g.normalizer(u);
    std::vector<Elt> ugens = g.small_gens(u);
    std::vector<bool> in_coset(g.size(), false);
    for (Elt x : u.elems)
      in_coset[x] = true;
    for (Elt x : n.elems) {
      if (in_coset[x])
        continue;
      for (Elt y : u.elems)
        in_coset[g.mult(x, y)] = true;
      if (!is_prime(order_mod(g, x, u)))
        continue;
      std::vector<Elt> seed(ugens);
      seed.push_back(x);
      submit(g.closure(seed));
    }
  }

  for (Sub &rep : reps) {
    SubClass c;
    c.normalizer = g.normalizer(rep);
    c.class_size = g.size() / c.normalizer.order();
    c.cyclic = g.is_cyclic(rep);
    c.rep = std::move(rep);
    data->classes.push_back(std::move(c));
  }
  std::sort(data->classes.begin(), data->classes.end(),
            [](SubClass const &a, SubClass const &b) { return a.rep < b.rep; });
  return data;
}

std::shared_ptr<SectionData> build_sections(Group const &g)
{
  auto data = std::make_shared<SectionData>();
  LatticeData const &lat = g.lattice();
  for (uint16_t cid = 0; cid < lat.class_count(); ++cid) {
    Sub const &s = lat.classes[cid].rep;
    Sub const &ns = lat.classes[cid].normalizer;
    std::vector<Sub> normals = normal_subgroups_in(g, s);
    std::string sname;

    std::unordered_set<Sub, SubHash> used;
    for (Sub const &t0 : normals) {
      if (used.count(t0))
        continue;
      // Orbit of t0 under conjugation by N_G(S); its minimal member is the
      // class representative of the section.
      std::vector<Sub> orbit{t0};
      used.insert(t0);
      Sub t = t0;
      for (size_t i = 0; i < orbit.size(); ++i)
        for (Elt x : ns.elems) {
          Sub c = g.conjugate(orbit[i], x);
          if (used.insert(c).second)
            orbit.push_back(std::move(c));
        }
      for (Sub const &c : orbit)
        if (c < t)
          t = c;

      Section sec;
      sec.s = s;
      sec.s_class = cid;
      std::vector<Elt> stab;
      for (Elt x : ns.elems)
        if (g.conjugate(t, x) == t)
          stab.push_back(x);
      sec.normalizer = Sub::of(std::move(stab), g.size());
      sec.quot = quotient_map(g, s, t, "");
      if (sname.empty())
        sname = (t.order() == 1) ? recognized_name(*sec.quot.group)
                                 : recognized_name(*make_sub_group(g, s));
      if (t.order() == 1)
        sec.label = sname;
      else
        sec.label = sname + "/" + recognized_name(*make_sub_group(g, t));
      sec.t = std::move(t);
      data->sections.push_back(std::move(sec));
    }
  }
  return data;
}

} // namespace

size_t LatticeData::cyclic_class_count() const
{
  size_t n = 0;
  for (auto const &c : classes)
    n += c.cyclic ? 1 : 0;
  return n;
}

std::pair<uint16_t, Elt> LatticeData::locate(Group const &g, Sub const &s) const
{
  {
    std::lock_guard<std::mutex> hold(lock_);
    auto it = lookup_.find(s);
    if (it != lookup_.end())
      return it->second;
  }
  Elt t = 0;
  Sub canon = min_conjugate(g, s, &t);
  auto it = std::lower_bound(
      classes.begin(), classes.end(), canon,
      [](SubClass const &c, Sub const &v) { return c.rep < v; });
  if (it == classes.end() || !(it->rep == canon))
    throw Error("locate: subgroup not present in lattice");
  uint16_t cid = (uint16_t)(it - classes.begin());
  std::lock_guard<std::mutex> hold(lock_);
  lookup_.emplace(s, std::make_pair(cid, t));
  return {cid, t};
}

std::pair<uint16_t, Elt> SectionData::locate(Group const &g, Sub const &s,
                                             Sub const &t) const
{
  auto key = std::make_pair(s, t);
  {
    std::lock_guard<std::mutex> hold(lock_);
    auto it = lookup_.find(key);
    if (it != lookup_.end())
      return it->second;
  }
  auto [cid, x1] = g.lattice().locate(g, s);
  Sub t1 = g.conjugate(t, x1);
  Sub const &ns = g.lattice().classes[cid].normalizer;
  for (Elt n : ns.elems) {
    Sub t2 = g.conjugate(t1, n);
    for (uint16_t i = 0; i < sections.size(); ++i)
      if (sections[i].s_class == cid && sections[i].t == t2) {
        Elt x = g.mult(n, x1); // first x1, then n
        std::lock_guard<std::mutex> hold(lock_);
        lookup_.emplace(std::move(key), std::make_pair(i, x));
        return {i, x};
      }
  }
  throw Error("locate: section not present");
}

std::vector<uint16_t> SectionData::with_quotient_iso(Group const &g,
                                                     Group const &h) const
{
  (void)g;
  std::vector<uint16_t> out;
  for (uint16_t i = 0; i < sections.size(); ++i)
    if (find_isomorphism(*sections[i].quot.group, h))
      out.push_back(i);
  return out;
}

LatticeData const &Group::lattice() const
{
  std::lock_guard<std::recursive_mutex> hold(build_lock_);
  if (!lattice_) {
    if (cache_hooks().load_lattice)
      lattice_ = cache_hooks().load_lattice(*this);
    if (!lattice_) {
      lattice_ = build_lattice(*this);
      if (cache_hooks().store_lattice)
        cache_hooks().store_lattice(*this, *lattice_);
    }
  }
  return *lattice_;
}

SectionData const &Group::sections() const
{
  std::lock_guard<std::recursive_mutex> hold(build_lock_);
  if (!sections_)
    sections_ = build_sections(*this);
  return *sections_;
}

std::vector<Sub> normal_subgroups_in(Group const &g, Sub const &s)
{
  // Conjugacy classes of s acting on itself.
  std::vector<Sub> atoms;
  {
    std::vector<bool> seen(g.size(), false);
    for (Elt x : s.elems) {
      if (seen[x])
        continue;
      std::vector<Elt> cls{x};
      seen[x] = true;
      for (size_t i = 0; i < cls.size(); ++i)
        for (Elt y : s.elems) {
          Elt z = g.conj(y, cls[i]);
          if (!seen[z]) {
            seen[z] = true;
            cls.push_back(z);
          }
        }
      Sub a = g.closure(cls);
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end())
        atoms.push_back(std::move(a));
    }
  }

  // Normal subgroups are exactly the joins of class closures.
  std::vector<Sub> all{g.trivial_sub()};
  std::unordered_set<Sub, SubHash> seen(all.begin(), all.end());
  for (size_t i = 0; i < all.size(); ++i)
    for (Sub const &a : atoms) {
      std::vector<Elt> seed = g.small_gens(all[i]);
      std::vector<Elt> agens = g.small_gens(a);
      seed.insert(seed.end(), agens.begin(), agens.end());
      Sub j = g.closure(seed);
      if (seen.insert(j).second)
        all.push_back(std::move(j));
    }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Sub> all_subgroups_brute(Group const &g, size_t max_order)
{
  if (g.size() > max_order)
    throw GuardError("all_subgroups_brute: order " + std::to_string(g.size()) +
                     " exceeds guard " + std::to_string(max_order));
  std::vector<Sub> all{g.trivial_sub()};
  std::unordered_set<Sub, SubHash> seen(all.begin(), all.end());
  for (size_t i = 0; i < all.size(); ++i)
    for (Elt x = 1; x < g.size(); ++x) {
      if (all[i].contains(x))
        continue;
      std::vector<Elt> seed(all[i].elems);
      seed.push_back(x);
      Sub j = g.closure(seed);
      if (seen.insert(j).second)
        all.push_back(std::move(j));
    }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::vector<Sub>> conjugacy_classes_of_subgroups(
    Group const &g, std::vector<Sub> const &subs)
{
  std::unordered_set<Sub, SubHash> seen;
  std::vector<std::vector<Sub>> classes;
  for (Sub const &s : subs) {
    if (seen.count(s))
      continue;
    std::vector<Sub> cls{s};
    seen.insert(s);
    for (size_t i = 0; i < cls.size(); ++i)
      for (Elt x = 1; x < g.size(); ++x) {
        Sub c = g.conjugate(cls[i], x);
        if (seen.insert(c).second)
          cls.push_back(std::move(c));
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](auto const &a, auto const &b) { return a[0] < b[0]; });
  return classes;
}

} // namespace bisetlab
