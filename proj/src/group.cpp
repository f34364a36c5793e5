#include "bisetlab/group.hpp"

#include <algorithm>
#include <cassert>

namespace bisetlab {

Config &config()
{
  static Config c;
  return c;
}

bool Sub::contains(Sub const &o) const
{
  for (size_t i = 0; i < mask.size(); ++i)
    if ((o.mask[i] & ~mask[i]) != 0)
      return false;
  return true;
}

bool Sub::operator<(Sub const &o) const
{
  if (elems.size() != o.elems.size())
    return elems.size() < o.elems.size();
  return elems < o.elems;
}

Sub Sub::of(std::vector<Elt> sorted_elems, size_t parent_order)
{
  Sub s;
  s.elems = std::move(sorted_elems);
  s.mask.assign((parent_order + 63) / 64, 0);
  for (Elt x : s.elems)
    s.mask[x >> 6] |= 1ull << (x & 63);
  return s;
}

GroupPtr Group::make(std::vector<Perm> gens, std::string name, unsigned max_order)
{
  if (max_order == 0)
    max_order = config().max_group_order;
  if (gens.empty())
    throw Error("Group: at least one generator (or an explicit identity) required");
  uint16_t degree = gens[0].degree();
  for (auto const &g : gens)
    if (g.degree() != degree)
      throw Error("Group: generator degree mismatch");

  auto grp = std::shared_ptr<Group>(new Group());
  grp->name_ = std::move(name);
  grp->degree_ = degree;

  // Drop identity and duplicate generators but keep order deterministic.
  for (auto const &g : gens)
    if (!g.is_identity() &&
        std::find(grp->gens_.begin(), grp->gens_.end(), g) == grp->gens_.end())
      grp->gens_.push_back(g);

  grp->elems_.push_back(Perm(degree));
  grp->index_.emplace(grp->elems_[0], 0);
  for (size_t i = 0; i < grp->elems_.size(); ++i)
    for (auto const &g : grp->gens_) {
      Perm p = grp->elems_[i] * g;
      if (grp->index_.emplace(p, (Elt)grp->elems_.size()).second) {
        grp->elems_.push_back(std::move(p));
        if (grp->elems_.size() > max_order)
          throw GuardError("Group '" + grp->name_ + "' exceeds order bound " +
                           std::to_string(max_order));
      }
    }
  grp->build_mult();
  grp->build_classes();
  grp->iso_fingerprint();
  return grp;
}

std::optional<Elt> Group::index_of(Perm const &p) const
{
  auto it = index_.find(p);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

void Group::build_mult() const
{
  if (!mult_.empty())
    return;
  size_t n = size();
  mult_.resize(n * n);
  inv_.resize(n);
  order_of_.assign(n, 0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      Perm p = elems_[a] * elems_[b];
      Elt idx = index_.at(p);
      mult_[a * n + b] = idx;
      if (idx == 0)
        inv_[b] = (Elt)a;
    }
  for (size_t a = 0; a < n; ++a) {
    unsigned ord = 1;
    Elt x = (Elt)a;
    while (x != 0) {
      x = mult_[x * n + a];
      ++ord;
    }
    order_of_[a] = ord;
  }
}

Elt Group::mult(Elt a, Elt b) const
{
  build_mult();
  return mult_[(size_t)a * size() + b];
}

Elt Group::inv(Elt a) const
{
  build_mult();
  return inv_[a];
}

Elt Group::power(Elt a, long k) const
{
  size_t n = order_of(a);
  long r = k % (long)n;
  if (r < 0)
    r += (long)n;
  Elt acc = 0;
  for (long i = 0; i < r; ++i)
    acc = mult(acc, a);
  return acc;
}

unsigned Group::order_of(Elt a) const
{
  build_mult();
  return order_of_[a];
}

bool Group::is_abelian() const
{
  for (auto const &a : gens_)
    for (auto const &b : gens_)
      if (!(a * b == b * a))
        return false;
  return true;
}

void Group::build_classes() const
{
  if (!classes_.empty() || size() == 0)
    return;
  build_mult();
  size_t n = size();
  class_of_.assign(n, 0xffff);
  for (Elt x = 0; x < n; ++x) {
    if (class_of_[x] != 0xffff)
      continue;
    uint16_t cid = (uint16_t)classes_.size();
    std::vector<Elt> cls{x};
    class_of_[x] = cid;
    for (size_t i = 0; i < cls.size(); ++i)
      for (Elt g = 0; g < n; ++g) {
        Elt y = conj(g, cls[i]);
        if (class_of_[y] == 0xffff) {
          class_of_[y] = cid;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

std::vector<std::vector<Elt>> const &Group::classes() const
{
  build_classes();
  return classes_;
}

uint16_t Group::class_of(Elt x) const
{
  build_classes();
  return class_of_[x];
}

Sub Group::closure(std::vector<Elt> const &seed) const
{
  build_mult();
  std::vector<Elt> elems{0};
  std::vector<uint64_t> mask((size() + 63) / 64, 0);
  mask[0] |= 1;
  auto push = [&](Elt x) {
    if (!(mask[x >> 6] >> (x & 63) & 1)) {
      mask[x >> 6] |= 1ull << (x & 63);
      elems.push_back(x);
    }
  };
  for (Elt s : seed)
    push(s);
  for (size_t i = 0; i < elems.size(); ++i)
    for (Elt s : seed)
      push(mult(elems[i], s));
  std::sort(elems.begin(), elems.end());
  Sub out;
  out.elems = std::move(elems);
  out.mask = std::move(mask);
  return out;
}

Sub Group::trivial_sub() const
{
  return Sub::of({0}, size());
}

Sub Group::full_sub() const
{
  std::vector<Elt> all(size());
  for (size_t i = 0; i < all.size(); ++i)
    all[i] = (Elt)i;
  return Sub::of(std::move(all), size());
}

Sub Group::conjugate(Sub const &s, Elt g) const
{
  std::vector<Elt> elems(s.elems.size());
  for (size_t i = 0; i < elems.size(); ++i)
    elems[i] = conj(g, s.elems[i]);
  std::sort(elems.begin(), elems.end());
  return Sub::of(std::move(elems), size());
}

Sub Group::intersection(Sub const &a, Sub const &b) const
{
  std::vector<Elt> elems;
  for (Elt x : a.elems)
    if (b.contains(x))
      elems.push_back(x);
  return Sub::of(std::move(elems), size());
}

bool Group::normalizes(Elt g, Sub const &s) const
{
  for (Elt x : s.elems)
    if (!s.contains(conj(g, x)))
      return false;
  return true;
}

Sub Group::normalizer(Sub const &s) const
{
  std::vector<Elt> elems;
  for (Elt g = 0; g < size(); ++g)
    if (normalizes(g, s))
      elems.push_back(g);
  return Sub::of(std::move(elems), size());
}

Sub Group::centralizer(Sub const &s) const
{
  std::vector<Elt> elems;
  for (Elt g = 0; g < size(); ++g) {
    bool central = true;
    for (Elt x : s.elems)
      if (mult(g, x) != mult(x, g)) {
        central = false;
        break;
      }
    if (central)
      elems.push_back(g);
  }
  return Sub::of(std::move(elems), size());
}

Sub Group::derived(Sub const &s) const
{
  std::vector<Elt> comms;
  for (Elt a : s.elems)
    for (Elt b : s.elems)
      comms.push_back(mult(mult(a, b), mult(inv(a), inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(comms);
}

bool Group::is_normal(Sub const &s, Sub const &in) const
{
  for (Elt g : in.elems)
    if (!normalizes(g, s))
      return false;
  return true;
}

bool Group::is_cyclic(Sub const &s) const
{
  for (Elt x : s.elems)
    if (order_of(x) == s.order())
      return true;
  return false;
}

bool Group::is_solvable() const
{
  Sub d = full_sub();
  while (true) {
    Sub next = derived(d);
    if (next.order() == 1)
      return true;
    if (next.order() == d.order())
      return false;
    d = next;
  }
}

std::vector<Elt> Group::small_gens(Sub const &s) const
{
  // Highest order first gives short generating sequences in practice.
  std::vector<Elt> cand(s.elems);
  std::stable_sort(cand.begin(), cand.end(), [&](Elt a, Elt b) {
    return order_of(a) > order_of(b);
  });
  std::vector<Elt> gens;
  Sub cur = trivial_sub();
  for (Elt x : cand) {
    if (cur.order() == s.order())
      break;
    if (cur.contains(x))
      continue;
    gens.push_back(x);
    cur = closure(gens);
  }
  if (gens.empty())
    gens.push_back(0);
  assert(cur.order() == s.order() || s.order() == 1);
  return gens;
}

std::vector<Elt> Group::double_cosets(Sub const &a, Sub const &b) const
{
  std::vector<bool> seen(size());
  std::vector<Elt> reps;
  for (Elt g = 0; g < size(); ++g) {
    if (seen[g])
      continue;
    reps.push_back(g);
    std::vector<Elt> orbit{g};
    seen[g] = true;
    for (size_t i = 0; i < orbit.size(); ++i) {
      for (Elt x : a.elems) {
        Elt y = mult(x, orbit[i]);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
      for (Elt x : b.elems) {
        Elt y = mult(orbit[i], x);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    }
  }
  return reps;
}

uint64_t Group::iso_fingerprint() const
{
  if (iso_fp_)
    return *iso_fp_;
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(size());
  mix(is_abelian() ? 1 : 2);
  std::vector<unsigned> hist;
  for (Elt x = 0; x < size(); ++x)
    hist.push_back(order_of(x));
  std::sort(hist.begin(), hist.end());
  for (unsigned v : hist)
    mix(v);
  std::vector<size_t> csizes;
  for (auto const &c : classes())
    csizes.push_back(c.size());
  std::sort(csizes.begin(), csizes.end());
  for (size_t v : csizes)
    mix(v);
  iso_fp_ = h;
  return h;
}

QuotientMap quotient_map(Group const &g, Sub const &num, Sub const &den,
                         std::string const &name)
{
  assert(num.contains(den));
  assert(g.is_normal(den, num));
  QuotientMap qm;
  if (den.order() == 1) {
    // The subgroup itself, re-rooted as a standalone group on the same points.
    std::vector<Perm> gens;
    for (Elt x : g.small_gens(num))
      gens.push_back(g.perm(x));
    qm.group = Group::make(std::move(gens), name, (unsigned)num.order());
    assert(qm.group->size() == num.order());
    qm.proj.assign(g.size(), 0xffff);
    for (Elt x : num.elems)
      qm.proj[x] = *qm.group->index_of(g.perm(x));
    return qm;
  }

  // Cosets of den in num, in order of their minimal member; num acts by left
  // multiplication.
  std::vector<uint16_t> coset_of(g.size(), 0xffff);
  std::vector<Elt> coset_rep;
  for (Elt x : num.elems) {
    if (coset_of[x] != 0xffff)
      continue;
    uint16_t cid = (uint16_t)coset_rep.size();
    coset_rep.push_back(x);
    for (Elt d : den.elems)
      coset_of[g.mult(x, d)] = cid;
  }
  size_t points = coset_rep.size();
  assert(points == num.order() / den.order());

  auto action = [&](Elt s) {
    std::vector<uint16_t> img(points);
    for (size_t c = 0; c < points; ++c)
      img[c] = coset_of[g.mult(s, coset_rep[c])];
    return Perm(std::move(img));
  };

  std::vector<Perm> gens;
  for (Elt x : g.small_gens(num))
    gens.push_back(action(x));
  qm.group = Group::make(std::move(gens), name, (unsigned)points);
  assert(qm.group->size() == points);
  qm.proj.assign(g.size(), 0xffff);
  for (Elt x : num.elems)
    qm.proj[x] = *qm.group->index_of(action(x));
  return qm;
}

GroupPtr make_sub_group(Group const &g, Sub const &s)
{
  std::vector<Perm> gens;
  for (Elt x : g.small_gens(s))
    gens.push_back(g.perm(x));
  auto sub = Group::make(std::move(gens), "", (unsigned)s.order());
  assert(sub->size() == s.order());
  return sub;
}

} // namespace bisetlab
