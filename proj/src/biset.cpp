#include "bisetlab/biset.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>

#include "bisetlab/cache_hooks.hpp"

namespace bisetlab {

namespace {

constexpr Elt kNone = 0xffff;

std::vector<uint64_t> empty_mask(size_t n) { return std::vector<uint64_t>((n + 63) / 64, 0); }

void mask_set(std::vector<uint64_t> &m, Elt x) { m[x >> 6] |= 1ull << (x & 63); }

bool mask_get(std::vector<uint64_t> const &m, Elt x)
{
  return m[x >> 6] >> (x & 63) & 1;
}

Sub mask_to_sub(std::vector<uint64_t> const &m, size_t parent_order)
{
  std::vector<Elt> elems;
  for (size_t x = 0; x < parent_order; ++x)
    if (mask_get(m, (Elt)x))
      elems.push_back((Elt)x);
  return Sub::of(std::move(elems), parent_order);
}

// The composite of L and M over the identity double coset: both must share
// the middle group instance, and M is expected already conjugated to the
// coset representative.
RawTriple compose_at(RawTriple const &L, RawTriple const &M)
{
  Group const &x = *L.left;
  Group const &y = *L.right;
  Group const &z = *M.right;

  Sub u = y.intersection(L.s, M.j);
  Sub w = y.intersection(L.s, M.k);
  Sub tj = y.intersection(L.t, M.j);

  auto uk = empty_mask(y.size());
  std::vector<Elt> first_u(y.size(), kNone);
  for (Elt a : u.elems)
    for (Elt kk : M.k.elems) {
      Elt e = y.mult(a, kk);
      mask_set(uk, e);
      if (first_u[e] == kNone)
        first_u[e] = a;
    }
  auto tk = empty_mask(y.size());
  for (Elt a : tj.elems)
    for (Elt kk : M.k.elems)
      mask_set(tk, y.mult(a, kk));

  auto j1m = empty_mask(x.size());
  for (Elt a : u.elems)
    for (Elt kk : L.k.elems)
      mask_set(j1m, x.mult(L.sig[a], kk));
  auto k1m = empty_mask(x.size());
  for (Elt a : w.elems)
    for (Elt kk : L.k.elems)
      mask_set(k1m, x.mult(L.sig[a], kk));

  RawTriple out;
  out.left = L.left;
  out.right = M.right;
  out.j = mask_to_sub(j1m, x.size());
  out.k = mask_to_sub(k1m, x.size());
  std::vector<Elt> s1, t1;
  out.sig.assign(z.size(), kNone);
  for (Elt e : M.s.elems) {
    if (!mask_get(uk, M.sig[e]))
      continue;
    s1.push_back(e);
    if (mask_get(tk, M.sig[e]))
      t1.push_back(e);
    out.sig[e] = L.sig[first_u[M.sig[e]]];
  }
  out.s = Sub::of(std::move(s1), z.size());
  out.t = Sub::of(std::move(t1), z.size());

  assert(out.j.contains(out.k));
  assert(out.s.contains(out.t));
  assert(out.j.order() % out.k.order() == 0);
  assert(out.j.order() / out.k.order() == out.s.order() / out.t.order());
  return out;
}

} // namespace

RawTriple conjugate_raw(RawTriple const &raw, Elt u, Elt v)
{
  Group const &x = *raw.left;
  Group const &y = *raw.right;
  RawTriple out;
  out.left = raw.left;
  out.right = raw.right;
  out.j = x.conjugate(raw.j, u);
  out.k = x.conjugate(raw.k, u);
  out.s = y.conjugate(raw.s, v);
  out.t = y.conjugate(raw.t, v);
  out.sig.assign(y.size(), kNone);
  for (Elt e : out.s.elems)
    out.sig[e] = x.conj(u, raw.sig[y.conj(y.inv(v), e)]);
  return out;
}

RawTriple opposite_raw(RawTriple const &raw)
{
  Group const &x = *raw.left;
  RawTriple out;
  out.left = raw.right;
  out.right = raw.left;
  out.j = raw.s;
  out.k = raw.t;
  out.s = raw.j;
  out.t = raw.k;
  out.sig.assign(x.size(), kNone);
  for (Elt u : raw.s.elems)
    for (Elt kk : raw.k.elems) {
      Elt e = x.mult(raw.sig[u], kk);
      if (out.sig[e] == kNone)
        out.sig[e] = u;
    }
  for (Elt e : out.s.elems)
    assert(out.sig[e] != kNone);
  return out;
}

void Biset::add(Triple const &t, Rat const &c)
{
  if (c == 0)
    return;
  auto it = coeff_.find(t);
  if (it == coeff_.end()) {
    coeff_.emplace(t, c);
    return;
  }
  it->second += c;
  if (it->second == 0)
    coeff_.erase(it);
}

Rat Biset::coeff_of(Triple const &t) const
{
  auto it = coeff_.find(t);
  return it == coeff_.end() ? Rat(0) : it->second;
}

Biset &Biset::operator+=(Biset const &o)
{
  if (!space_)
    space_ = o.space_;
  for (auto const &[t, c] : o.coeff_)
    add(t, c);
  return *this;
}

Biset &Biset::operator-=(Biset const &o)
{
  if (!space_)
    space_ = o.space_;
  for (auto const &[t, c] : o.coeff_)
    add(t, -c);
  return *this;
}

Biset &Biset::operator*=(Rat const &c)
{
  if (c == 0) {
    coeff_.clear();
    return *this;
  }
  for (auto &[t, v] : coeff_)
    v *= c;
  return *this;
}

bool Biset::operator==(Biset const &o) const { return coeff_ == o.coeff_; }

std::string Biset::str() const
{
  if (coeff_.empty())
    return "0";
  std::string out;
  for (auto const &[t, c] : coeff_) {
    if (!out.empty())
      out += " + ";
    if (!(c == 1))
      out += rat_str(c) + "*";
    out += space_ ? space_->label(t) : "?";
  }
  return out;
}

struct BisetSpaceBuilder {
  static std::shared_ptr<BisetSpace> build(GroupPtr left, GroupPtr right)
  {
    std::shared_ptr<BisetSpace> sp(new BisetSpace());
    sp->left_ = left;
    sp->right_ = right;
    auto const &lsecs = left->sections().sections;
    auto const &rsecs = right->sections().sections;

    auto lift_table = [](Group const &, Section const &sec) {
      std::vector<Elt> lift(sec.quot.group->size(), kNone);
      for (Elt e : sec.s.elems) {
        Elt q = sec.quot.proj[e];
        if (lift[q] == kNone)
          lift[q] = e;
      }
      return lift;
    };
    for (auto const &sec : lsecs)
      sp->lift_l_.push_back(lift_table(*left, sec));
    for (auto const &sec : rsecs)
      sp->lift_r_.push_back(lift_table(*right, sec));

    // A cached snapshot replaces the per-pair isomorphism searches and
    // double-coset sweeps; anything inconsistent falls back to a fresh
    // build.  Automorphism group handles are reattached either way.
    auto restore = [&](SpaceSnapshot const &snap) -> bool {
      size_t want = lsecs.size() * rsecs.size();
      if (snap.slices.size() != want)
        return false;
      std::vector<BisetSpace::Slice> slices(want);
      for (uint16_t l = 0; l < lsecs.size(); ++l)
        for (uint16_t r = 0; r < rsecs.size(); ++r) {
          auto const &ss = snap.slices[(size_t)l * rsecs.size() + r];
          auto &sl = slices[(size_t)l * rsecs.size() + r];
          if (!ss.usable)
            continue;
          GroupPtr ql = lsecs[l].quot.group;
          if (ss.sigma0.size() != rsecs[r].quot.group->size())
            return false;
          sl.usable = true;
          sl.sigma0 = ss.sigma0;
          sl.autl = ql->aut().aut;
          if (ss.rep_of.size() != sl.autl->size())
            return false;
          sl.rep_of = ss.rep_of;
          sl.reps = ss.reps;
          for (Elt rep : sl.reps)
            if (rep >= sl.rep_of.size() || sl.rep_of[rep] != rep)
              return false;
        }
      std::vector<Triple> basis;
      for (auto const &row : snap.basis) {
        Triple t{row[0], row[1], (Elt)row[2]};
        if (t.lsec >= lsecs.size() || t.rsec >= rsecs.size())
          return false;
        auto const &sl = slices[(size_t)t.lsec * rsecs.size() + t.rsec];
        if (!sl.usable || t.rep >= sl.rep_of.size() || sl.rep_of[t.rep] != t.rep)
          return false;
        basis.push_back(t);
      }
      sp->slices_ = std::move(slices);
      sp->basis_ = std::move(basis);
      return true;
    };
    if (cache_hooks().load_space) {
      auto snap = cache_hooks().load_space(*left, *right);
      if (snap && restore(*snap)) {
        for (size_t i = 0; i < sp->basis_.size(); ++i)
          sp->index_[sp->basis_[i]] = i;
        return sp;
      }
      sp->slices_.clear();
      sp->basis_.clear();
    }

    // Normalizer images in the quotient automorphism groups, one per section.
    std::vector<std::optional<Sub>> limg(lsecs.size()), rimg(rsecs.size());
    auto norm_image = [](Group const &g, Section const &sec) {
      return normalizer_image_in_aut(g, sec.quot, sec.normalizer.elems);
    };

    sp->slices_.resize(lsecs.size() * rsecs.size());
    for (uint16_t l = 0; l < lsecs.size(); ++l)
      for (uint16_t r = 0; r < rsecs.size(); ++r) {
        GroupPtr ql = lsecs[l].quot.group;
        GroupPtr qr = rsecs[r].quot.group;
        if (ql->size() != qr->size())
          continue;
        auto iso = find_isomorphism(*qr, *ql);
        if (!iso)
          continue;
        auto &sl = sp->slices_[l * rsecs.size() + r];
        sl.usable = true;
        sl.sigma0 = *iso;
        sl.autl = ql->aut().aut;
        if (!limg[l])
          limg[l] = norm_image(*left, lsecs[l]);
        if (!rimg[r])
          rimg[r] = norm_image(*right, rsecs[r]);

        // Move the right normalizer image through the reference isomorphism.
        GroupPtr autr = qr->aut().aut;
        auto inv0 = invert_map(sl.sigma0);
        std::vector<Elt> conj_ids;
        for (Elt f : rimg[r]->elems) {
          Perm const &fp = autr->perm(f);
          std::vector<uint16_t> cp(ql->size());
          for (Elt e = 0; e < (Elt)ql->size(); ++e)
            cp[e] = sl.sigma0[fp[inv0[e]]];
          auto idx = sl.autl->index_of(Perm(cp));
          assert(idx);
          conj_ids.push_back(*idx);
        }
        std::sort(conj_ids.begin(), conj_ids.end());
        Sub aright = Sub::of(std::move(conj_ids), sl.autl->size());
        Sub const &aleft = *limg[l];

        // Double cosets aleft \ autl / aright; scanning ids in ascending
        // order makes the first member found the minimal representative.
        sl.rep_of.assign(sl.autl->size(), kNone);
        for (Elt e = 0; e < (Elt)sl.autl->size(); ++e) {
          if (sl.rep_of[e] != kNone)
            continue;
          sl.reps.push_back(e);
          std::vector<Elt> stack{e};
          sl.rep_of[e] = e;
          while (!stack.empty()) {
            Elt m = stack.back();
            stack.pop_back();
            auto visit = [&](Elt nxt) {
              if (sl.rep_of[nxt] == kNone) {
                sl.rep_of[nxt] = e;
                stack.push_back(nxt);
              }
            };
            for (Elt a : aleft.elems)
              visit(sl.autl->mult(a, m));
            for (Elt b : aright.elems)
              visit(sl.autl->mult(m, b));
          }
        }
        for (Elt rep : sl.reps)
          sp->basis_.push_back(Triple{l, r, rep});
      }

    if (cache_hooks().store_space) {
      SpaceSnapshot snap;
      snap.slices.resize(sp->slices_.size());
      for (size_t i = 0; i < sp->slices_.size(); ++i) {
        auto const &sl = sp->slices_[i];
        auto &ss = snap.slices[i];
        ss.usable = sl.usable;
        if (sl.usable) {
          ss.sigma0 = sl.sigma0;
          ss.rep_of = sl.rep_of;
          ss.reps = sl.reps;
        }
      }
      for (Triple const &t : sp->basis_)
        snap.basis.push_back({t.lsec, t.rsec, t.rep});
      cache_hooks().store_space(*left, *right, snap);
    }

    for (size_t i = 0; i < sp->basis_.size(); ++i)
      sp->index_[sp->basis_[i]] = i;
    return sp;
  }
};

BisetSpacePtr BisetSpace::get(GroupPtr left, GroupPtr right)
{
  static std::mutex mx;
  static std::map<std::pair<Group const *, Group const *>,
                  std::shared_ptr<BisetSpace>>
      cache;
  std::lock_guard<std::mutex> hold(mx);
  auto &slot = cache[{left.get(), right.get()}];
  if (!slot)
    slot = BisetSpaceBuilder::build(std::move(left), std::move(right));
  return slot;
}

BisetSpace::Slice const &BisetSpace::slice(uint16_t lsec, uint16_t rsec) const
{
  return slices_[(size_t)lsec * right_->sections().sections.size() + rsec];
}

size_t BisetSpace::index_of(Triple const &t) const
{
  auto it = index_.find(t);
  if (it == index_.end())
    throw Error("triple is not a canonical basis element");
  return it->second;
}

std::string BisetSpace::label(Triple const &t) const
{
  return "[" + left_->sections().sections[t.lsec].label + " | " +
         right_->sections().sections[t.rsec].label + " | t" +
         std::to_string(t.rep) + "]";
}

Triple BisetSpace::canonicalize(RawTriple const &raw) const
{
  if (raw.left.get() != left_.get() || raw.right.get() != right_.get())
    throw Error("raw triple belongs to a different pair space");
  Group const &x = *left_;
  Group const &y = *right_;
  auto [lc, a] = x.sections().locate(x, raw.j, raw.k);
  auto [rc, b] = y.sections().locate(y, raw.s, raw.t);
  Slice const &sl = slice(lc, rc);
  if (!sl.usable)
    throw Error("triple sides have non-isomorphic quotients");
  Section const &ls = x.sections().sections[lc];
  Section const &rs = y.sections().sections[rc];

  // Transport the isomorphism onto the canonical sections, then express it
  // as (twist) o (reference iso); the twist's double coset is the identity.
  Elt binv = y.inv(b);
  std::vector<uint16_t> alpha(ls.quot.group->size());
  for (Elt qr = 0; qr < (Elt)rs.quot.group->size(); ++qr) {
    Elt y0 = lift_r_[rc][qr];
    Elt ye = y.conj(binv, y0);
    Elt xe = raw.sig[ye];
    assert(xe != kNone);
    alpha[sl.sigma0[qr]] = ls.quot.proj[x.conj(a, xe)];
  }
  auto idx = sl.autl->index_of(Perm(std::move(alpha)));
  assert(idx);
  return Triple{lc, rc, sl.rep_of[*idx]};
}

RawTriple BisetSpace::expand(Triple const &t) const
{
  Section const &ls = left_->sections().sections[t.lsec];
  Section const &rs = right_->sections().sections[t.rsec];
  Slice const &sl = slice(t.lsec, t.rsec);
  if (!sl.usable)
    throw Error("triple sides have non-isomorphic quotients");
  Perm const &al = sl.autl->perm(t.rep);
  RawTriple raw;
  raw.left = left_;
  raw.right = right_;
  raw.j = ls.s;
  raw.k = ls.t;
  raw.s = rs.s;
  raw.t = rs.t;
  raw.sig.assign(right_->size(), kNone);
  for (Elt e : rs.s.elems)
    raw.sig[e] = lift_l_[t.lsec][al[sl.sigma0[rs.quot.proj[e]]]];
  return raw;
}

Biset BisetSpace::from_raw(RawTriple const &raw) const
{
  Biset out(shared_from_this());
  out.add(canonicalize(raw), Rat(1));
  return out;
}

namespace {

// Memoized products of basis pairs, keyed per ordered space pair; the cache
// keeps all three spaces alive.
struct StarCache {
  BisetSpacePtr a, b, out;
  std::mutex lock;
  std::map<std::pair<Triple, Triple>, std::vector<std::pair<Triple, long>>>
      products;
};

StarCache &star_cache(BisetSpacePtr const &a, BisetSpacePtr const &b)
{
  static std::mutex mx;
  static std::map<std::pair<BisetSpace const *, BisetSpace const *>,
                  std::shared_ptr<StarCache>>
      cache;
  std::lock_guard<std::mutex> hold(mx);
  auto &slot = cache[{a.get(), b.get()}];
  if (!slot) {
    slot = std::make_shared<StarCache>();
    slot->a = a;
    slot->b = b;
    slot->out = BisetSpace::get(a->left(), b->right());
  }
  return *slot;
}

std::vector<std::pair<Triple, long>> const &
basis_product(StarCache &sc, Triple const &ta, Triple const &tb)
{
  {
    std::lock_guard<std::mutex> hold(sc.lock);
    auto it = sc.products.find({ta, tb});
    if (it != sc.products.end())
      return it->second;
  }
  RawTriple L = sc.a->expand(ta);
  RawTriple M = sc.b->expand(tb);
  Group const &y = *sc.a->right();
  std::map<Triple, long> acc;
  for (Elt rep : y.double_cosets(L.s, M.j)) {
    RawTriple term = compose_at(L, conjugate_raw(M, rep, 0));
    ++acc[sc.out->canonicalize(term)];
  }
  std::vector<std::pair<Triple, long>> flat(acc.begin(), acc.end());
  std::lock_guard<std::mutex> hold(sc.lock);
  return sc.products.emplace(std::make_pair(ta, tb), std::move(flat))
      .first->second;
}

} // namespace

Biset operator*(Biset const &a, Biset const &b)
{
  if (!a.space() || !b.space())
    throw Error("cannot compose bisets without a space");
  if (a.space()->right().get() != b.space()->left().get())
    throw Error("composition needs a shared middle group instance");
  StarCache &sc = star_cache(a.space(), b.space());
  Biset out(sc.out);
  for (auto const &[ta, ca] : a.coeff())
    for (auto const &[tb, cb] : b.coeff()) {
      Rat c = ca * cb;
      for (auto const &[t, m] : basis_product(sc, ta, tb))
        out.add(t, c * Rat(m));
    }
  return out;
}

Biset opposite(Biset const &e)
{
  if (!e.space())
    throw Error("cannot transpose a biset without a space");
  auto sp = BisetSpace::get(e.space()->right(), e.space()->left());
  Biset out(sp);
  for (auto const &[t, c] : e.coeff())
    out.add(sp->canonicalize(opposite_raw(e.space()->expand(t))), c);
  return out;
}

Biset identity_biset(GroupPtr g)
{
  std::vector<Elt> idmap(g->size());
  for (Elt e = 0; e < (Elt)g->size(); ++e)
    idmap[e] = e;
  return iso_biset(g, g, idmap);
}

Biset iso_biset(GroupPtr left, GroupPtr right,
                std::vector<Elt> const &right_to_left)
{
  RawTriple raw;
  raw.j = left->full_sub();
  raw.k = left->trivial_sub();
  raw.s = right->full_sub();
  raw.t = right->trivial_sub();
  raw.sig.assign(right->size(), kNone);
  for (Elt e = 0; e < (Elt)right->size(); ++e)
    raw.sig[e] = right_to_left[e];
  raw.left = std::move(left);
  raw.right = std::move(right);
  return BisetSpace::get(raw.left, raw.right)->from_raw(raw);
}

Biset conj_biset(GroupPtr g, Elt a)
{
  std::vector<Elt> m(g->size());
  for (Elt e = 0; e < (Elt)g->size(); ++e)
    m[e] = g->conj(a, e);
  return iso_biset(g, g, m);
}

Biset indinf_biset(GroupPtr g, uint16_t section_id, GroupPtr h,
                   std::vector<Elt> const &f)
{
  Section const &sec = g->sections().sections[section_id];
  GroupPtr q = sec.quot.group;
  RawTriple raw;
  raw.left = g;
  raw.right = h ? h : q;
  raw.j = sec.s;
  raw.k = sec.t;
  raw.s = raw.right->full_sub();
  raw.t = raw.right->trivial_sub();
  std::vector<Elt> lift(q->size(), kNone);
  for (Elt e : sec.s.elems)
    if (lift[sec.quot.proj[e]] == kNone)
      lift[sec.quot.proj[e]] = e;
  raw.sig.assign(raw.right->size(), kNone);
  for (Elt e = 0; e < (Elt)raw.right->size(); ++e)
    raw.sig[e] = lift[h ? f[e] : e];
  return BisetSpace::get(raw.left, raw.right)->from_raw(raw);
}

Biset defres_biset(GroupPtr g, uint16_t section_id, GroupPtr h,
                   std::vector<Elt> const &f)
{
  Section const &sec = g->sections().sections[section_id];
  GroupPtr q = sec.quot.group;
  RawTriple raw;
  raw.right = g;
  raw.left = h ? h : q;
  raw.j = raw.left->full_sub();
  raw.k = raw.left->trivial_sub();
  raw.s = sec.s;
  raw.t = sec.t;
  std::vector<Elt> finv(q->size());
  if (h) {
    for (Elt e = 0; e < (Elt)h->size(); ++e)
      finv[f[e]] = e;
  } else {
    for (Elt e = 0; e < (Elt)q->size(); ++e)
      finv[e] = e;
  }
  raw.sig.assign(g->size(), kNone);
  for (Elt e : sec.s.elems)
    raw.sig[e] = finv[sec.quot.proj[e]];
  return BisetSpace::get(raw.left, raw.right)->from_raw(raw);
}

Biset induction_biset(GroupPtr g, Sub const &s)
{
  auto [cls, tr] = g->sections().locate(*g, s, g->trivial_sub());
  (void)tr;
  return indinf_biset(std::move(g), cls);
}

Biset restriction_biset(GroupPtr g, Sub const &s)
{
  auto [cls, tr] = g->sections().locate(*g, s, g->trivial_sub());
  (void)tr;
  return defres_biset(std::move(g), cls);
}

Biset inflation_biset(GroupPtr g, Sub const &n)
{
  auto [cls, tr] = g->sections().locate(*g, g->full_sub(), n);
  (void)tr;
  return indinf_biset(std::move(g), cls);
}

Biset deflation_biset(GroupPtr g, Sub const &n)
{
  auto [cls, tr] = g->sections().locate(*g, g->full_sub(), n);
  (void)tr;
  return defres_biset(std::move(g), cls);
}

BisetPoints materialize(RawTriple const &raw)
{
  Group const &x = *raw.left;
  Group const &y = *raw.right;
  size_t n = x.size() * y.size();
  if (n > (1u << 20))
    throw GuardError("point form of a biset on a pair of order " +
                     std::to_string(n) + " exceeds the guard");

  // Generators of the subgroup: lifted generators of s plus k on the left.
  std::vector<std::pair<Elt, Elt>> gens;
  for (Elt e : y.small_gens(raw.s))
    gens.push_back({raw.sig[e], e});
  for (Elt e : x.small_gens(raw.k))
    gens.push_back({e, 0});

  constexpr uint32_t unset = 0xffffffff;
  std::vector<uint32_t> pt(n, unset);
  std::vector<std::pair<Elt, Elt>> rep;
  std::vector<size_t> stack;
  for (size_t pid = 0; pid < n; ++pid) {
    if (pt[pid] != unset)
      continue;
    uint32_t id = (uint32_t)rep.size();
    rep.push_back({(Elt)(pid / y.size()), (Elt)(pid % y.size())});
    pt[pid] = id;
    stack.push_back(pid);
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      Elt cx = (Elt)(cur / y.size()), cy = (Elt)(cur % y.size());
      for (auto const &[l1, l2] : gens) {
        size_t nxt = (size_t)x.mult(cx, l1) * y.size() + y.mult(cy, l2);
        if (pt[nxt] == unset) {
          pt[nxt] = id;
          stack.push_back(nxt);
        }
      }
    }
  }
  size_t lsize = raw.s.order() * raw.k.order();
  assert(rep.size() * lsize == n);

  BisetPoints out;
  out.left = raw.left;
  out.right = raw.right;
  out.count = rep.size();
  out.lact.assign(x.size(), std::vector<uint32_t>(out.count));
  for (Elt g = 0; g < (Elt)x.size(); ++g)
    for (size_t p = 0; p < out.count; ++p)
      out.lact[g][p] = pt[(size_t)x.mult(g, rep[p].first) * y.size() + rep[p].second];
  out.ract.assign(y.size(), std::vector<uint32_t>(out.count));
  for (Elt g = 0; g < (Elt)y.size(); ++g)
    for (size_t p = 0; p < out.count; ++p)
      out.ract[g][p] =
          pt[(size_t)rep[p].first * y.size() + y.mult(y.inv(g), rep[p].second)];
  return out;
}

std::vector<RawTriple> decompose(BisetPoints const &pts)
{
  Group const &x = *pts.left;
  Group const &z = *pts.right;
  std::vector<RawTriple> out;
  std::vector<bool> seen(pts.count, false);
  for (size_t base = 0; base < pts.count; ++base) {
    if (seen[base])
      continue;
    std::vector<size_t> stack{base};
    seen[base] = true;
    while (!stack.empty()) {
      size_t p = stack.back();
      stack.pop_back();
      auto visit = [&](uint32_t q) {
        if (!seen[q]) {
          seen[q] = true;
          stack.push_back(q);
        }
      };
      for (Elt g = 0; g < (Elt)x.size(); ++g)
        visit(pts.lact[g][p]);
      for (Elt g = 0; g < (Elt)z.size(); ++g)
        visit(pts.ract[g][p]);
    }

    std::vector<uint32_t> lpt(x.size()), rpt(z.size());
    for (Elt g = 0; g < (Elt)x.size(); ++g)
      lpt[g] = pts.lact[g][base];
    for (Elt g = 0; g < (Elt)z.size(); ++g)
      rpt[g] = pts.ract[g][base];
    std::vector<Elt> first_x(pts.count, kNone);
    for (Elt g = 0; g < (Elt)x.size(); ++g)
      if (first_x[lpt[g]] == kNone)
        first_x[lpt[g]] = g;
    std::vector<bool> rimage(pts.count, false);
    for (Elt g = 0; g < (Elt)z.size(); ++g)
      rimage[rpt[g]] = true;

    RawTriple raw;
    raw.left = pts.left;
    raw.right = pts.right;
    std::vector<Elt> jj, kk, ss, tt;
    raw.sig.assign(z.size(), kNone);
    for (Elt g = 0; g < (Elt)x.size(); ++g) {
      if (rimage[lpt[g]])
        jj.push_back(g);
      if (lpt[g] == base)
        kk.push_back(g);
    }
    for (Elt g = 0; g < (Elt)z.size(); ++g) {
      if (first_x[rpt[g]] != kNone) {
        ss.push_back(g);
        raw.sig[g] = first_x[rpt[g]];
      }
      if (rpt[g] == base)
        tt.push_back(g);
    }
    raw.j = Sub::of(std::move(jj), x.size());
    raw.k = Sub::of(std::move(kk), x.size());
    raw.s = Sub::of(std::move(ss), z.size());
    raw.t = Sub::of(std::move(tt), z.size());
    out.push_back(std::move(raw));
  }
  return out;
}

BisetPoints tensor_points(BisetPoints const &p, BisetPoints const &q)
{
  if (p.right.get() != q.left.get())
    throw Error("balanced product needs a shared middle group instance");
  Group const &y = *p.right;
  size_t n = p.count * q.count;
  if (n > (1u << 20))
    throw GuardError("balanced product with " + std::to_string(n) +
                     " point pairs exceeds the guard");

  constexpr uint32_t unset = 0xffffffff;
  std::vector<uint32_t> cls(n, unset);
  std::vector<std::pair<uint32_t, uint32_t>> rep;
  std::vector<size_t> stack;
  for (size_t pid = 0; pid < n; ++pid) {
    if (cls[pid] != unset)
      continue;
    uint32_t id = (uint32_t)rep.size();
    rep.push_back({(uint32_t)(pid / q.count), (uint32_t)(pid % q.count)});
    cls[pid] = id;
    stack.push_back(pid);
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      uint32_t cp = (uint32_t)(cur / q.count), cq = (uint32_t)(cur % q.count);
      for (Elt g = 0; g < (Elt)y.size(); ++g) {
        // p.g (x) g^-1.q  ~  p (x) q
        size_t nxt = (size_t)p.ract[g][cp] * q.count + q.lact[y.inv(g)][cq];
        if (cls[nxt] == unset) {
          cls[nxt] = id;
          stack.push_back(nxt);
        }
      }
    }
  }

  BisetPoints out;
  out.left = p.left;
  out.right = q.right;
  out.count = rep.size();
  out.lact.assign(p.left->size(), std::vector<uint32_t>(out.count));
  for (Elt g = 0; g < (Elt)p.left->size(); ++g)
    for (size_t c = 0; c < out.count; ++c)
      out.lact[g][c] = cls[(size_t)p.lact[g][rep[c].first] * q.count + rep[c].second];
  out.ract.assign(q.right->size(), std::vector<uint32_t>(out.count));
  for (Elt g = 0; g < (Elt)q.right->size(); ++g)
    for (size_t c = 0; c < out.count; ++c)
      out.ract[g][c] = cls[(size_t)rep[c].first * q.count + q.ract[g][rep[c].second]];
  return out;
}

} // namespace bisetlab
