#include "bisetlab/functor.hpp"

#include <cassert>
#include <mutex>

#include "bisetlab/morphisms.hpp"

namespace bisetlab {

namespace {

uint16_t full_trivial_section(GroupPtr const &h)
{
  return h->sections().locate(*h, h->full_sub(), h->trivial_sub()).first;
}

} // namespace

OutElem pi_out(Biset const &e)
{
  BisetSpacePtr const &space = e.space();
  if (!space)
    throw Error("pi_out: element has no space");
  if (space->left().get() != space->right().get())
    throw Error("pi_out: both sides must be the same group instance");

  GroupPtr const &h = space->left();
  uint16_t hsec = full_trivial_section(h);
  AutData const &ad = h->aut();

  OutElem acc;
  for (auto const &[t, c] : e.coeff()) {
    if (t.lsec != hsec || t.rsec != hsec)
      continue;
    RawTriple raw = space->expand(t);
    std::vector<Elt> m(raw.sig.begin(), raw.sig.end());
    acc[ad.out_of_map(*h, m)] += c;
  }
  for (auto it = acc.begin(); it != acc.end();)
    it = it->second == 0 ? acc.erase(it) : std::next(it);
  return acc;
}

StdSpacePtr StdSpace::get(GroupPtr g, GroupPtr h)
{
  static std::mutex lock;
  static std::map<std::pair<GroupPtr, GroupPtr>, StdSpacePtr> cache;

  std::lock_guard<std::mutex> hold(lock);
  auto key = std::make_pair(g, h);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;

  auto space = std::shared_ptr<StdSpace>(new StdSpace());
  space->ambient_ = BisetSpace::get(g, h);
  space->full_rsec_ = full_trivial_section(h);
  for (Triple const &t : space->ambient_->basis())
    if (t.rsec == space->full_rsec_) {
      space->index_[t] = space->basis_.size();
      space->basis_.push_back(t);
    }
  cache[key] = space;
  return space;
}

size_t StdSpace::index_of(Triple const &t) const
{
  auto it = index_.find(t);
  if (it == index_.end())
    throw Error("StdSpace: triple is not a standard basis element");
  return it->second;
}

Biset StdSpace::element(size_t i) const
{
  Biset b(ambient_);
  b.add(basis_[i], Rat(1));
  return b;
}

Biset StdSpace::project(Biset const &e) const
{
  assert(e.space() == ambient_);
  Biset b(ambient_);
  for (auto const &[t, c] : e.coeff())
    if (t.rsec == full_rsec_)
      b.add(t, c);
  return b;
}

std::vector<Rat> StdSpace::coords(Biset const &e) const
{
  assert(e.space() == ambient_);
  std::vector<Rat> v(basis_.size(), Rat(0));
  for (auto const &[t, c] : e.coeff())
    if (t.rsec == full_rsec_)
      v[index_.at(t)] = c;
  return v;
}

Biset StdSpace::from_coords(std::vector<Rat> const &v) const
{
  assert(v.size() == basis_.size());
  Biset b(ambient_);
  for (size_t i = 0; i < v.size(); ++i)
    b.add(basis_[i], v[i]);
  return b;
}

Cyclotomic Tau::apply(OutElem const &x) const
{
  switch (kind) {
  case Coeff1: {
    auto it = x.find(0);
    return it == x.end() ? Cyclotomic() : Cyclotomic(it->second);
  }
  case SumIrr: {
    CharTable const &ct = char_table(*out);
    Cyclotomic total;
    for (auto const &[w, c] : x) {
      Cyclotomic v;
      for (size_t i = 0; i < ct.irr_count(); ++i)
        v += ct.value(i, out->class_of(w));
      total += Cyclotomic(c) * v;
    }
    return total;
  }
  case TraceV: {
    CharTable const &ct = char_table(*out);
    Cyclotomic total;
    for (auto const &[w, c] : x)
      total += Cyclotomic(c) * ct.value(irr, out->class_of(w));
    return total;
  }
  }
  throw Error("Tau: unknown kind");
}

unsigned Tau::irr_degree() const
{
  assert(kind == TraceV);
  return char_table(*out).degrees[irr];
}

std::string Tau::name() const
{
  switch (kind) {
  case Coeff1:
    return "coeff1";
  case SumIrr:
    return "sum";
  case TraceV:
    return "V:" + char_table(*out).labels[irr];
  }
  throw Error("Tau: unknown kind");
}

Tau tau_coeff1(GroupPtr const &h) { return Tau{Tau::Coeff1, h->aut().out, 0}; }

Tau tau_sum(GroupPtr const &h) { return Tau{Tau::SumIrr, h->aut().out, 0}; }

Tau tau_trace(GroupPtr const &h, std::string const &irr_label)
{
  GroupPtr out = h->aut().out;
  size_t irr = char_table(*out).index_of_label(irr_label);
  return Tau{Tau::TraceV, out, irr};
}

Tau tau_by_name(GroupPtr const &h, std::string const &spec)
{
  if (spec == "coeff1")
    return tau_coeff1(h);
  if (spec == "sum")
    return tau_sum(h);
  if (spec.rfind("V:", 0) == 0)
    return tau_trace(h, spec.substr(2));
  throw Error("tau must be coeff1, sum or V:<label>, got '" + spec + "'");
}

GramForm gram_matrix(GroupPtr const &g, GroupPtr const &h, Tau const &tau)
{
  StdSpacePtr space = StdSpace::get(g, h);
  size_t n = space->dim();

  std::vector<Biset> elems, ops;
  elems.reserve(n);
  ops.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    elems.push_back(space->element(i));
    ops.push_back(opposite(elems.back()));
  }

  ExactMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m.at(i, j) = tau.apply(pi_out(ops[i] * elems[j]));

  GramForm form;
  form.space = space;
  form.tau = tau;
  form.matrix = m;
  form.rank = m.rank();
  return form;
}

std::vector<std::vector<Cyclotomic>> form_kernel(GramForm const &form)
{
  return form.matrix.right_kernel();
}

unsigned simple_dim(GroupPtr const &h, std::string const &irr_label,
                    GroupPtr const &g)
{
  Tau tau = tau_trace(h, irr_label);
  GramForm form = gram_matrix(g, h, tau);
  unsigned d = tau.irr_degree();
  if (form.rank % d != 0)
    throw Error("simple_dim: rank " + std::to_string(form.rank) +
                " is not divisible by the character degree " +
                std::to_string(d));
  return static_cast<unsigned>(form.rank / d);
}

std::vector<SemisimpleRow> semisimple_quotient_dims(GroupPtr const &g,
                                                    GroupPtr const &h)
{
  CharTable const &ct = char_table(*h->aut().out);
  std::vector<SemisimpleRow> rows;
  for (size_t i = 0; i < ct.irr_count(); ++i) {
    SemisimpleRow row;
    row.label = ct.labels[i];
    row.mult = ct.degrees[i];
    row.dim = simple_dim(h, row.label, g);
    rows.push_back(row);
  }
  return rows;
}

namespace {

void verify_witness(SplitWitness const &w)
{
  OutElem pe = pi_out(w.alpha * w.beta);
  if (pe.size() != 1 || !pe.count(0) || pe.at(0) != 1)
    throw Error("split_pair_witness: projection of alpha * beta is not the "
                "identity");
}

} // namespace

std::optional<SplitWitness> split_pair_witness(GroupPtr const &g,
                                               GroupPtr const &h)
{
  SectionData const &secs = g->sections();

  // H isomorphic to a quotient of G: deflation against inflation.  When G is
  // abelian this case picks up every subquotient, since each one is then
  // isomorphic to a quotient.
  for (Sub const &n : normal_subgroups_in(*g, g->full_sub())) {
    if (g->size() / n.order() != h->size())
      continue;
    uint16_t sec = secs.locate(*g, g->full_sub(), n).first;
    GroupPtr const &q = secs.sections[sec].quot.group;
    auto f = find_isomorphism(*h, *q);
    if (!f)
      continue;
    SplitWitness w;
    w.kind = "quotient";
    w.detail = secs.sections[sec].label;
    w.alpha = defres_biset(g, sec, h, *f);
    w.beta = indinf_biset(g, sec, h, *f);
    verify_witness(w);
    return w;
  }

  // H isomorphic to a subgroup Z with N_G(Z) = Z C_G(Z): every conjugation
  // by the normalizer is then inner on Z, so restriction against induction
  // averages to the identity.
  for (SubClass const &cls : g->lattice().classes) {
    if (cls.rep.order() != h->size())
      continue;
    uint16_t sec = secs.locate(*g, cls.rep, g->trivial_sub()).first;
    GroupPtr const &q = secs.sections[sec].quot.group;
    auto f = find_isomorphism(*h, *q);
    if (!f)
      continue;
    Sub c = g->centralizer(cls.rep);
    std::vector<Elt> seed = cls.rep.elems;
    seed.insert(seed.end(), c.elems.begin(), c.elems.end());
    if (!(g->closure(seed) == cls.normalizer))
      continue;
    SplitWitness w;
    w.kind = "subgroup";
    w.detail = secs.sections[sec].label;
    w.alpha = defres_biset(g, sec, h, *f);
    w.alpha *= make_rat(cls.rep.order(), cls.normalizer.order());
    w.beta = indinf_biset(g, sec, h, *f);
    verify_witness(w);
    return w;
  }

  return std::nullopt;
}

} // namespace bisetlab
