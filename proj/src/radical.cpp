#include "bisetlab/radical.hpp"

#include <algorithm>
#include <cassert>

#include "bisetlab/chartab.hpp"

namespace bisetlab {

namespace {

std::vector<Cyclotomic> flatten(ExactMatrix const &m)
{
  std::vector<Cyclotomic> v;
  v.reserve(m.rows() * m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      v.push_back(m.at(i, j));
  return v;
}

std::vector<Cyclotomic> mat_apply(ExactMatrix const &m,
                              std::vector<Cyclotomic> const &v)
{
  assert(m.cols() == v.size());
  std::vector<Cyclotomic> out(m.rows());
  for (size_t j = 0; j < m.cols(); ++j) {
    if (v[j].is_zero())
      continue;
    for (size_t i = 0; i < m.rows(); ++i)
      if (!m.at(i, j).is_zero())
        out[i] += m.at(i, j) * v[j];
  }
  return out;
}

bool vector_zero(std::vector<Cyclotomic> const &v)
{
  for (auto const &c : v)
    if (!c.is_zero())
      return false;
  return true;
}

Cyclotomic trace_of_product(ExactMatrix const &a, ExactMatrix const &b)
{
  assert(a.cols() == b.rows() && a.rows() == b.cols());
  Cyclotomic t;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero() && !b.at(j, i).is_zero())
        t += a.at(i, j) * b.at(j, i);
  return t;
}

void check_nilpotent(ExactMatrix const &m)
{
  ExactMatrix p = m;
  for (size_t reach = 1; reach < m.rows(); reach *= 2) {
    if (p.is_zero())
      return;
    p = p * p;
  }
  if (!p.is_zero())
    throw Error("trace form radical produced a non-nilpotent element");
}

// All multisets drawn from dims (with repetition) summing to target; bails
// out once more than limit solutions exist.
void enum_multisets(std::vector<size_t> const &dims, size_t idx, size_t remain,
                    std::vector<size_t> &cur,
                    std::vector<std::vector<size_t>> &out, size_t limit)
{
  if (out.size() > limit)
    return;
  if (remain == 0) {
    out.push_back(cur);
    return;
  }
  if (idx == dims.size())
    return;
  size_t d = dims[idx];
  size_t copies = 0;
  for (; copies * d <= remain; ++copies) {
    enum_multisets(dims, idx + 1, remain - copies * d, cur, out, limit);
    cur.push_back(d);
  }
  cur.resize(cur.size() - copies);
}

// Semisimple layer between the spans of hi and lo (lo inside hi, both
// invariant under the algebra).  Commutativity of the induced action is
// decided by whether commutators push hi into lo; factor dimensions come
// from the unique candidate multiset when there is one.
LayerInfo make_layer(std::vector<std::vector<Cyclotomic>> const &hi,
                     std::vector<std::vector<Cyclotomic>> const &lo,
                     MatrixAlgebra const &alg,
                     std::vector<SimpleCandidate> const &cands, size_t n)
{
  LayerInfo li;
  assert(hi.size() >= lo.size());
  li.dim = hi.size() - lo.size();
  if (li.dim == 0)
    return li;

  RowSpan low(n);
  for (auto const &w : lo)
    low.add(w);
  li.commutative = true;
  for (size_t i = 0; i < alg.basis.size() && li.commutative; ++i)
    for (size_t j = i + 1; j < alg.basis.size() && li.commutative; ++j) {
      ExactMatrix c = alg.basis[i] * alg.basis[j] - alg.basis[j] * alg.basis[i];
      if (c.is_zero())
        continue;
      for (auto const &w : hi) {
        std::vector<Cyclotomic> cw = mat_apply(c, w);
        if (!vector_zero(cw) && !low.contains(cw)) {
          li.commutative = false;
          break;
        }
      }
    }

  std::vector<size_t> dims;
  for (auto const &cand : cands)
    if (!li.commutative || cand.dim == 1)
      dims.push_back(cand.dim);
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

  std::vector<std::vector<size_t>> sols;
  std::vector<size_t> cur;
  enum_multisets(dims, 0, li.dim, cur, sols, 8);
  if (!li.commutative) {
    // A commutative induced action is equivalent to every factor being one
    // dimensional, so the all-ones multiset is ruled out here.
    sols.erase(std::remove_if(sols.begin(), sols.end(),
                              [](std::vector<size_t> const &s) {
                                return std::all_of(s.begin(), s.end(),
                                                   [](size_t d) { return d == 1; });
                              }),
               sols.end());
  }
  if (sols.size() == 1) {
    li.resolved = true;
    std::sort(sols[0].begin(), sols[0].end());
    for (size_t d : sols[0]) {
      Factor f;
      f.dim = d;
      for (auto const &cand : cands)
        if (cand.dim == d)
          f.labels.push_back(cand.label);
      li.factors.push_back(std::move(f));
    }
  }
  return li;
}

std::vector<std::vector<Rat>> invert_rat(std::vector<std::vector<Rat>> m)
{
  size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    inv[i][i] = Rat(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0)
      ++piv;
    if (piv == n)
      throw Error("mark matrix is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0)
        continue;
      Rat f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

} // namespace

ExactMatrix action_matrix(Biset const &gamma, StdSpace const &module)
{
  if (!gamma.space() ||
      gamma.space()->right().get() != module.left().get() ||
      gamma.space()->left().get() != module.left().get())
    throw Error("action_matrix needs gamma in B(X, X) for the module's X");
  size_t n = module.dim();
  ExactMatrix m(n, n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<Rat> col = module.coords(gamma * module.element(j));
    for (size_t i = 0; i < n; ++i)
      m.at(i, j) = Cyclotomic(col[i]);
  }
  return m;
}

MatrixAlgebra algebra_closure(std::vector<ExactMatrix> const &gens)
{
  if (gens.empty())
    throw Error("algebra_closure needs at least one generator");
  size_t n = gens[0].rows();
  MatrixAlgebra alg;
  alg.n = n;
  RowSpan span(n * n);
  auto try_add = [&](ExactMatrix const &m) {
    if (!span.add(flatten(m)))
      return false;
    alg.basis.push_back(m);
    return true;
  };
  try_add(ExactMatrix::identity(n));
  for (auto const &m : gens) {
    if (m.rows() != n || m.cols() != n)
      throw Error("algebra_closure generators must share one square size");
    try_add(m);
  }
  size_t frontier = 0;
  while (frontier < alg.basis.size()) {
    size_t hi = alg.basis.size();
    for (size_t i = 0; i < hi; ++i)
      for (size_t j = (i < frontier ? frontier : 0); j < hi; ++j)
        try_add(alg.basis[i] * alg.basis[j]);
    frontier = hi;
  }
  return alg;
}

std::vector<ExactMatrix> trace_form_radical(MatrixAlgebra const &alg)
{
  size_t d = alg.basis.size();
  ExactMatrix t(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i; j < d; ++j) {
      t.at(i, j) = trace_of_product(alg.basis[i], alg.basis[j]);
      t.at(j, i) = t.at(i, j);
    }
  std::vector<ExactMatrix> rad;
  for (auto const &v : t.right_kernel()) {
    ExactMatrix m(alg.n, alg.n);
    for (size_t k = 0; k < d; ++k)
      if (!v[k].is_zero())
        m = m + alg.basis[k].scaled(v[k]);
    check_nilpotent(m);
    rad.push_back(std::move(m));
  }
  return rad;
}

std::vector<SimpleCandidate> simple_candidates(GroupPtr const &g,
                                               GroupPtr const &h)
{
  std::vector<GroupPtr> quots;
  for (Section const &sec : g->sections().sections) {
    GroupPtr const &q = sec.quot.group;
    bool seen = false;
    for (auto const &p : quots)
      if (p->iso_fingerprint() == q->iso_fingerprint() &&
          find_isomorphism(*p, *q)) {
        seen = true;
        break;
      }
    if (!seen)
      quots.push_back(q);
  }
  std::vector<SimpleCandidate> out;
  for (GroupPtr const &q : quots) {
    if (StdSpace::get(q, h)->dim() == 0)
      continue;
    CharTable const &ct = char_table(*q->aut().out);
    for (size_t i = 0; i < ct.irr_count(); ++i) {
      unsigned d = simple_dim(q, ct.labels[i], g);
      if (d > 0)
        out.push_back(
            {"S[" + recognized_name(*q) + "," + ct.labels[i] + "]", d});
    }
  }
  return out;
}

ModuleRadical module_radical(GroupPtr const &g, GroupPtr const &h)
{
  ModuleRadical out;
  out.space = StdSpace::get(g, h);
  size_t n = out.space->dim();
  out.dim_module = n;
  if (n == 0)
    return out;

  BisetSpacePtr gg = BisetSpace::get(g, g);
  std::vector<ExactMatrix> gens;
  gens.reserve(gg->basis().size());
  for (Triple const &t : gg->basis()) {
    Biset e(gg);
    e.add(t, Rat(1));
    gens.push_back(action_matrix(e, *out.space));
  }
  MatrixAlgebra alg = algebra_closure(gens);
  std::vector<ExactMatrix> rad = trace_form_radical(alg);

  RowSpan jm(n);
  for (auto const &m : rad)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Cyclotomic> col(n);
      for (size_t i = 0; i < n; ++i)
        col[i] = m.at(i, j);
      if (!vector_zero(col))
        jm.add(col);
    }
  out.dim_j = jm.dim();
  out.jm_basis = jm.basis();

  GramForm form = gram_matrix(g, h, tau_sum(h));
  out.dim_r = n - form.rank;
  RowSpan rker(n);
  for (auto const &v : form_kernel(form))
    rker.add(v);
  if (rker.dim() != out.dim_r)
    throw Error("module_radical: pairing kernel dimension mismatch");
  for (auto const &w : out.jm_basis)
    if (!rker.contains(w))
      throw Error("module_radical: JM escapes the pairing kernel");

  // Radical filtration JM > J^2M > ... > 0.
  std::vector<std::vector<std::vector<Cyclotomic>>> chain;
  if (out.dim_j > 0)
    chain.push_back(out.jm_basis);
  while (!chain.empty()) {
    RowSpan next(n);
    for (auto const &m : rad)
      for (auto const &w : chain.back()) {
        std::vector<Cyclotomic> v = mat_apply(m, w);
        if (!vector_zero(v))
          next.add(v);
      }
    if (next.dim() == 0)
      break;
    assert(next.dim() < chain.back().size());
    chain.push_back(next.basis());
  }

  std::vector<SimpleCandidate> cands = simple_candidates(g, h);
  std::vector<std::vector<Cyclotomic>> unit(n);
  for (size_t i = 0; i < n; ++i) {
    unit[i].assign(n, Cyclotomic());
    unit[i][i] = Cyclotomic(1);
  }
  std::vector<std::vector<Cyclotomic>> const empty;
  out.top = make_layer(unit, chain.empty() ? empty : chain.front(), alg, cands, n);
  for (size_t i = 0; i < chain.size(); ++i)
    out.lower.push_back(make_layer(chain[i],
                                   i + 1 < chain.size() ? chain[i + 1] : empty,
                                   alg, cands, n));
  return out;
}

AlgebraRadical algebra_radical(GroupPtr const &g)
{
  BisetSpacePtr sp = BisetSpace::get(g, g);
  size_t n = sp->basis().size();
  if (n > config().max_regular_basis)
    throw GuardError("regular trace form on a basis of size " +
                     std::to_string(n) + " exceeds the guard " +
                     std::to_string(config().max_regular_basis));
  AlgebraRadical out;
  out.dim = n;
  std::vector<Biset> elems;
  elems.reserve(n);
  for (Triple const &t : sp->basis()) {
    Biset e(sp);
    e.add(t, Rat(1));
    elems.push_back(std::move(e));
  }

  // Trace of each left multiplication; the full trace form then only needs
  // the coefficient vectors of the same n^2 cached products.
  std::vector<Rat> tvec(n, Rat(0));
  for (size_t d = 0; d < n; ++d)
    for (size_t c = 0; c < n; ++c)
      tvec[d] += (elems[d] * elems[c]).coeff_of(sp->basis()[c]);

  ExactMatrix t(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      Rat val(0);
      Biset prod = elems[a] * elems[b];
      for (auto const &[tr, cf] : prod.coeff())
        val += cf * tvec[sp->index_of(tr)];
      t.at(a, b) = Cyclotomic(val);
    }
  out.j_basis = t.right_kernel();
  out.dim_j = out.j_basis.size();
  out.rank = n - out.dim_j;
  return out;
}

size_t algebra_radical_dim(GroupPtr const &g)
{
  return algebra_radical(g).dim_j;
}

TrivialIdealDims trivial_ideal_dims(GroupPtr const &g, bool with_radical)
{
  TrivialIdealDims out;
  LatticeData const &lat = g->lattice();
  out.b = lat.class_count();
  out.c = lat.cyclic_class_count();
  out.dim_i = out.b * out.b;
  out.dim_ic = out.c * out.c;
  out.predicted_meet = out.dim_i - out.dim_ic;

  BisetSpacePtr sp = BisetSpace::get(g, g);
  SectionData const &secs = g->sections();
  std::vector<char> in_i(sp->basis().size(), 0);
  size_t support = 0;
  for (size_t i = 0; i < sp->basis().size(); ++i) {
    Triple const &t = sp->basis()[i];
    if (secs.sections[t.lsec].quot.group->size() == 1 &&
        secs.sections[t.rsec].quot.group->size() == 1) {
      in_i[i] = 1;
      ++support;
    }
  }
  if (support != out.dim_i)
    throw Error("trivial_ideal_dims: support count mismatch");

  if (with_radical && sp->basis().size() <= config().max_regular_basis) {
    AlgebraRadical ar = algebra_radical(g);
    out.radical_checked = true;
    out.dim_j = ar.dim_j;
    size_t outside = sp->basis().size() - support;
    ExactMatrix k(ar.dim_j, outside);
    for (size_t r = 0; r < ar.dim_j; ++r) {
      size_t cc = 0;
      for (size_t i = 0; i < in_i.size(); ++i)
        if (!in_i[i])
          k.at(r, cc++) = ar.j_basis[r][i];
    }
    out.dim_i_cap_j = ar.dim_j - k.rank();
  }
  return out;
}

std::vector<Rat> burnside_product(GroupPtr const &g, size_t i, size_t j)
{
  LatticeData const &lat = g->lattice();
  Sub const &a = lat.classes[i].rep;
  Sub const &b = lat.classes[j].rep;
  std::vector<Rat> out(lat.class_count(), Rat(0));
  for (Elt x : g->double_cosets(a, b))
    out[lat.locate(*g, g->intersection(a, g->conjugate(b, x))).first] += 1;
  return out;
}

MarkTable mark_idempotents(GroupPtr const &g)
{
  MarkTable out;
  out.group = g;
  auto const &cls = g->lattice().classes;
  size_t n = cls.size();
  out.marks.assign(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    Sub const &a = cls[i].rep;
    for (size_t j = 0; j < n; ++j) {
      if (cls[j].rep.order() > a.order())
        continue;
      std::vector<Elt> gens = g->small_gens(cls[j].rep);
      size_t cnt = 0;
      for (size_t xi = 0; xi < g->size(); ++xi) {
        Elt inv = g->inv((Elt)xi);
        bool inside = true;
        for (Elt b : gens)
          if (!a.contains(g->conj(inv, b))) {
            inside = false;
            break;
          }
        if (inside)
          ++cnt;
      }
      assert(cnt % a.order() == 0);
      out.marks[i][j] = make_rat(cnt, a.order());
    }
    if (out.marks[i][i] !=
        Rat((long)(cls[i].normalizer.order() / cls[i].rep.order())))
      throw Error("mark matrix diagonal disagrees with the normalizer index");
  }
  out.idem = invert_rat(out.marks);

  // Orthogonal idempotents summing to the class of the full group.
  std::vector<std::vector<std::vector<Rat>>> prods(n);
  for (size_t a = 0; a < n; ++a) {
    prods[a].resize(n);
    for (size_t b = 0; b < n; ++b)
      prods[a][b] = burnside_product(g, a, b);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Rat> prod(n, Rat(0));
      for (size_t a = 0; a < n; ++a) {
        if (out.idem[i][a] == 0)
          continue;
        for (size_t b = 0; b < n; ++b) {
          if (out.idem[j][b] == 0)
            continue;
          Rat f = out.idem[i][a] * out.idem[j][b];
          for (size_t k = 0; k < n; ++k)
            prod[k] += f * prods[a][b][k];
        }
      }
      for (size_t k = 0; k < n; ++k) {
        Rat expect = i == j ? out.idem[i][k] : Rat(0);
        if (prod[k] != expect)
          throw Error("mark idempotents failed the orthogonality check");
      }
    }
  std::vector<Rat> total(n, Rat(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      total[k] += out.idem[i][k];
  if (cls.back().rep.order() != g->size())
    throw Error("lattice classes are not sorted with the full group last");
  for (size_t k = 0; k < n; ++k)
    if (total[k] != (k + 1 == n ? Rat(1) : Rat(0)))
      throw Error("mark idempotents do not sum to the unit");
  return out;
}

RqCheck rq_action_check(GroupPtr const &g, Sub const &a, Sub const &b,
                        Sub const &c)
{
  RawTriple raw;
  raw.left = g;
  raw.right = g;
  raw.j = a;
  raw.k = a;
  raw.s = b;
  raw.t = b;
  raw.sig.assign(g->size(), (Elt)0xffff);
  for (Elt y : b.elems)
    raw.sig[y] = 0;
  BisetPoints pts = materialize(raw);

  constexpr uint32_t unset = 0xffffffff;
  std::vector<uint32_t> orb(pts.count, unset);
  std::vector<uint32_t> reps;
  for (uint32_t p = 0; p < pts.count; ++p) {
    if (orb[p] != unset)
      continue;
    uint32_t id = (uint32_t)reps.size();
    reps.push_back(p);
    orb[p] = id;
    std::vector<uint32_t> stack{p};
    while (!stack.empty()) {
      uint32_t q = stack.back();
      stack.pop_back();
      for (Elt y : c.elems) {
        uint32_t r = pts.ract[y][q];
        if (orb[r] == unset) {
          orb[r] = id;
          stack.push_back(r);
        }
      }
    }
  }

  RqCheck out;
  out.fixed_dim = g->double_cosets(b, c).size();
  for (auto const &ec : g->classes()) {
    Elt r = ec.front();
    long lhs = 0;
    for (uint32_t p : reps)
      if (orb[pts.lact[r][p]] == orb[p])
        ++lhs;
    size_t cnt = 0;
    for (size_t xi = 0; xi < g->size(); ++xi)
      if (a.contains(g->conj(g->inv((Elt)xi), r)))
        ++cnt;
    long rhs = (long)out.fixed_dim * (long)(cnt / a.order());
    out.lhs_char.push_back(lhs);
    out.rhs_char.push_back(rhs);
    if (lhs != rhs)
      throw Error("two-sided transitive action disagrees with the "
                  "orbit-count prediction");
  }
  return out;
}

} // namespace bisetlab
