#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bisetlab/catalog.hpp>
#include <bisetlab/chartab.hpp>
#include <bisetlab/radical.hpp>

using namespace bisetlab;

namespace {

ExactMatrix unit2(size_t r, size_t c)
{
  ExactMatrix m(2, 2);
  m.at(r, c) = Cyclotomic(1);
  return m;
}

size_t simple_square_sum(GroupPtr const &g)
{
  size_t total = 0;
  for (auto const &cand : simple_candidates(g, group_by_spec("C1")))
    total += cand.dim * cand.dim;
  return total;
}

} // namespace

TEST_CASE("mark matrix and primitive idempotents")
{
  auto c2 = group_by_spec("C2");
  MarkTable mt = mark_idempotents(c2);
  REQUIRE(mt.marks.size() == 2);
  CHECK(mt.marks[0] == std::vector<Rat>{Rat(2), Rat(0)});
  CHECK(mt.marks[1] == std::vector<Rat>{Rat(1), Rat(1)});
  CHECK(mt.idem[0] == std::vector<Rat>{make_rat(1, 2), Rat(0)});
  CHECK(mt.idem[1] == std::vector<Rat>{make_rat(-1, 2), Rat(1)});

  // The head idempotent is always the regular class scaled by the order,
  // and construction itself verifies orthogonality and the unit sum.
  for (char const *name : {"S3", "A4", "D8", "Q8"}) {
    CAPTURE(name);
    auto g = group_by_spec(name);
    MarkTable t = mark_idempotents(g);
    size_t n = t.idem.size();
    CHECK(n == g->lattice().class_count());
    CHECK(t.idem[0][0] == make_rat(1, (long)g->size()));
    for (size_t j = 1; j < n; ++j)
      CHECK(t.idem[0][j] == 0);
  }
}

TEST_CASE("transitive products in the single Burnside ring")
{
  auto s3 = group_by_spec("S3");
  // Classes sorted by order: 1, C2, C3, S3.
  REQUIRE(s3->lattice().class_count() == 4);
  CHECK(burnside_product(s3, 1, 1) ==
        std::vector<Rat>{Rat(1), Rat(1), Rat(0), Rat(0)});
  CHECK(burnside_product(s3, 2, 2) ==
        std::vector<Rat>{Rat(0), Rat(0), Rat(2), Rat(0)});
  CHECK(burnside_product(s3, 0, 1) ==
        std::vector<Rat>{Rat(3), Rat(0), Rat(0), Rat(0)});
  // The full class is the unit.
  for (size_t i = 0; i < 4; ++i) {
    std::vector<Rat> expect(4, Rat(0));
    expect[i] = Rat(1);
    CHECK(burnside_product(s3, i, 3) == expect);
  }
}

TEST_CASE("two sided transitive action on transitive modules")
{
  auto s3 = group_by_spec("S3");
  auto const &cls = s3->lattice().classes;
  RqCheck rc = rq_action_check(s3, cls[2].rep, cls[1].rep, s3->trivial_sub());
  CHECK(rc.fixed_dim == 3);
  CHECK(rc.lhs_char[0] == 6); // identity sees fixed_dim * [G : C3] orbits
  CHECK(rc.lhs_char == rc.rhs_char);

  for (char const *name : {"S3", "A4", "D8"}) {
    CAPTURE(name);
    auto g = group_by_spec(name);
    auto const &classes = g->lattice().classes;
    for (auto const &ca : classes)
      for (auto const &cb : classes)
        for (auto const &cc : classes)
          CHECK_NOTHROW(rq_action_check(g, ca.rep, cb.rep, cc.rep));
  }
}

TEST_CASE("idempotent headed two sided products on rational classes")
{
  // The scalar through which (G/a)(e_B)^op acts on the class of Q[G/C] is
  // zero whenever B is non-cyclic, and the scalars over all B partition
  // the identity.
  for (char const *name : {"D8", "A4", "S4"}) {
    CAPTURE(name);
    auto g = group_by_spec(name);
    auto const &cls = g->lattice().classes;
    MarkTable mt = mark_idempotents(g);
    size_t n = cls.size();
    for (size_t ci = 0; ci < n; ++ci) {
      if (!cls[ci].cyclic)
        continue;
      Rat total(0);
      for (size_t bi = 0; bi < n; ++bi) {
        Rat s(0);
        for (size_t bp = 0; bp < n; ++bp) {
          if (mt.idem[bi][bp] == 0)
            continue;
          size_t orbits =
              g->double_cosets(cls[bp].rep, cls[ci].rep).size();
          s += mt.idem[bi][bp] * Rat((long)orbits);
        }
        if (!cls[bi].cyclic) {
          CAPTURE(bi);
          CHECK(s == 0);
        }
        total += s;
      }
      CHECK(total == 1);
    }
  }
}

TEST_CASE("action matrices respect identity, composition, and traces")
{
  auto a4 = group_by_spec("A4");
  auto c3 = group_by_spec("C3");
  auto space = StdSpace::get(a4, c3);
  size_t n = space->dim();
  REQUIRE(n == 4);

  CHECK(action_matrix(identity_biset(a4), *space) == ExactMatrix::identity(n));

  auto gg = BisetSpace::get(a4, a4);
  std::vector<Biset> gams;
  for (Triple const &t : gg->basis()) {
    Biset e(gg);
    e.add(t, Rat(1));
    gams.push_back(e);
  }
  size_t probe = std::min<size_t>(gams.size(), 6);
  for (size_t i = 0; i < probe; ++i)
    for (size_t j = 0; j < probe; ++j)
      CHECK(action_matrix(gams[i] * gams[j], *space) ==
            action_matrix(gams[i], *space) * action_matrix(gams[j], *space));

  for (Biset const &gamma : gams) {
    ExactMatrix m = action_matrix(gamma, *space);
    Cyclotomic tr;
    for (size_t i = 0; i < n; ++i)
      tr += m.at(i, i);
    Rat direct(0);
    for (size_t j = 0; j < n; ++j)
      direct += space->coords(gamma * space->element(j))[j];
    CHECK(tr == Cyclotomic(direct));
  }
}

TEST_CASE("algebra closure of explicit matrix sets")
{
  ExactMatrix diag(2, 2);
  diag.at(0, 0) = Cyclotomic(1);
  MatrixAlgebra a = algebra_closure({diag});
  CHECK(a.basis.size() == 2);
  CHECK(a.basis[0] == ExactMatrix::identity(2));

  MatrixAlgebra units = algebra_closure({unit2(0, 1), unit2(1, 0)});
  CHECK(units.basis.size() == 4);

  ExactMatrix nil = unit2(0, 1);
  MatrixAlgebra upper = algebra_closure({nil});
  CHECK(upper.basis.size() == 2);

  // Closing a closure is idempotent.
  CHECK(algebra_closure(units.basis).basis.size() == units.basis.size());
  CHECK(algebra_closure(a.basis).basis.size() == a.basis.size());
}

TEST_CASE("trace form radical of explicit matrix algebras")
{
  // Upper triangular 2x2 matrices: radical spanned by the corner.
  MatrixAlgebra upper = algebra_closure({unit2(0, 0), unit2(0, 1)});
  REQUIRE(upper.basis.size() == 3);
  std::vector<ExactMatrix> rad = trace_form_radical(upper);
  REQUIRE(rad.size() == 1);
  CHECK(rad[0] == unit2(0, 1));

  // Full 2x2 matrices and a split torus are semisimple.
  CHECK(trace_form_radical(algebra_closure({unit2(0, 1), unit2(1, 0)})).empty());
  CHECK(trace_form_radical(algebra_closure({unit2(0, 0)})).empty());
}

TEST_CASE("module radical at small pairs")
{
  auto a4 = group_by_spec("A4");
  auto c3 = group_by_spec("C3");
  ModuleRadical mr = module_radical(a4, c3);
  CHECK(mr.dim_module == 4);
  CHECK(mr.dim_j == 2);
  CHECK(mr.dim_r == 2);
  CHECK(mr.jm_basis.size() == 2);
  CHECK(mr.top.dim == 2);
  CHECK(mr.top.commutative);
  CHECK(mr.top.resolved);
  REQUIRE(mr.top.factors.size() == 2);
  CHECK(mr.top.factors[0].dim == 1);
  CHECK(mr.top.factors[1].dim == 1);
  REQUIRE(mr.lower.size() == 1);
  CHECK(mr.lower[0].dim == 2);
  CHECK(mr.lower[0].commutative);
  CHECK(mr.lower[0].resolved);
  REQUIRE(mr.lower[0].factors.size() == 2);
  CHECK(mr.lower[0].factors[0].dim == 1);
  // Four one dimensional candidates share the dimension, so the labels stay
  // listed rather than picked.
  CHECK(mr.lower[0].factors[0].labels.size() == 4);

  auto a5 = group_by_spec("A5");
  ModuleRadical m5 = module_radical(a5, c3);
  CHECK(m5.dim_module == 3);
  CHECK(m5.dim_j == 1);
  CHECK(m5.dim_r == 2);
  CHECK(m5.top.dim == 2);
  CHECK(m5.top.commutative);
  CHECK(m5.top.resolved);
  REQUIRE(m5.lower.size() == 1);
  CHECK(m5.lower[0].dim == 1);
  CHECK(m5.lower[0].resolved);
  CHECK(m5.lower[0].factors[0].dim == 1);

  ModuleRadical mc = module_radical(c3, c3);
  CHECK(mc.dim_module == 2);
  CHECK(mc.dim_j == 0);
  CHECK(mc.dim_r == 0);
  CHECK(mc.lower.empty());
  CHECK(mc.top.dim == 2);
  CHECK(mc.top.commutative);
  REQUIRE(mc.top.resolved);
  CHECK(mc.top.factors[0].labels.size() == 2);

  auto s3 = group_by_spec("S3");
  ModuleRadical ms = module_radical(s3, c3);
  CHECK(ms.dim_module == 1);
  CHECK(ms.dim_j == 0);
  CHECK(ms.dim_r == 0);

  auto d8 = group_by_spec("D8");
  ModuleRadical md = module_radical(d8, d8);
  CHECK(md.dim_module == 2);
  CHECK(md.dim_j == 0);
  CHECK(md.top.resolved);
  CHECK(md.top.factors.size() == 2);

  // Empty module when the right group is not a subquotient.
  ModuleRadical mz = module_radical(group_by_spec("C2"), c3);
  CHECK(mz.dim_module == 0);
  CHECK(mz.dim_j == 0);
  CHECK(mz.top.dim == 0);
}

TEST_CASE("split witnesses force the radical onto the pairing kernel")
{
  struct Pair {
    char const *g, *h;
  };
  for (Pair p : {Pair{"A4", "C3"}, Pair{"C4", "C2"}, Pair{"C6", "C3"}}) {
    CAPTURE(p.g);
    auto g = group_by_spec(p.g);
    auto h = group_by_spec(p.h);
    REQUIRE(split_pair_witness(g, h).has_value());
    ModuleRadical mr = module_radical(g, h);
    CHECK(mr.dim_j == mr.dim_r);
  }
  auto a5 = group_by_spec("A5");
  auto c3 = group_by_spec("C3");
  CHECK(!split_pair_witness(a5, c3).has_value());
  ModuleRadical strict = module_radical(a5, c3);
  CHECK(strict.dim_j < strict.dim_r);
}

TEST_CASE("unique dimension candidates resolve a simple module label")
{
  auto c4 = group_by_spec("C4");
  auto c2 = group_by_spec("C2");
  ModuleRadical mr = module_radical(c4, c2);
  CHECK(mr.dim_module == 2);
  CHECK(mr.dim_j == 0);
  CHECK(mr.dim_r == 0);
  CHECK(!mr.top.commutative);
  REQUIRE(mr.top.resolved);
  REQUIRE(mr.top.factors.size() == 1);
  CHECK(mr.top.factors[0].dim == 2);
  REQUIRE(mr.top.factors[0].labels.size() == 1);
  CHECK(mr.top.factors[0].labels[0] == "S[C2,k]");
}

TEST_CASE("regular trace form radical of small double biset algebras")
{
  struct Case {
    char const *name;
    size_t dim;
  };
  for (Case c : {Case{"C2", 5}, Case{"C3", 6}, Case{"C4", 15}, Case{"C6", 30}}) {
    CAPTURE(c.name);
    AlgebraRadical ar = algebra_radical(group_by_spec(c.name));
    CHECK(ar.dim == c.dim);
    CHECK(ar.dim_j == 0);
    CHECK(ar.rank == c.dim);
  }

  // Non-cyclic groups carry a nonzero radical, and the semisimple rank must
  // match the squares of the simple dimensions computed through the forms.
  for (char const *name : {"V4", "S3"}) {
    CAPTURE(name);
    auto g = group_by_spec(name);
    AlgebraRadical ar = algebra_radical(g);
    CHECK(ar.dim_j > 0);
    CHECK(ar.rank == simple_square_sum(g));
  }
  CHECK(algebra_radical(group_by_spec("V4")).dim == 67);
  CHECK(algebra_radical(group_by_spec("S3")).dim == 22);
}

TEST_CASE("trivial factor ideal dimensions")
{
  auto c4 = group_by_spec("C4");
  TrivialIdealDims tc = trivial_ideal_dims(c4);
  CHECK(tc.b == 3);
  CHECK(tc.c == 3);
  CHECK(tc.dim_i == 9);
  CHECK(tc.dim_ic == 9);
  CHECK(tc.predicted_meet == 0);
  CHECK(tc.radical_checked);
  CHECK(tc.dim_j == 0);
  CHECK(tc.dim_i_cap_j == 0);

  auto s3 = group_by_spec("S3");
  TrivialIdealDims ts = trivial_ideal_dims(s3);
  CHECK(ts.b == 4);
  CHECK(ts.c == 3);
  CHECK(ts.dim_i == 16);
  CHECK(ts.dim_ic == 9);
  CHECK(ts.predicted_meet == 7);
  REQUIRE(ts.radical_checked);
  CHECK(ts.dim_i_cap_j == 7);
  CHECK(ts.dim_j == 22 - simple_square_sum(s3));

  auto v4 = group_by_spec("V4");
  TrivialIdealDims tv = trivial_ideal_dims(v4);
  CHECK(tv.b == 5);
  CHECK(tv.c == 4);
  CHECK(tv.dim_i == 25);
  CHECK(tv.dim_ic == 16);
  CHECK(tv.predicted_meet == 9);
  REQUIRE(tv.radical_checked);
  CHECK(tv.dim_i_cap_j == 9);
  CHECK(tv.dim_j == 67 - simple_square_sum(v4));

  // The dimension bookkeeping works without the radical pass too.
  auto d8 = group_by_spec("D8");
  TrivialIdealDims td = trivial_ideal_dims(d8, false);
  CHECK(td.b == 8);
  CHECK(td.c == 5);
  CHECK(td.dim_i == 64);
  CHECK(td.dim_ic == 25);
  CHECK(td.predicted_meet == 39);
  CHECK(!td.radical_checked);
}
