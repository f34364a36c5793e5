#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bisetlab/catalog.hpp"
#include "bisetlab/chartab.hpp"

using namespace bisetlab;

namespace {

// Index of the unique class whose elements have the given order and whose
// class has the given size; fails the test if the pair is ambiguous.
size_t class_where(Group const &g, unsigned elt_order, size_t cls_size)
{
  auto const &cls = g.classes();
  size_t found = SIZE_MAX;
  for (size_t i = 0; i < cls.size(); ++i)
    if (g.order_of(cls[i][0]) == elt_order && cls[i].size() == cls_size) {
      REQUIRE(found == SIZE_MAX);
      found = i;
    }
  REQUIRE(found != SIZE_MAX);
  return found;
}

std::vector<size_t> classes_of_element_order(Group const &g, unsigned k)
{
  std::vector<size_t> out;
  for (size_t i = 0; i < g.classes().size(); ++i)
    if (g.order_of(g.classes()[i][0]) == k)
      out.push_back(i);
  return out;
}

std::multiset<std::string> label_multiset(CharTable const &t)
{
  return {t.labels.begin(), t.labels.end()};
}

// Exact column orthogonality: sum over irreducibles of chi(c) * conj(chi(c))
// equals the centralizer order of the class.
void check_columns(Group const &g)
{
  auto const &t = char_table(g);
  for (size_t c = 0; c < g.classes().size(); ++c) {
    Cyclotomic acc;
    for (size_t i = 0; i < t.irr_count(); ++i)
      acc += t.value(i, (uint16_t)c) * t.value(i, (uint16_t)c).conj();
    CHECK(acc == Cyclotomic((long)(g.size() / g.classes()[c].size())));
  }
  for (size_t i = 0; i < t.irr_count(); ++i) {
    CHECK(t.value(i, 0) == Cyclotomic((long)t.degrees[i]));
    CHECK(t.degrees[i] >= 1);
  }
  CHECK(t.labels.size() == t.irr_count());
  CHECK(t.irr_count() == g.classes().size());
}

// Multiset of rows, each row itself value-sorted, for comparing tables of
// groups whose class orders need not line up.
std::multiset<std::vector<std::string>> sorted_rows(CharTable const &t)
{
  std::multiset<std::vector<std::string>> out;
  for (auto const &row : t.chars) {
    std::vector<Cyclotomic> vals = row;
    std::sort(vals.begin(), vals.end(), [](Cyclotomic const &a, Cyclotomic const &b) {
      return Cyclotomic::cmp(a, b) < 0;
    });
    std::vector<std::string> strs;
    for (auto const &v : vals)
      strs.push_back(v.str());
    out.insert(std::move(strs));
  }
  return out;
}

} // namespace

TEST_CASE("character table of S3")
{
  auto g = group_by_spec("S3");
  auto const &t = char_table(*g);
  REQUIRE(t.irr_count() == 3);
  CHECK(t.exponent == 6);
  CHECK(t.degrees == std::vector<unsigned>{1, 1, 2});
  CHECK(t.labels == std::vector<std::string>{"k", "eps", "2"});

  size_t swap2 = class_where(*g, 2, 3);
  size_t rot3 = class_where(*g, 3, 2);
  CHECK(t.value(0, (uint16_t)swap2) == Cyclotomic(1));
  CHECK(t.value(1, (uint16_t)swap2) == Cyclotomic(-1));
  CHECK(t.value(2, (uint16_t)swap2) == Cyclotomic(0));
  CHECK(t.value(0, (uint16_t)rot3) == Cyclotomic(1));
  CHECK(t.value(1, (uint16_t)rot3) == Cyclotomic(1));
  CHECK(t.value(2, (uint16_t)rot3) == Cyclotomic(-1));

  CHECK(t.index_of_label("k") == 0);
  CHECK(t.index_of_label("k+") == 0);
  CHECK(t.index_of_label("k-") == 1);
  CHECK(t.index_of_label("eps") == 1);
  CHECK(t.index_of_label("2") == 2);
  CHECK_THROWS_AS((void)t.index_of_label("5"), Error);

  // The table is cached per group instance.
  CHECK(&char_table(*g) == &t);
  check_columns(*g);
}

TEST_CASE("character tables of abelian groups")
{
  auto c12 = group_by_spec("C12");
  auto const &t = char_table(*c12);
  REQUIRE(t.irr_count() == 12);
  CHECK(t.exponent == 12);
  for (unsigned d : t.degrees)
    CHECK(d == 1);
  CHECK(std::count(t.labels.begin(), t.labels.end(), "eps") == 1);
  CHECK(std::count(t.labels.begin(), t.labels.end(), "l10") == 1);
  // Columns away from the identity sum to zero.
  for (size_t c = 1; c < 12; ++c) {
    Cyclotomic acc;
    for (size_t i = 0; i < 12; ++i)
      acc += t.value(i, (uint16_t)c);
    CHECK(acc.is_zero());
  }
  check_columns(*c12);

  auto v4 = group_by_spec("V4");
  auto const &tv = char_table(*v4);
  CHECK(label_multiset(tv) ==
        std::multiset<std::string>{"k", "l1", "l2", "l3"});
  for (auto const &row : tv.chars)
    for (auto const &v : row)
      CHECK((v == Cyclotomic(1) || v == Cyclotomic(-1)));
  check_columns(*v4);

  auto c6 = group_by_spec("C6");
  auto const &t6 = char_table(*c6);
  CHECK(label_multiset(t6) ==
        std::multiset<std::string>{"k", "eps", "l1", "l2", "l3", "l4"});
  auto sixes = classes_of_element_order(*c6, 6);
  REQUIRE(sixes.size() == 2);
  for (size_t c : sixes)
    CHECK(t6.value(t6.index_of_label("eps"), (uint16_t)c) == Cyclotomic(-1));
  check_columns(*c6);
}

TEST_CASE("character tables of D8 and Q8 coincide")
{
  auto d8 = group_by_spec("D8");
  auto q8 = group_by_spec("Q8");
  auto const &td = char_table(*d8);
  auto const &tq = char_table(*q8);
  for (auto const *t : {&td, &tq}) {
    CHECK(t->degrees == std::vector<unsigned>{1, 1, 1, 1, 2});
    CHECK(t->labels == std::vector<std::string>{"k", "l1", "l2", "l3", "2"});
  }
  // The one nonlinear character vanishes off the center and takes -2 on the
  // central involution.
  for (auto const &pair : {std::make_pair(d8, &td), std::make_pair(q8, &tq)}) {
    auto const &g = *pair.first;
    auto const &t = *pair.second;
    size_t zcls = class_where(g, 2, 1);
    size_t two = t.index_of_label("2");
    CHECK(t.value(two, (uint16_t)zcls) == Cyclotomic(-2));
    for (size_t c = 0; c < g.classes().size(); ++c)
      if (c != 0 && c != zcls)
        CHECK(t.value(two, (uint16_t)c).is_zero());
  }
  CHECK(sorted_rows(td) == sorted_rows(tq));
  check_columns(*d8);
  check_columns(*q8);
}

TEST_CASE("character table of S4")
{
  auto g = group_by_spec("S4");
  auto const &t = char_table(*g);
  CHECK(t.degrees == std::vector<unsigned>{1, 1, 2, 3, 3});
  CHECK(t.labels == std::vector<std::string>{"k", "eps", "2", "3a", "3b"});

  size_t swap2 = class_where(*g, 2, 6);
  size_t dbl = class_where(*g, 2, 3);
  size_t rot3 = class_where(*g, 3, 8);
  size_t rot4 = class_where(*g, 4, 6);
  size_t eps = t.index_of_label("eps");
  size_t two = t.index_of_label("2");
  size_t ta = t.index_of_label("3a");
  size_t tb = t.index_of_label("3b");

  CHECK(t.value(eps, (uint16_t)swap2) == Cyclotomic(-1));
  CHECK(t.value(eps, (uint16_t)dbl) == Cyclotomic(1));
  CHECK(t.value(two, (uint16_t)swap2).is_zero());
  CHECK(t.value(two, (uint16_t)rot4).is_zero());
  CHECK(t.value(two, (uint16_t)dbl) == Cyclotomic(2));
  CHECK(t.value(two, (uint16_t)rot3) == Cyclotomic(-1));
  CHECK(t.value(ta, (uint16_t)dbl) == Cyclotomic(-1));
  CHECK(t.value(tb, (uint16_t)dbl) == Cyclotomic(-1));
  CHECK(t.value(ta, (uint16_t)rot3).is_zero());
  CHECK(t.value(tb, (uint16_t)rot3).is_zero());
  // The two degree-3 characters differ by the sign twist.
  for (size_t c : {swap2, rot4}) {
    std::multiset<std::string> got{t.value(ta, (uint16_t)c).str(),
                                   t.value(tb, (uint16_t)c).str()};
    CHECK(got == std::multiset<std::string>{"-1", "1"});
  }
  check_columns(*g);
}

TEST_CASE("character table of A4")
{
  auto g = group_by_spec("A4");
  auto const &t = char_table(*g);
  CHECK(t.degrees == std::vector<unsigned>{1, 1, 1, 3});
  CHECK(t.labels == std::vector<std::string>{"k", "l1", "l2", "3"});
  size_t invol = class_where(*g, 2, 3);
  size_t l1 = t.index_of_label("l1");
  size_t l2 = t.index_of_label("l2");
  CHECK(t.value(t.index_of_label("3"), (uint16_t)invol) == Cyclotomic(-1));
  for (size_t c : classes_of_element_order(*g, 3)) {
    // The two nontrivial linear characters are cube roots of unity and
    // pointwise inverse to each other there.
    CHECK(t.value(l1, (uint16_t)c) * t.value(l2, (uint16_t)c) == Cyclotomic(1));
    CHECK(!t.value(l1, (uint16_t)c).is_rational());
  }
  check_columns(*g);
}

TEST_CASE("character table of D10 has the golden pair")
{
  auto g = group_by_spec("D10");
  auto const &t = char_table(*g);
  CHECK(t.degrees == std::vector<unsigned>{1, 1, 2, 2});
  CHECK(t.labels == std::vector<std::string>{"k", "eps", "2a", "2b"});
  size_t refl = class_where(*g, 2, 5);
  CHECK(t.value(t.index_of_label("eps"), (uint16_t)refl) == Cyclotomic(-1));
  size_t a = t.index_of_label("2a");
  size_t b = t.index_of_label("2b");
  auto fives = classes_of_element_order(*g, 5);
  REQUIRE(fives.size() == 2);
  for (size_t c : fives) {
    CHECK(t.value(a, (uint16_t)c).is_zero() == false);
    CHECK(t.value(a, (uint16_t)c) + t.value(b, (uint16_t)c) == Cyclotomic(-1));
    CHECK(t.value(a, (uint16_t)c) * t.value(b, (uint16_t)c) == Cyclotomic(-1));
    CHECK(t.value(a, (uint16_t)refl).is_zero());
    CHECK(t.value(b, (uint16_t)refl).is_zero());
  }
  CHECK(t.value(a, (uint16_t)fives[0]) == t.value(b, (uint16_t)fives[1]));
  CHECK(t.value(a, (uint16_t)fives[1]) == t.value(b, (uint16_t)fives[0]));
  check_columns(*g);
}

TEST_CASE("character table of A5")
{
  auto g = group_by_spec("A5");
  auto const &t = char_table(*g);
  CHECK(t.exponent == 30);
  CHECK(t.degrees == std::vector<unsigned>{1, 3, 3, 4, 5});
  CHECK(t.labels == std::vector<std::string>{"k", "3a", "3b", "4", "5"});

  size_t invol = class_where(*g, 2, 15);
  size_t rot3 = class_where(*g, 3, 20);
  size_t ta = t.index_of_label("3a");
  size_t tb = t.index_of_label("3b");
  size_t four = t.index_of_label("4");
  size_t five = t.index_of_label("5");
  CHECK(t.value(ta, (uint16_t)invol) == Cyclotomic(-1));
  CHECK(t.value(tb, (uint16_t)invol) == Cyclotomic(-1));
  CHECK(t.value(four, (uint16_t)invol).is_zero());
  CHECK(t.value(five, (uint16_t)invol) == Cyclotomic(1));
  CHECK(t.value(ta, (uint16_t)rot3).is_zero());
  CHECK(t.value(four, (uint16_t)rot3) == Cyclotomic(1));
  CHECK(t.value(five, (uint16_t)rot3) == Cyclotomic(-1));

  auto fives = classes_of_element_order(*g, 5);
  REQUIRE(fives.size() == 2);
  for (size_t c : fives) {
    CHECK(t.value(four, (uint16_t)c) == Cyclotomic(-1));
    CHECK(t.value(five, (uint16_t)c).is_zero());
    // (1 + sqrt 5)/2 and (1 - sqrt 5)/2: sum 1, product -1.
    CHECK(t.value(ta, (uint16_t)c) + t.value(tb, (uint16_t)c) == Cyclotomic(1));
    CHECK(t.value(ta, (uint16_t)c) * t.value(tb, (uint16_t)c) == Cyclotomic(-1));
  }
  CHECK(t.value(ta, (uint16_t)fives[0]) == t.value(tb, (uint16_t)fives[1]));
  check_columns(*g);
}

TEST_CASE("character table of SL(2,3)")
{
  auto g = group_by_spec("SL(2,3)");
  auto const &t = char_table(*g);
  CHECK(t.degrees == std::vector<unsigned>{1, 1, 1, 2, 2, 2, 3});
  CHECK(label_multiset(t) == std::multiset<std::string>{"k", "l1", "l2", "2a",
                                                        "2b", "2c", "3"});
  size_t zcls = class_where(*g, 2, 1);
  for (char suffix : {'a', 'b', 'c'}) {
    size_t i = t.index_of_label(std::string("2") + suffix);
    CHECK(t.value(i, (uint16_t)zcls) == Cyclotomic(-2));
  }
  CHECK(t.value(t.index_of_label("3"), (uint16_t)zcls) == Cyclotomic(3));
  check_columns(*g);
}

TEST_CASE("character table guard")
{
  auto big = group_by_spec("C256");
  CHECK_THROWS_AS((void)char_table(*big), GuardError);
}
