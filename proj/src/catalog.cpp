#include "bisetlab/catalog.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <mutex>

namespace bisetlab {

namespace {

// Arithmetic in F_q for q prime or one of 4, 8, 9, 16.  Elements are encoded
// as integers whose base-p digits are the coefficients in the polynomial
// basis.
struct FField {
  unsigned p = 0, k = 1, q = 0;
  std::vector<unsigned> irred; // monic modulus, degree k, coeffs low to high

  static bool prime(unsigned n)
  {
    if (n < 2)
      return false;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0)
        return false;
    return true;
  }

  explicit FField(unsigned q_) : q(q_)
  {
    if (prime(q)) {
      p = q;
      return;
    }
    switch (q) {
    case 4:  p = 2; k = 2; irred = {1, 1, 1};       break; // x^2+x+1
    case 8:  p = 2; k = 3; irred = {1, 1, 0, 1};    break; // x^3+x+1
    case 9:  p = 3; k = 2; irred = {1, 0, 1};       break; // x^2+1
    case 16: p = 2; k = 4; irred = {1, 1, 0, 0, 1}; break; // x^4+x+1
    default:
      throw Error("unsupported field size " + std::to_string(q_));
    }
  }

  std::vector<unsigned> digits(unsigned v, size_t len) const
  {
    std::vector<unsigned> d(len, 0);
    for (size_t i = 0; i < len && v; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  }

  unsigned pack(std::vector<unsigned> const &d) const
  {
    unsigned v = 0;
    for (size_t i = d.size(); i-- > 0;)
      v = v * p + d[i] % p;
    return v;
  }

  unsigned add(unsigned a, unsigned b) const
  {
    if (k == 1)
      return (a + b) % p;
    auto da = digits(a, k), db = digits(b, k);
    for (size_t i = 0; i < k; ++i)
      da[i] = (da[i] + db[i]) % p;
    return pack(da);
  }

  unsigned neg(unsigned a) const
  {
    if (k == 1)
      return (p - a % p) % p;
    auto d = digits(a, k);
    for (auto &v : d)
      v = (p - v) % p;
    return pack(d);
  }

  unsigned mul(unsigned a, unsigned b) const
  {
    if (k == 1)
      return (a * b) % p;
    auto da = digits(a, k), db = digits(b, k);
    std::vector<unsigned> prod(2 * k - 1, 0);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (size_t i = prod.size(); i-- > k;)
      if (prod[i]) {
        unsigned c = prod[i];
        for (size_t j = 0; j <= k; ++j) {
          size_t pos = i - k + j;
          prod[pos] = (prod[pos] + (p - c % p) * irred[j]) % p;
        }
      }
    prod.resize(k);
    return pack(prod);
  }

  // Value whose digit vector is the basis monomial x^i.
  unsigned basis(unsigned i) const
  {
    unsigned v = 1;
    for (unsigned j = 0; j < i; ++j)
      v *= p;
    return v;
  }
};

using Mat2 = std::array<unsigned, 4>; // row-major [[a,b],[c,d]]

Perm sl2_perm(FField const &f, Mat2 const &m)
{
  unsigned q = f.q;
  std::vector<uint16_t> img(q * q - 1);
  for (unsigned x = 0; x < q; ++x)
    for (unsigned y = 0; y < q; ++y) {
      if (x == 0 && y == 0)
        continue;
      unsigned nx = f.add(f.mul(m[0], x), f.mul(m[1], y));
      unsigned ny = f.add(f.mul(m[2], x), f.mul(m[3], y));
      img[x * q + y - 1] = (uint16_t)(nx * q + ny - 1);
    }
  return Perm(std::move(img));
}

// Points of the projective line: a in F_q at index a, infinity at index q.
Perm psl2_perm(FField const &f, Mat2 const &m)
{
  unsigned q = f.q;
  std::vector<uint16_t> img(q + 1);
  auto point = [&](unsigned x, unsigned y) -> uint16_t {
    if (y == 0)
      return (uint16_t)q;
    // x / y via brute-force inverse; fields here are tiny.
    for (unsigned z = 0; z < q; ++z)
      if (f.mul(z, y) == x)
        return (uint16_t)z;
    throw Error("field division failed");
  };
  for (unsigned a = 0; a < q; ++a)
    img[a] = point(f.add(f.mul(m[0], a), m[1]), f.add(f.mul(m[2], a), m[3]));
  img[q] = point(m[0], m[2]);
  return Perm(std::move(img));
}

std::vector<Perm> sl2_gens(FField const &f, bool projective)
{
  std::vector<Perm> gens;
  for (unsigned i = 0; i < f.k; ++i) {
    unsigned b = f.basis(i);
    Mat2 upper{1, b, 0, 1};
    Mat2 lower{1, 0, b, 1};
    gens.push_back(projective ? psl2_perm(f, upper) : sl2_perm(f, upper));
    gens.push_back(projective ? psl2_perm(f, lower) : sl2_perm(f, lower));
  }
  return gens;
}

std::vector<Perm> gl32_gens()
{
  // All elementary transvections I + e_ij over F_2, acting on the 7 nonzero
  // vectors (3-bit values 1..7 at point value-1).
  std::vector<Perm> gens;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      if (i == j)
        continue;
      std::vector<uint16_t> img(7);
      for (unsigned v = 1; v <= 7; ++v) {
        unsigned w = v;
        if (v >> j & 1)
          w ^= 1u << i;
        img[v - 1] = (uint16_t)(w - 1);
      }
      gens.push_back(Perm(std::move(img)));
    }
  return gens;
}

unsigned parse_number(std::string const &s, size_t &pos)
{
  size_t start = pos;
  unsigned v = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    v = v * 10 + (unsigned)(s[pos] - '0');
    ++pos;
  }
  if (pos == start)
    throw Error("expected a number in group spec at position " +
                std::to_string(start) + " of '" + s + "'");
  return v;
}

std::vector<Perm> parse_perm_gens(std::string const &body)
{
  // Comma-separated generators, each a product of 1-based cycles with
  // space-separated points.
  std::vector<std::vector<std::vector<uint16_t>>> gen_cycles;
  uint16_t degree = 1;
  size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < body.size() && body[pos] == ' ')
      ++pos;
  };
  skip_spaces();
  while (pos < body.size()) {
    std::vector<std::vector<uint16_t>> cycles;
    while (pos < body.size() && body[pos] == '(') {
      ++pos;
      std::vector<uint16_t> cyc;
      skip_spaces();
      while (pos < body.size() && body[pos] != ')') {
        unsigned v = parse_number(body, pos);
        if (v == 0)
          throw Error("cycle points are 1-based in '" + body + "'");
        cyc.push_back((uint16_t)(v - 1));
        degree = std::max<uint16_t>(degree, (uint16_t)v);
        skip_spaces();
      }
      if (pos >= body.size())
        throw Error("unterminated cycle in '" + body + "'");
      ++pos; // ')'
      skip_spaces();
      if (!cyc.empty())
        cycles.push_back(std::move(cyc));
    }
    gen_cycles.push_back(std::move(cycles));
    if (pos < body.size()) {
      if (body[pos] != ',')
        throw Error("expected ',' between generators in '" + body + "'");
      ++pos;
      skip_spaces();
    }
  }
  std::vector<Perm> gens;
  for (auto const &cycles : gen_cycles)
    gens.push_back(Perm::from_cycles(cycles, degree));
  if (gens.empty())
    gens.push_back(Perm(degree));
  return gens;
}

unsigned factorial(unsigned n)
{
  unsigned v = 1;
  for (unsigned i = 2; i <= n; ++i)
    v *= i;
  return v;
}

GroupPtr build_atom(std::string const &spec)
{
  if (spec.rfind("perm:", 0) == 0)
    return Group::make(parse_perm_gens(spec.substr(5)), spec);

  if (spec == "V4")
    return Group::make({Perm::from_cycles({{0, 1}}, 4),
                        Perm::from_cycles({{2, 3}}, 4)},
                       spec, 4);

  if (spec == "GL(3,2)") {
    if (168 > config().max_group_order)
      throw GuardError("group '" + spec + "' of order 168 exceeds order bound " +
                       std::to_string(config().max_group_order));
    auto g = Group::make(gl32_gens(), spec, 168);
    assert(g->size() == 168);
    return g;
  }

  for (std::string fam : {"PSL", "SL"})
    if (spec.rfind(fam + "(2,", 0) == 0 && spec.back() == ')') {
      size_t pos = fam.size() + 3;
      unsigned q = parse_number(spec, pos);
      if (pos + 1 != spec.size())
        throw Error("malformed group spec '" + spec + "'");
      FField f(q);
      bool projective = fam == "PSL";
      unsigned order = q * (q * q - 1);
      if (projective && f.p != 2)
        order /= 2;
      if (order > config().max_group_order)
        throw GuardError("group '" + spec + "' of order " +
                         std::to_string(order) + " exceeds order bound " +
                         std::to_string(config().max_group_order));
      auto g = Group::make(sl2_gens(f, projective), spec, order);
      if (g->size() != order)
        throw Error("construction of '" + spec + "' produced order " +
                    std::to_string(g->size()) + ", expected " +
                    std::to_string(order));
      return g;
    }

  char fam = spec[0];
  size_t pos = 1;
  unsigned n = parse_number(spec, pos);
  if (pos != spec.size())
    throw Error("malformed group spec '" + spec + "'");

  auto guard = [&](unsigned long order) {
    if (order > config().max_group_order)
      throw GuardError("group '" + spec + "' of order " + std::to_string(order) +
                       " exceeds order bound " +
                       std::to_string(config().max_group_order));
  };
  auto check = [&](GroupPtr g, unsigned order) {
    if (g->size() != order)
      throw Error("construction of '" + spec + "' produced order " +
                  std::to_string(g->size()) + ", expected " +
                  std::to_string(order));
    return g;
  };

  switch (fam) {
  case 'C': {
    if (n == 0)
      throw Error("C0 is not a group");
    guard(n);
    std::vector<uint16_t> cyc(n);
    for (unsigned i = 0; i < n; ++i)
      cyc[i] = (uint16_t)i;
    return check(Group::make({Perm::from_cycles({cyc}, (uint16_t)n), Perm((uint16_t)n)},
                             spec, n),
                 n);
  }
  case 'D': {
    if (n < 4 || n % 2 != 0)
      throw Error("D<n> needs even n >= 4 (n is the group order)");
    guard(n);
    if (n == 4)
      return check(Group::make({Perm::from_cycles({{0, 1}}, 4),
                                Perm::from_cycles({{2, 3}}, 4)},
                               spec, 4),
                   4);
    uint16_t m = (uint16_t)(n / 2);
    std::vector<uint16_t> rot(m), flip(m);
    for (uint16_t i = 0; i < m; ++i) {
      rot[i] = (uint16_t)((i + 1) % m);
      flip[i] = (uint16_t)((m - i) % m);
    }
    return check(Group::make({Perm(std::move(rot)), Perm(std::move(flip))}, spec, n), n);
  }
  case 'Q': {
    if (n < 8 || (n & (n - 1)) != 0)
      throw Error("Q<n> needs n a power of 2, n >= 8");
    guard(n);
    unsigned m = n / 2, h = n / 4;
    // Elements a^i b^j with a of order m, b^2 = a^h, b a b^-1 = a^-1, in the
    // left regular representation at index i + j*m.
    auto idx = [&](unsigned i, unsigned j) { return (uint16_t)(i % m + j * m); };
    std::vector<uint16_t> pa(n), pb(n);
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < 2; ++j) {
        pa[idx(i, j)] = idx(i + 1, j);
        pb[idx(i, j)] = j == 0 ? idx(m - i, 1) : idx(m - i + h, 0);
      }
    return check(Group::make({Perm(std::move(pa)), Perm(std::move(pb))}, spec, n), n);
  }
  case 'S': {
    if (n == 0 || factorial(n) > config().max_group_order)
      throw GuardError("group '" + spec + "' exceeds order bound " +
                       std::to_string(config().max_group_order));
    std::vector<uint16_t> cyc(n);
    for (unsigned i = 0; i < n; ++i)
      cyc[i] = (uint16_t)i;
    std::vector<Perm> gens{Perm((uint16_t)n)};
    if (n >= 2)
      gens.push_back(Perm::from_cycles({{0, 1}}, (uint16_t)n));
    if (n >= 3)
      gens.push_back(Perm::from_cycles({cyc}, (uint16_t)n));
    return check(Group::make(std::move(gens), spec, factorial(n)), factorial(n));
  }
  case 'A': {
    if (n < 3 || factorial(n) / 2 > config().max_group_order)
      throw GuardError("group '" + spec + "' exceeds order bound " +
                       std::to_string(config().max_group_order));
    std::vector<Perm> gens{Perm::from_cycles({{0, 1, 2}}, (uint16_t)n)};
    if (n >= 4) {
      std::vector<uint16_t> cyc;
      for (unsigned i = n % 2 == 0 ? 1 : 0; i < n; ++i)
        cyc.push_back((uint16_t)i);
      gens.push_back(Perm::from_cycles({cyc}, (uint16_t)n));
    }
    return check(Group::make(std::move(gens), spec, factorial(n) / 2),
                 factorial(n) / 2);
  }
  default:
    throw Error("unrecognized group spec '" + spec + "'");
  }
}

} // namespace

GroupPtr direct_product(Group const &a, Group const &b, std::string const &name,
                        unsigned max_order)
{
  uint16_t da = a.degree(), db = b.degree();
  uint16_t deg = (uint16_t)(da + db);
  std::vector<Perm> gens{Perm(deg)};
  for (Perm const &g : a.gens()) {
    std::vector<uint16_t> img(deg);
    for (uint16_t i = 0; i < da; ++i)
      img[i] = g[i];
    for (uint16_t i = 0; i < db; ++i)
      img[da + i] = (uint16_t)(da + i);
    gens.push_back(Perm(std::move(img)));
  }
  for (Perm const &g : b.gens()) {
    std::vector<uint16_t> img(deg);
    for (uint16_t i = 0; i < da; ++i)
      img[i] = i;
    for (uint16_t i = 0; i < db; ++i)
      img[da + i] = (uint16_t)(da + g[i]);
    gens.push_back(Perm(std::move(img)));
  }
  if (max_order == 0)
    max_order = (unsigned)(a.size() * b.size());
  auto g = Group::make(std::move(gens), name, max_order);
  assert(g->size() == a.size() * b.size());
  return g;
}

GroupPtr group_by_spec(std::string const &spec)
{
  // Whitespace is insignificant except inside the raw perm form, where it
  // separates cycle points.
  std::string s = spec;
  size_t first = s.find_first_not_of(' ');
  if (first == std::string::npos)
    throw Error("empty group spec");
  s = s.substr(first, s.find_last_not_of(' ') - first + 1);
  if (s.rfind("perm:", 0) != 0) {
    std::string stripped;
    for (char c : s)
      if (c != ' ')
        stripped += c;
    s = std::move(stripped);
  }
  if (s.empty())
    throw Error("empty group spec");

  static std::mutex mx;
  static std::map<std::string, GroupPtr> cache;
  {
    std::lock_guard<std::mutex> hold(mx);
    auto it = cache.find(s);
    if (it != cache.end())
      return it->second;
  }

  // Split into direct factors at top-level 'x' (outside parentheses); the
  // raw perm form cannot be a factor since its cycles would be ambiguous.
  std::vector<std::string> parts;
  if (s.rfind("perm:", 0) == 0) {
    parts.push_back(s);
  } else {
    size_t depth = 0, start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(')
        ++depth;
      else if (s[i] == ')')
        --depth;
      else if (s[i] == 'x' && depth == 0) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(s.substr(start));
  }

  GroupPtr g;
  if (parts.size() == 1) {
    g = build_atom(parts[0]);
  } else {
    unsigned long total = 1;
    std::vector<GroupPtr> factors;
    for (auto const &p : parts) {
      factors.push_back(group_by_spec(p));
      total *= factors.back()->size();
      if (total > config().max_group_order)
        throw GuardError("group '" + s + "' exceeds order bound " +
                         std::to_string(config().max_group_order));
    }
    g = factors[0];
    std::string name = parts[0];
    for (size_t i = 1; i < factors.size(); ++i) {
      name += "x" + parts[i];
      g = direct_product(*g, *factors[i], name);
    }
  }

  std::lock_guard<std::mutex> hold(mx);
  auto [it, fresh] = cache.emplace(std::move(s), std::move(g));
  (void)fresh;
  return it->second;
}

} // namespace bisetlab
