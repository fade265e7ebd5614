#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "assocarray/assoc.hpp"
#include "oracles.hpp"

using namespace assocarray;
using K = std::vector<Key>;
using S = std::vector<std::string>;
using D = std::vector<double>;

namespace {

// Music-file table: three files, three attributes each.
struct Music {
  K rows;
  K cols;
  S vals;
};

Music music() {
  Music m;
  const K files{"0294.mp3", "1829.mp3", "7802.mp3"};
  const K attrs{"artist", "duration", "genre"};
  const std::string table[3][3] = {{"Pink Floyd", "6:53", "rock"},
                                    {"Samuel Barber", "8:01", "classical"},
                                    {"Taylor Swift", "10:12", "pop"}};
  // Feed in a scrambled order so sorting is exercised.
  for (int i : {2, 0, 1}) {
    for (int j : {1, 2, 0}) {
      m.rows.push_back(files[i]);
      m.cols.push_back(attrs[j]);
      m.vals.push_back(table[i][j]);
    }
  }
  return m;
}

Assoc music_array() {
  const auto m = music();
  return Assoc::from_triples(m.rows, m.cols, std::span<const std::string>(m.vals));
}

Assoc num(const K& r, const K& c, const D& v) {
  return Assoc::from_triples(r, c, std::span<const double>(v));
}

Assoc str(const K& r, const K& c, const S& v) {
  return Assoc::from_triples(r, c, std::span<const std::string>(v));
}

void require_valid(const Assoc& a) {
  const auto problems = a.check_invariants();
  INFO((problems.empty() ? std::string() : problems.front()));
  REQUIRE(problems.empty());
}

}  // namespace

TEST_CASE("music fixture") {
  const Assoc a = music_array();
  require_valid(a);
  CHECK(a.row() == K{"0294.mp3", "1829.mp3", "7802.mp3"});
  CHECK(a.col() == K{"artist", "duration", "genre"});
  CHECK(a.val() == S{"10:12", "6:53", "8:01", "Pink Floyd", "Samuel Barber", "Taylor Swift", "classical",
                     "pop", "rock"});

  // Independent sort-and-point oracle.
  const auto m = music();
  const std::set<std::string> sorted(m.vals.begin(), m.vals.end());
  const std::vector<std::string> pool(sorted.begin(), sorted.end());
  for (std::size_t t = 0; t < m.vals.size(); ++t) {
    const auto i = std::find(a.row().begin(), a.row().end(), m.rows[t]) - a.row().begin();
    const auto j = std::find(a.col().begin(), a.col().end(), m.cols[t]) - a.col().begin();
    const auto k = std::find(pool.begin(), pool.end(), m.vals[t]) - pool.begin();
    CHECK(a.adj().at(i, j) == static_cast<double>(k + 1));
  }
  const D expected{4, 2, 9, 5, 3, 7, 6, 1, 8};
  CHECK(oracle::to_dense(a.adj()).v == expected);

  CHECK(std::get<std::string>(a.get(Key("1829.mp3"), Key("artist"))) == "Samuel Barber");

  const auto t = a.triples();
  REQUIRE(t.size() == 9);
  CHECK(t.rows[0] == Key("0294.mp3"));
  CHECK(t.cols[0] == Key("artist"));
  CHECK(std::get<1>(t.vals)[0] == "Pink Floyd");
  CHECK(Assoc::from_triples(t) == a);
}

TEST_CASE("from_adjacency") {
  const auto n = Assoc::from_adjacency(K{"r1", "r2"}, K{"c1"},
                                       SparseMatrix::from_parts(2, 1, Layout::csr, {0, 1, 2}, {0, 0}, {2, 3}));
  CHECK(std::get<double>(n.get(Key("r1"), Key("c1"))) == 2);
  CHECK(std::get<double>(n.get(Key("r2"), Key("c1"))) == 3);

  const Assoc a = music_array();
  const auto rebuilt = Assoc::from_adjacency(a.row(), a.col(), a.val(), a.adj());
  CHECK(rebuilt == a);

  const S listed_pool{"10:12", "6:53", "8:01", "Pink Floyd", "Samuel Barber", "Taylor Swift", "classical",
                      "pop", "rock"};
  oracle::Dense ptr(3, 3);
  ptr.v = {4, 2, 9, 5, 3, 7, 6, 1, 8};
  CHECK(Assoc::from_adjacency(a.row(), a.col(), listed_pool, oracle::from_dense(ptr)) == a);

  // Empty row dropped.
  oracle::Dense gap(3, 1);
  gap.v = {1, 0, 2};
  const auto g = Assoc::from_adjacency(K{"a", "b", "c"}, K{"x"}, oracle::from_dense(gap));
  CHECK(g.row() == K{"a", "c"});
  require_valid(g);

  CHECK_THROWS(Assoc::from_adjacency(K{"a"}, K{"x"}, S{"v"}, oracle::from_dense(ptr)));
  oracle::Dense bad(1, 1);
  bad.v = {2};
  CHECK_THROWS(Assoc::from_adjacency(K{"a"}, K{"x"}, S{"v"}, oracle::from_dense(bad)));
  bad.v = {0.5};
  CHECK_THROWS(Assoc::from_adjacency(K{"a"}, K{"x"}, S{"v"}, oracle::from_dense(bad)));
}

TEST_CASE("from_triples collisions and broadcasting") {
  const auto a = str(K{"r", "r"}, K{"c", "c"}, S{"b", "a"});
  CHECK(std::get<std::string>(a.get(Key("r"), Key("c"))) == "a");

  const auto s = Assoc::from_triples(K{"r", "r"}, K{"c", "c"}, std::span<const double>(D{2, 5}), ops::sum());
  CHECK(std::get<double>(s.get(Key("r"), Key("c"))) == 7);

  const auto cancel = Assoc::from_triples(K{"r", "r"}, K{"c", "c"}, std::span<const double>(D{2, -2}), ops::sum());
  CHECK(cancel.empty());
  CHECK(cancel.nrows() == 0);

  const auto b = num(K{"a", "b", "c"}, K{"x"}, D{1});
  CHECK(b.nnz() == 3);
  CHECK(b.col() == K{"x"});
  CHECK_THROWS_AS(num(K{"a", "b"}, K{"x", "y", "z"}, D{1}), std::invalid_argument);

  const std::vector<Value> mixed{Value(1.0), Value(std::string("a"))};
  CHECK_THROWS_AS(Assoc::from_triples(K{"a", "b"}, K{"x"}, std::span<const Value>(mixed)), std::invalid_argument);

  const auto empty_strings = str(K{"a"}, K{"x"}, S{""});
  CHECK(empty_strings.empty());
  CHECK(empty_strings.is_numeric());
}

TEST_CASE("empty array") {
  const Assoc e;
  CHECK(e.empty());
  CHECK(e.is_numeric());
  CHECK(e.adj().nrows() == 0);
  CHECK(e.adj().ncols() == 0);
  CHECK(e.triples().size() == 0);
  CHECK(e.logical() == e);
  CHECK(e.transpose() == e);
  require_valid(e);
  const Assoc a = music_array();
  CHECK(add(a, e) == a);
  CHECK(add(e, a) == a);
  CHECK(multiply_elementwise(a, e).empty());
  CHECK(array_product(a, e).empty());
  CHECK(elementwise_max(a, e) == a);
  CHECK(combine(a, e, ops::concat()) == a);
}

TEST_CASE("get with selectors") {
  const Assoc a = music_array();
  CHECK(a.get(Selector::all(), Selector::all()) == a);

  const auto r = a.get(Selector::parse_range("0294.mp3,:,1829.mp3,"), Selector::all());
  CHECK(r.row() == K{"0294.mp3", "1829.mp3"});
  require_valid(r);

  CHECK(a.get(Selector::range("1", "2"), Selector::all()).row() == K{"1829.mp3"});
  CHECK(a.get(Selector::key("nope"), Selector::all()).empty());
  CHECK(a.get(Selector::positions({0, 2}), Selector::slice(0, 2)).nnz() == 4);
  CHECK(a.get(Selector::slice(-1, 3), Selector::all()).row() == K{"7802.mp3"});
  CHECK_THROWS_AS(a.get(Selector::positions({3}), Selector::all()), std::out_of_range);
  CHECK_THROWS(Selector::parse_range("a,:,b"));
  CHECK_THROWS(Selector::parse_range("a,b,"));
  CHECK(Selector::parse_range("a;:;b;", ';').kind() == Selector::Kind::range);

  // Integers are positions, numeric keys go through key selectors.
  const auto n = num(K{10, 1, 2}, K{"x"}, D{5, 6, 7});
  CHECK(n.get(Selector::positions({1}), Selector::all()).row() == K{2});
  CHECK(n.get(Selector::key(1), Selector::all()).row() == K{1});
  CHECK(n.get(Selector::keys({10, 2}), Selector::all()).row() == K{2, 10});

  // String values survive extraction, pool compacted.
  const auto sub = a.get(Selector::all(), Selector::key("genre"));
  CHECK(sub.val() == S{"classical", "pop", "rock"});
  require_valid(sub);
}

TEST_CASE("set") {
  const auto one = Assoc().set("r", "c", Value(5.0));
  CHECK(one.nnz() == 1);
  CHECK(std::get<double>(one.get(Key("r"), Key("c"))) == 5);

  const Assoc a = music_array();
  const auto b = a.set("1829.mp3", "genre", Value(std::string("opera")));
  CHECK(b.nnz() == a.nnz());
  CHECK(std::get<std::string>(b.get(Key("1829.mp3"), Key("genre"))) == "opera");
  CHECK(std::find(b.val().begin(), b.val().end(), "classical") == b.val().end());
  CHECK(std::get<std::string>(a.get(Key("1829.mp3"), Key("genre"))) == "classical");
  require_valid(b);

  const auto deleted = one.set("r", "c", Value(0.0));
  CHECK(deleted.empty());
  CHECK_THROWS_AS(a.set("x", "y", Value(1.0)), std::invalid_argument);
}

TEST_CASE("logical, transpose, condense") {
  const Assoc a = music_array();
  const auto l = a.logical();
  CHECK(l.is_numeric());
  CHECK(l.nnz() == 9);
  CHECK(l.row() == a.row());
  for (double v : l.adj().values()) CHECK(v == 1.0);
  CHECK(l.logical() == l);

  const auto t = a.transpose();
  CHECK(t.row() == K{"artist", "duration", "genre"});
  CHECK(t.nnz() == a.nnz());
  CHECK(t.transpose() == a);
  CHECK(std::get<std::string>(t.get(Key("artist"), Key("1829.mp3"))) == "Samuel Barber");

  oracle::Dense d(3, 3);
  d.v = {1, 0, 2, 0, 0, 0, 3, 0, 4};
  const auto c = condense({K{"a", "b", "c"}, K{"x", "y", "z"}, std::nullopt, oracle::from_dense(d, Layout::csr)});
  CHECK(c.row() == K{"a", "c"});
  CHECK(c.col() == K{"x", "z"});
  CHECK(condense({c.row(), c.col(), std::nullopt, c.adj()}) == c);
  CHECK(condense({K{"a"}, K{"b"}, std::nullopt, SparseMatrix(1, 1)}).empty());
}

TEST_CASE("add") {
  const auto a = num(K{"a", "b"}, K{"x", "y"}, D{1, 2});
  CHECK(add(a, num(K{"a", "b"}, K{"x", "y"}, D{-1, -2})).empty());
  const auto b = num(K{"b", "c"}, K{"y", "z"}, D{3, 4});
  const auto s = a + b;
  CHECK(std::get<double>(s.get(Key("b"), Key("y"))) == 5);
  CHECK(s.nnz() == 3);
  require_valid(s);

  const auto x = str(K{"r", "q"}, K{"c", "c"}, S{"x", "p"});
  const auto y = str(K{"r", "s"}, K{"c", "c"}, S{"y", "t"});
  const auto xy = x + y;
  CHECK(std::get<std::string>(xy.get(Key("r"), Key("c"))) == "xy");
  CHECK(std::get<std::string>(xy.get(Key("q"), Key("c"))) == "p");
  CHECK(std::get<std::string>(xy.get(Key("s"), Key("c"))) == "t");
  CHECK(std::get<std::string>((y + x).get(Key("r"), Key("c"))) == "yx");
  require_valid(xy);

  CHECK_THROWS_AS(add(a, x), std::invalid_argument);
}

TEST_CASE("multiply_elementwise") {
  const auto a = num(K{"a", "b", "c"}, K{"x", "y", "z"}, D{2, 3, 4});
  CHECK(multiply_elementwise(a, a.logical()) == a);
  CHECK(multiply_elementwise(a, a).adj().values() == D{4, 9, 16});

  const Assoc m = music_array();
  const auto mask = num(K{"0294.mp3", "7802.mp3", "zzz"}, K{"genre", "artist", "genre"}, D{1, 7, 1});
  const auto masked = m * mask;
  CHECK(masked.is_string());
  CHECK(masked.nnz() == 2);
  CHECK(std::get<std::string>(masked.get(Key("0294.mp3"), Key("genre"))) == "rock");
  CHECK(std::get<std::string>(masked.get(Key("7802.mp3"), Key("artist"))) == "Taylor Swift");
  require_valid(masked);

  const auto reverse = mask * m;
  CHECK(reverse.is_numeric());
  CHECK(std::get<double>(reverse.get(Key("7802.mp3"), Key("artist"))) == 7);

  const auto p = str(K{"r"}, K{"c"}, S{"pop"});
  const auto q = str(K{"r"}, K{"c"}, S{"classical"});
  CHECK(std::get<std::string>((p * q).get(Key("r"), Key("c"))) == "classical");
}

TEST_CASE("array_product") {
  // Edge-incidence array over a toy graph: e1 = a-b, e2 = b-c, e3 = a-c.
  const auto e = num(K{"e1", "e1", "e2", "e2", "e3", "e3"}, K{"a", "b", "b", "c", "a", "c"}, D{1});
  const auto co = array_product(e.transpose(), e);
  CHECK(co.row() == K{"a", "b", "c"});
  CHECK(co.col() == K{"a", "b", "c"});
  const D expected{2, 1, 1, 1, 2, 1, 1, 1, 2};
  CHECK(oracle::to_dense(co.adj()).v == expected);

  const auto a = num(K{"r"}, K{"k1"}, D{2});
  const auto b = num(K{"k2"}, K{"c"}, D{3});
  CHECK(array_product(a, b).empty());

  const Assoc m = music_array();
  CHECK(array_product(m.transpose(), m) == array_product(m.transpose().logical(), m.logical()));

  const auto mp = array_product(num(K{"r", "r"}, K{"k1", "k2"}, D{1, 5}), num(K{"k1", "k2"}, K{"c", "c"}, D{4, 2}),
                                max_plus());
  CHECK(std::get<double>(mp.get(Key("r"), Key("c"))) == 7);
}

TEST_CASE("elementwise min and max") {
  const Assoc a = music_array();
  CHECK(elementwise_min(a, a) == a);
  const auto p = str(K{"r", "s"}, K{"c", "c"}, S{"pop", "x"});
  const auto q = str(K{"r"}, K{"c"}, S{"classical"});
  CHECK(std::get<std::string>(elementwise_min(p, q).get(Key("r"), Key("c"))) == "classical");
  CHECK(std::get<std::string>(elementwise_max(p, q).get(Key("r"), Key("c"))) == "pop");
  CHECK(std::get<std::string>(elementwise_min(p, q).get(Key("s"), Key("c"))) == "x");
  CHECK_THROWS_AS(elementwise_min(p, num(K{"r"}, K{"c"}, D{1})), std::invalid_argument);

  const auto n = combine(num(K{"r"}, K{"c"}, D{1}), num(K{"r"}, K{"c"}, D{4}), ops::max());
  CHECK(std::get<double>(n.get(Key("r"), Key("c"))) == 4);
}

TEST_CASE("randomized operations against the map oracle") {
  std::mt19937_64 rng(101);
  using oracle::ValueKind;
  for (int trial = 0; trial < 150; ++trial) {
    for (ValueKind kind : {ValueKind::integer, ValueKind::text}) {
      const auto a = oracle::random_assoc(rng, kind);
      const auto b = oracle::random_assoc(rng, kind);
      const auto ma = oracle::to_map(a);
      const auto mb = oracle::to_map(b);
      for (const auto* r : {&a, &b}) require_valid(*r);
      REQUIRE(oracle::compare(oracle::map_add(ma, mb), add(a, b)) == "");
      REQUIRE(oracle::compare(oracle::map_multiply(ma, mb), multiply_elementwise(a, b)) == "");
      REQUIRE(oracle::compare(oracle::map_product(ma, oracle::to_map(b.transpose())), array_product(a, b.transpose())) == "");
      REQUIRE(oracle::compare(oracle::map_minmax(ma, mb, true), elementwise_min(a, b)) == "");
      REQUIRE(oracle::compare(oracle::map_minmax(ma, mb, false), elementwise_max(a, b)) == "");
      REQUIRE(Assoc::from_triples(a.triples()) == a);
    }
  }
}

TEST_CASE("array-level algebraic laws") {
  std::mt19937_64 rng(202);
  using oracle::ValueKind;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_assoc(rng, ValueKind::integer, 8, 30);
    const auto b = oracle::random_assoc(rng, ValueKind::integer, 8, 30);
    const auto c = oracle::random_assoc(rng, ValueKind::integer, 8, 30);
    REQUIRE(a + b == b + a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(array_product(array_product(a, b), c) == array_product(a, array_product(b, c)));
    REQUIRE(array_product(a, b + c) == array_product(a, b) + array_product(a, c));
    REQUIRE((a + b).logical().logical() == (a + b).logical());
  }
}
