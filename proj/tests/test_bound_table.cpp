#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "sievelab/bound_table.hpp"

using namespace sievelab;

namespace {

BoundTable small_table(double kappa = 1.0) {
  return make_seed_table(kappa, GridConfig{1.0, 3.0, 0.5}, 10.0);
}

}  // namespace

TEST_CASE("seed table construction") {
  auto t = make_seed_table(1.0, GridConfig{1.0, 20.0, 0.01}, 10.0);
  CHECK(t.F.size() == 1901);
  CHECK(t.f.size() == 1901);
  CHECK(evaluate(t, Side::F, 2.0) == 10.0);
  CHECK(evaluate(t, Side::f, 2.0) == 0.0);
  CHECK(table_invariants_ok(t));

  auto t2 = make_seed_table(2.0, GridConfig{1.0, 30.0, 0.01}, 50.0);
  CHECK(evaluate(t2, Side::F, 17.123) == 50.0);

  CHECK_THROWS_AS(make_seed_table(1.0, GridConfig{1.0, 20.0, 0.01}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_seed_table(1.0, GridConfig{1.0, 20.0, 0.013}, 2.0),
                  std::invalid_argument);
}

TEST_CASE("evaluation conventions") {
  auto t = make_seed_table(1.0, GridConfig{1.0, 20.0, 0.5}, 10.0);

  SECTION("tail returns 1 on both sides") {
    CHECK(evaluate(t, Side::F, 25.0) == 1.0);
    CHECK(evaluate(t, Side::f, 20.5) == 1.0);
  }
  SECTION("below the grid: f is 0, F continues u^kappa F(u) = const") {
    CHECK(evaluate(t, Side::f, 0.5) == 0.0);
    const double a = evaluate(t, Side::F, 1.0);
    CHECK(evaluate(t, Side::F, 0.5) == Catch::Approx(2.0 * a));
  }
  SECTION("kappa enters the continuation exponent") {
    auto t2 = make_seed_table(2.0, GridConfig{1.0, 20.0, 0.5}, 10.0);
    CHECK(evaluate(t2, Side::F, 0.5) == Catch::Approx(4.0 * 10.0));
  }
  SECTION("interpolation hits node values and is continuous at s_min") {
    for (std::size_t i = 0; i < t.grid.nodes(); ++i) {
      t.F[i] = std::max(1.0, 10.0 - 0.3 * static_cast<double>(i));
      t.f[i] = std::min(1.0, 0.05 * static_cast<double>(i));
    }
    REQUIRE(table_invariants_ok(t));
    for (std::size_t i = 0; i < t.grid.nodes(); ++i) {
      CHECK(evaluate(t, Side::F, t.grid.s_at(i)) == Catch::Approx(t.F[i]));
      CHECK(evaluate(t, Side::f, t.grid.s_at(i)) == Catch::Approx(t.f[i]));
    }
    const double mid = evaluate(t, Side::F, 1.25);
    CHECK(mid == Catch::Approx(0.5 * (t.F[0] + t.F[1])));
    CHECK(evaluate(t, Side::F, 1.0 - 1e-12) == Catch::Approx(t.F[0]).margin(1e-9));
  }
  SECTION("nonpositive argument rejected") {
    CHECK_THROWS_AS(evaluate(t, Side::F, 0.0), std::domain_error);
    CHECK_THROWS_AS(evaluate(t, Side::f, -1.0), std::domain_error);
  }
}

TEST_CASE("merge only tightens") {
  auto t = small_table();
  t = merge_improve(t, Side::F, 2, 3.0);
  CHECK(t.F[2] == 3.0);
  t = merge_improve(t, Side::f, 2, 0.4);
  CHECK(t.f[2] == 0.4);
  t = merge_improve(t, Side::f, 2, 0.2);
  CHECK(t.f[2] == 0.4);
  t = merge_improve(t, Side::F, 2, 100.0);
  CHECK(t.F[2] == 3.0);
}

TEST_CASE("shape enforcement") {
  SECTION("upper bounds propagate rightward") {
    auto t = make_seed_table(1.0, GridConfig{2.0, 2.01, 0.01}, 10.0);
    t.F = {3.0, 4.0};
    enforce_shape_inplace(t);
    CHECK(t.F == std::vector<double>{3.0, 3.0});
  }
  SECTION("lower bounds propagate rightward (monotone repair, not weakening)") {
    auto t = make_seed_table(1.0, GridConfig{2.0, 2.01, 0.01}, 10.0);
    t.f = {0.2, 0.1};
    enforce_shape_inplace(t);
    CHECK(t.f == std::vector<double>{0.2, 0.2});
  }
  SECTION("F clamps at 1 from below") {
    auto t = make_seed_table(1.0, GridConfig{2.0, 2.01, 0.01}, 10.0);
    t.F = {0.9, 0.9};
    enforce_shape_inplace(t);
    CHECK(t.F == std::vector<double>{1.0, 1.0});
  }
}

TEST_CASE("invariants survive arbitrary merge sequences") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> cand_F(0.5, 12.0), cand_f(-0.5, 1.5);
  auto t = small_table();
  std::uniform_int_distribution<std::size_t> idx(0, t.grid.nodes() - 1);
  for (int step = 0; step < 400; ++step) {
    if (step % 2 == 0)
      t = merge_improve(t, Side::F, idx(rng), cand_F(rng));
    else
      t = merge_improve(t, Side::f, idx(rng), cand_f(rng));
    REQUIRE(table_invariants_ok(t));
  }
}

TEST_CASE("merging at a fixed index is idempotent and order-insensitive") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> cand(0.0, 1.2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> cands(8);
    for (auto& c : cands) c = cand(rng);

    auto a = small_table();
    for (double c : cands) a = merge_improve(a, Side::f, 3, c);
    auto b = small_table();
    auto shuffled = cands;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (double c : shuffled) b = merge_improve(b, Side::f, 3, c);
    for (double c : shuffled) b = merge_improve(b, Side::f, 3, c);  // repeat: idempotent

    CHECK(a.f == b.f);
    CHECK(a.F == b.F);
  }
}

TEST_CASE("csv round trip") {
  auto t = make_seed_table(1.5, GridConfig{1.0, 4.0, 0.25}, 7.0);
  for (std::size_t i = 0; i < t.grid.nodes(); ++i) {
    t.F[i] = 1.0 + 6.0 / (1.0 + static_cast<double>(i));
    t.f[i] = std::min(1.0, 0.07 * static_cast<double>(i));
  }
  enforce_shape_inplace(t);

  std::ostringstream os;
  write_table_csv(os, t, R"({"kappa":1.5,"s_min":1,"s_max":4,"step":0.25})");
  const std::string text = os.str();
  CHECK(text.rfind("# meta: {\"kappa\":1.5", 0) == 0);
  CHECK(text.find("s,F,f\n") != std::string::npos);

  std::istringstream is(text);
  const LoadedTable back = read_table_csv(is);
  CHECK(back.table.kappa == 1.5);
  CHECK(back.table.grid.nodes() == t.grid.nodes());
  CHECK(back.table.grid.step == Catch::Approx(t.grid.step));
  for (std::size_t i = 0; i < t.grid.nodes(); ++i) {
    CHECK(back.table.F[i] == Catch::Approx(t.F[i]).epsilon(1e-9));
    CHECK(back.table.f[i] == Catch::Approx(t.f[i]).margin(1e-9));
  }

  std::istringstream bare("s,F,f\n1,2,0\n2,1.5,0.1\n");
  CHECK_THROWS_AS(read_table_csv(bare), std::runtime_error);
  std::istringstream bare2("s,F,f\n1,2,0\n2,1.5,0.1\n");
  CHECK(read_table_csv(bare2, 2.0).table.kappa == 2.0);
}
