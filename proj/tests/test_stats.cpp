#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "mindrace/stats.hpp"

using namespace mindrace;

namespace {

// independent route for the exact Wilcoxon tail: distribution of W+ by
// convolution over doubled (integer) ranks instead of the 2^n subset loop
double wilcoxon_exact_p_dp(const std::vector<double>& diffs) {
  std::vector<double> ad;
  for (double d : diffs)
    if (d != 0.0) ad.push_back(std::abs(d));
  const auto ranks = average_ranks(ad);
  std::vector<long> r2(ranks.size());
  long total2 = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    r2[i] = std::lround(2.0 * ranks[i]);
    total2 += r2[i];
  }
  double wplus2 = 0.0;
  for (std::size_t i = 0, j = 0; i < diffs.size(); ++i) {
    if (diffs[i] == 0.0) continue;
    if (diffs[i] > 0) wplus2 += 2.0 * ranks[j];
    ++j;
  }
  std::vector<double> count(total2 + 1, 0.0);
  count[0] = 1.0;
  for (long r : r2)
    for (long s = total2; s >= r; --s) count[s] += count[s - r];
  const double denom = std::pow(2.0, static_cast<double>(r2.size()));
  double ge = 0.0, le = 0.0;
  for (long s = 0; s <= total2; ++s) {
    if (s >= wplus2 - 1e-9) ge += count[s];
    if (s <= wplus2 + 1e-9) le += count[s];
  }
  return std::min(1.0, 2.0 * std::min(ge / denom, le / denom));
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("wilcoxon all-positive n=5 exact") {
  const auto r = wilcoxon_signed_rank({2, 3, 4, 5, 6}, {0, 0, 0, 0, 0});
  CHECK(r.exact);
  CHECK(r.w_plus == doctest::Approx(15.0));
  CHECK(r.p == doctest::Approx(0.0625));
}

TEST_CASE("wilcoxon mixed n=8 matches reference 0.3125") {
  const std::vector<double> a = {1.5, -0.5, 2.5, 3.0, -1.0, 0.75, 2.0, -2.2};
  const std::vector<double> b(8, 0.0);
  const auto r = wilcoxon_signed_rank(a, b);
  CHECK(r.exact);
  CHECK(r.w_plus == doctest::Approx(26.0));
  CHECK(r.p == doctest::Approx(0.3125));
}

TEST_CASE("wilcoxon exact equals the convolution oracle across random draws") {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g(0.2, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 8);  // 5..12
    std::vector<double> a(n), b(n, 0.0);
    for (auto& v : a) v = g(rng);
    const auto r = wilcoxon_signed_rank(a, b);
    REQUIRE(r.exact);
    CHECK(r.p == doctest::Approx(wilcoxon_exact_p_dp(a)).epsilon(1e-12));
  }
}

TEST_CASE("wilcoxon n=14 normal approximation with corrections") {
  // frozen against an independent implementation of the corrected formula
  const std::vector<double> a = {0.3, -0.1, 0.25, 0.4,  -0.2, 0.15, 0.35,
                                 0.1, -0.05, 0.5,  0.45, 0.2,  -0.3, 0.6};
  const std::vector<double> b(14, 0.0);
  const auto r = wilcoxon_signed_rank(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.w_plus == doctest::Approx(87.5));
  CHECK(r.p == doctest::Approx(0.030205).epsilon(1e-4));
}

TEST_CASE("wilcoxon error paths") {
  CHECK_THROWS_AS(wilcoxon_signed_rank({1, 2, 3}, {1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(wilcoxon_signed_rank({1, 2, 3, 4}, {0, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("wilcoxon symmetric alternating diffs sit at the null mean") {
  // +d,-d alternating, n=6: W+ = 10.5 = n(n+1)/4 -> p clamps to 1
  const std::vector<double> a = {1, -1, 1, -1, 1, -1};
  const std::vector<double> b(6, 0.0);
  const auto r = wilcoxon_signed_rank(a, b);
  CHECK(r.p == doctest::Approx(1.0));
}

TEST_CASE("friedman textbook table") {
  Eigen::MatrixXd t(8, 3);
  t << 7, 9, 8, 6, 5, 7, 9, 7, 6, 8, 5, 6, 6, 8, 7, 9, 8, 8, 10, 6, 9, 7, 7, 8;
  const auto r = friedman_test(t);
  CHECK(r.chi2 == doctest::Approx(0.8125));
  CHECK(r.p == doctest::Approx(0.666144).epsilon(1e-4));
}

TEST_CASE("friedman degenerate and dominant cases") {
  Eigen::MatrixXd equal = Eigen::MatrixXd::Constant(6, 3, 0.5);
  const auto r = friedman_test(equal);
  CHECK(r.chi2 == doctest::Approx(0.0));
  CHECK(r.p == doctest::Approx(1.0));

  Eigen::MatrixXd dom(10, 3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  for (int i = 0; i < 10; ++i) {
    dom(i, 0) = 0.5 + u(rng);
    dom(i, 1) = 0.6 + u(rng);
    dom(i, 2) = 0.9 + u(rng);  // strictly best in every row
  }
  const auto rd = friedman_test(dom);
  CHECK(rd.chi2 == doctest::Approx(20.0));  // perfect ranking, k=3, n=10
  CHECK(rd.p < 1e-4);
}

TEST_CASE("friedman p within 0.05 of a permutation oracle") {
  std::mt19937_64 rng(25);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd table(10, 3);
  for (int i = 0; i < 10; ++i) {
    table(i, 0) = g(rng);
    table(i, 1) = g(rng) + 0.8;
    table(i, 2) = g(rng) + 0.4;
  }
  const auto r = friedman_test(table);

  // permutation null: shuffle within rows
  std::mt19937_64 prng(1);
  int at_least = 0;
  const int reps = 4000;
  Eigen::MatrixXd perm = table;
  for (int rep = 0; rep < reps; ++rep) {
    for (int i = 0; i < 10; ++i) {
      std::vector<double> row = {perm(i, 0), perm(i, 1), perm(i, 2)};
      std::shuffle(row.begin(), row.end(), prng);
      for (int j = 0; j < 3; ++j) perm(i, j) = row[j];
    }
    if (friedman_test(perm).chi2 >= r.chi2 - 1e-12) ++at_least;
  }
  const double p_perm = static_cast<double>(at_least) / reps;
  CHECK(std::abs(r.p - p_perm) < 0.05);
}

TEST_CASE("bonferroni") {
  CHECK(bonferroni({0.01}) == std::vector<double>{0.01});
  const auto two = bonferroni({0.02, 0.5});
  CHECK(two[0] == doctest::Approx(0.04));
  CHECK(two[1] == doctest::Approx(1.0));
  const auto ten = bonferroni(std::vector<double>(10, 0.3));
  for (double p : ten) CHECK(p == doctest::Approx(1.0));
  // monotone: scaling never reorders
  const auto mono = bonferroni({0.001, 0.01, 0.2});
  CHECK(mono[0] < mono[1]);
  CHECK(mono[1] < mono[2]);
  CHECK_THROWS_AS(bonferroni({1.5}), std::invalid_argument);
}

TEST_CASE("learning curve") {
  // noiseless decreasing line
  std::vector<double> t;
  for (int i = 1; i <= 8; ++i) t.push_back(300.0 - 5.0 * i);
  const auto lc = learning_curve(t);
  CHECK(lc.slope == doctest::Approx(-5.0));
  CHECK(lc.intercept == doctest::Approx(300.0));
  CHECK(lc.p == doctest::Approx(0.0));

  const auto flat = learning_curve(std::vector<double>(6, 240.0));
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.p == doctest::Approx(1.0));

  // frozen against an independent OLS t-test computation
  const std::vector<double> noisy = {250, 245, 238, 240, 231,
                                     229, 224, 220, 216, 212};
  const auto fit = learning_curve(noisy);
  CHECK(fit.slope == doctest::Approx(-4.151515).epsilon(1e-5));
  CHECK(fit.intercept == doctest::Approx(253.333333).epsilon(1e-5));
  CHECK(fit.p == doctest::Approx(2.06e-8).epsilon(0.05));

  CHECK_THROWS_AS(learning_curve({1.0, 2.0}), std::invalid_argument);
}

}  // TEST_SUITE
